#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sqnl {

// ============================================================================
// NAND-equivalent gate-cost model. Block costs come from closed per-kind
// formulas; the two Booth rows are stored constants (their internal
// breakdown is not reconstructible, so no interpolation to other widths).
// Method BOMs are indicative compositions, not synthesis results: only the
// counter < multiplier ordering is contractual.
// ============================================================================

enum class BlockKind {
    Register,        // 4 gates per bit
    FullAdder,       // 9 gates, width-free cell
    Adder,           // 9 R
    TwosComplement,  // 10 R
    Mux2,            // 3 R
    LutOneSided,     // 3 (2^(R-1) - 1) (R - 1)
    LutTwoSided,     // 3 (2^R - 1) R
    BoothMultiplier, // stored: 754 @ 8 bit, 1124 @ 12 bit
};

inline const char* block_kind_name(BlockKind k) {
    switch (k) {
    case BlockKind::Register: return "register";
    case BlockKind::FullAdder: return "full_adder";
    case BlockKind::Adder: return "adder";
    case BlockKind::TwosComplement: return "twos_complement";
    case BlockKind::Mux2: return "mux2";
    case BlockKind::LutOneSided: return "lut_one_sided";
    case BlockKind::LutTwoSided: return "lut_two_sided";
    case BlockKind::BoothMultiplier: return "booth_multiplier";
    }
    throw invariant_error("block_kind_name: unhandled kind");
}

inline BlockKind block_kind_from_name(const std::string& name) {
    if (name == "register") return BlockKind::Register;
    if (name == "full_adder") return BlockKind::FullAdder;
    if (name == "adder") return BlockKind::Adder;
    if (name == "twos_complement") return BlockKind::TwosComplement;
    if (name == "mux2") return BlockKind::Mux2;
    if (name == "lut_one_sided") return BlockKind::LutOneSided;
    if (name == "lut_two_sided") return BlockKind::LutTwoSided;
    if (name == "booth_multiplier") return BlockKind::BoothMultiplier;
    throw domain_error("unknown block kind '" + name + "'");
}

struct Block {
    BlockKind kind = BlockKind::Register;
    int width = 1; // bits, where the kind is width-parametric

    Block(BlockKind k, int w) : kind(k), width(w) {
        if (w < 1 || w > 32)
            throw domain_error("Block: width " + std::to_string(w) + " outside [1, 32]");
    }
};

inline std::int64_t gate_cost(const Block& b) {
    const std::int64_t r = b.width;
    switch (b.kind) {
    case BlockKind::Register: return 4 * r;
    case BlockKind::FullAdder: return 9;
    case BlockKind::Adder: return 9 * r;
    case BlockKind::TwosComplement: return 10 * r;
    case BlockKind::Mux2: return 3 * r;
    case BlockKind::LutOneSided: return 3 * ((std::int64_t{1} << (r - 1)) - 1) * (r - 1);
    case BlockKind::LutTwoSided: return 3 * ((std::int64_t{1} << r) - 1) * r;
    case BlockKind::BoothMultiplier:
        if (r == 8) return 754;
        if (r == 12) return 1124;
        throw domain_error("gate_cost: no stored Booth constant for width " +
                           std::to_string(b.width));
    }
    throw invariant_error("gate_cost: unhandled kind");
}

struct BomItem {
    Block block;
    std::int64_t count = 1;
};

struct BillOfMaterials {
    std::string label;
    std::vector<BomItem> items;
};

inline std::int64_t estimate(const BillOfMaterials& bom) {
    std::int64_t total = 0;
    for (const auto& item : bom.items) {
        if (item.count < 1)
            throw domain_error("estimate: item count must be >= 1 in BOM '" + bom.label + "'");
        total += item.count * gate_cost(item.block);
    }
    return total;
}

// Indicative implementations of one activation unit:
//   counter     two saturating adders (adder + mux each), the counter
//               register, and an accumulator of width R + log2(N);
//               the final divide is a free shift
//   multiplier  Booth core, a double-width product adder, output mux,
//               two operand registers
//   lut         a single two-sided lookup
inline std::vector<BillOfMaterials> method_boms(int r, std::int64_t n) {
    if (r != 8 && r != 12)
        throw domain_error("method_boms: multiplier method needs width 8 or 12, got " +
                           std::to_string(r));
    if (n < 2 || (n & (n - 1)) != 0)
        throw domain_error("method_boms: N must be a power of two >= 2");
    int log2n = 0;
    while ((std::int64_t{1} << log2n) < n) ++log2n;

    BillOfMaterials counter;
    counter.label = "counter";
    counter.items = {
        {Block(BlockKind::Adder, r), 2},
        {Block(BlockKind::Mux2, r), 2},
        {Block(BlockKind::Register, r), 1},
        {Block(BlockKind::Register, r + log2n), 1},
    };

    BillOfMaterials multiplier;
    multiplier.label = "multiplier";
    multiplier.items = {
        {Block(BlockKind::BoothMultiplier, r), 1},
        {Block(BlockKind::Adder, 2 * r), 1},
        {Block(BlockKind::Mux2, r), 1},
        {Block(BlockKind::Register, r), 2},
    };

    BillOfMaterials lut;
    lut.label = "lut";
    lut.items = {
        {Block(BlockKind::LutTwoSided, r), 1},
    };

    return {counter, multiplier, lut};
}

} // namespace sqnl
