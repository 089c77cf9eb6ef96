#!/usr/bin/env python3
"""Regenerate the committed LSTM fixtures under fixtures/lstm/.

Weights land at the word scale 2^(R-2), biases at the product scale
2^(2R-4), inputs at the word scale — all as plain integers, so the fixed
and float pipelines read the very same numbers. The RNG is splitmix64 and
the draw order below is part of the fixture contract; rerunning this
script must reproduce the committed files byte for byte.
"""

import json
import math
import pathlib

MASK = (1 << 64) - 1

R = 8
HIDDEN = 4
INPUT = 3
STEPS = 100
SEED = 42
W_RANGE = 0.08        # uniform weight magnitude
B_RANGE = 0.10        # uniform bias magnitude
B_SHIFT = -0.15       # extra shift on the three sigmoid gates
X_RANGE = 0.75        # uniform input magnitude
SCALE = 1 << (R - 2)
SCALE2 = SCALE * SCALE


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return (z ^ (z >> 31)) & MASK

    def uniform(self, lo, hi):
        u = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * u


def quant(value, scale):
    return int(math.floor(value * scale + 0.5))


def gate(rng, shift):
    w = [[quant(rng.uniform(-W_RANGE, W_RANGE), SCALE) for _ in range(INPUT + HIDDEN)]
         for _ in range(HIDDEN)]
    b = [quant(rng.uniform(-B_RANGE, B_RANGE) + shift, SCALE2) for _ in range(HIDDEN)]
    return {"w": w, "b": b}


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "lstm"
    out_dir.mkdir(parents=True, exist_ok=True)

    rng = SplitMix64(SEED)
    rand = {
        "r": R,
        "n": 128,
        "hidden": HIDDEN,
        "input": INPUT,
        "forget_path": "gated",
        "gates": {
            "input": gate(rng, B_SHIFT),
            "forget": gate(rng, B_SHIFT),
            "output": gate(rng, B_SHIFT),
            "candidate": gate(rng, 0.0),
        },
        "steps": [[quant(rng.uniform(-X_RANGE, X_RANGE), SCALE) for _ in range(INPUT)]
                  for _ in range(STEPS)],
    }

    zero_gate = {"w": [[0] * (INPUT + HIDDEN) for _ in range(HIDDEN)], "b": [0] * HIDDEN}
    zero = {
        "r": R,
        "n": 128,
        "hidden": HIDDEN,
        "input": INPUT,
        "forget_path": "gated",
        "gates": {k: json.loads(json.dumps(zero_gate))
                  for k in ("input", "forget", "output", "candidate")},
        "steps": [[0] * INPUT for _ in range(5)],
    }

    # Candidate rows one column short: the loader must reject this.
    mismatched = json.loads(json.dumps(zero))
    mismatched["gates"]["candidate"]["w"] = [[0] * (INPUT + HIDDEN - 1) for _ in range(HIDDEN)]
    mismatched["steps"] = [[0] * INPUT]

    for name, doc in (("rand", rand), ("zero", zero), ("mismatched", mismatched)):
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
