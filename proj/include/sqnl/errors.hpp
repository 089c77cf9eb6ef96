#pragma once

#include <stdexcept>
#include <string>

namespace sqnl {

// Violated precondition or out-of-domain argument. CLI maps this to exit code 3.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Broken internal invariant; indicates a bug, not bad input. CLI maps this to exit code 4.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace sqnl
