#pragma once

#include <stdexcept>
#include <string>

namespace gbent {

// Operands live in different rings Z[zeta_{2^k}].
struct ring_mismatch : std::invalid_argument {
    explicit ring_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Bad user input or violated operation precondition. CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A state that the underlying theorems rule out. Reaching one means the
// implementation is wrong, never the data. CLI exit code 3.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

} // namespace gbent
