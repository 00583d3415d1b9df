#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cutenc {

using Value = std::int64_t;

// Malformed user input: files, labels, CLI arguments.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition or an internal invariant broke.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// A computation would exceed a configured budget or feasible instance size.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric backend failed; the message says how to recover.
struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cutenc
