#pragma once

#include <stdexcept>
#include <string>

namespace hypersub {

// Malformed or out-of-contract input data such as files or parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A size guard, memory budget or emission cap was exceeded.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hypersub
