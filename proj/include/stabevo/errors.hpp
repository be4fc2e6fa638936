#pragma once

#include <stdexcept>
#include <string>

namespace stabevo {

// Thrown when an exact computation would exceed its configured size cap.
// The message names the approximate alternative the caller should use.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when input data (files, matrices) is structurally invalid.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stabevo
