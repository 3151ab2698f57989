#pragma once

#include <stdexcept>
#include <string>

namespace ncsum {

// Input outside the mathematical domain of an operation (p outside (0,1),
// k < 2, non-finite couplings, ...).
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// A sequence or array does not cover the indices an operation touches.
class sequence_length_error : public std::length_error {
public:
    explicit sequence_length_error(const std::string& what) : std::length_error(what) {}
};

// Index arithmetic would leave the range of std::int64_t.
class index_overflow_error : public std::overflow_error {
public:
    explicit index_overflow_error(const std::string& what) : std::overflow_error(what) {}
};

} // namespace ncsum
