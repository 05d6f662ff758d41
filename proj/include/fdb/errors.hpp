#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdb {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order/width above the hard cap.
struct size_error : error {
    using error::error;
};

// Caller broke a precondition (shape or dimension mismatch, mixed ground sets).
struct contract_error : error {
    using error::error;
};

// Primitive evaluated outside its domain (ln of non-positive, division by zero, ...).
struct domain_error : error {
    using error::error;
};

struct parse_error : error {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

}  // namespace fdb
