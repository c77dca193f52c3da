#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Malformed specification, dimension/alphabet mismatch, inconsistent input.
struct spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spec-file syntax error; carries the 1-based source line.
struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Enumeration or search exceeded its configured budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Overlapping data disagrees (e.g. recoded neighbours whose shared slices differ).
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constructive procedure failed validation or cannot start from the input.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace shiftlab
