#pragma once

#include <stdexcept>
#include <string>

namespace dyncomm {

// Error taxonomy mirrors the CLI exit codes: validation 1, I/O 2, internal 3.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken precondition or invariant inside the library (caller bug).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct parse_error : io_error {
    std::size_t line;
    parse_error(std::size_t line_no, const std::string& message)
        : io_error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}
};

}  // namespace dyncomm
