#pragma once

#include <stdexcept>
#include <string>

namespace hsd {

// Error taxonomy mirrors the CLI exit codes:
//   validation/schema/parse -> 1, I/O -> 2, calibration -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values at an API boundary (non-finite input, out-of-range bin, ...).
struct InvalidInputError : Error {
    using Error::Error;
};

// Invalid configuration: bad key, value out of range, degenerate bounds.
struct ConfigError : Error {
    using Error::Error;
};

// Record shape does not match the collection (e.g. embedding dim mismatch).
struct SchemaError : Error {
    using Error::Error;
};

// Unreadable / unwritable path.
struct IoError : Error {
    using Error::Error;
};

// Malformed persisted data; carries the 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, long line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    explicit ParseError(const std::string& msg) : Error(msg), line_number(0) {}
    long line_number;
};

// Persisted file has an unsupported format version.
struct VersionError : Error {
    using Error::Error;
};

// Verify-skip calibration found no usable pair; skipping must stay disabled.
struct CalibrationError : Error {
    using Error::Error;
};

} // namespace hsd
