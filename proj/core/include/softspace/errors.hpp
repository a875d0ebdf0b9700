#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace softspace {

// Base class for all library errors. The CLI maps subclasses onto its
// documented exit codes; library users can catch the base class.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Index, position or parameter outside its documented domain.
class RangeError : public Error {
public:
    using Error::Error;
};

// Malformed value passed to a constructor or encoder.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Space too large to represent or operation not defined for it.
class UnsupportedSpaceError : public Error {
public:
    using Error::Error;
};

// Query for an object that is not in a table's support.
class NotInSupportError : public Error {
public:
    using Error::Error;
};

// Input dimensions incompatible with the requested block size.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Metadata mismatch between artifacts that must agree (space, budget, ...).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// A block required by a BDM evaluation is absent from the base table.
class MissingBlockError : public Error {
public:
    MissingBlockError(const std::string& what, std::vector<std::string> blocks)
        : Error(what), missing_blocks(std::move(blocks)) {}

    std::vector<std::string> missing_blocks;
};

// File could not be read, written or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

// Parse failure in a structured file; line is 1-based.
class ParseError : public IoError {
public:
    ParseError(const std::string& what, std::size_t line_number)
        : IoError(what + " (line " + std::to_string(line_number) + ")"), line(line_number) {}

    std::size_t line;
};

} // namespace softspace
