#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semrec {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Semantically invalid data (score out of scale, bad attribute id, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (bad weights, unknown keys, degenerate parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unknown user/item/attribute referenced by an operation.
class LookupError : public Error {
public:
    using Error::Error;
};

// Item rated or queried but missing from the concept catalog.
class UnannotatedItemError : public LookupError {
public:
    explicit UnannotatedItemError(const std::string& item)
        : LookupError("item '" + item + "' has no concept annotations") {}
};

// No usable data overlap (empty CF neighborhood, zero matched MAE pairs).
class NoOverlapError : public Error {
public:
    using Error::Error;
};

// I/O failure on a file or directory.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace semrec
