#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alphafuse {

// Base of every library error. `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }
    const char* kind() const noexcept override { return "parse"; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "validation"; }
};

class EmptyInputError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "empty-input"; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

class LookupError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "lookup"; }
};

// Argument outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "range"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

// Shape or topology mismatch between inputs.
class StructuralError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "structural"; }
};

// NaN/Inf produced by a computation, or an unrecoverable optimizer state.
class NumericalFault : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
};

class TrainingError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "training"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

}  // namespace alphafuse
