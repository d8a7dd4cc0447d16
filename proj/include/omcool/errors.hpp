#pragma once

#include <stdexcept>
#include <string>

namespace omcool {

/// Base for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { syntax, missing_field, unknown_key, wrong_type };

/// Malformed input document (JSON config, CSV table, CLI axis spec).
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    ParseErrorKind kind() const noexcept { return kind_; }

private:
    ParseErrorKind kind_;
};

enum class ConfigErrorKind {
    empty_mode_list,
    dangling_endpoint,
    kind_mismatch,
    duplicate_edge,
    self_loop,
    duplicate_id,
    invalid_value,
    topology_mismatch,
};

/// A well-formed configuration that violates a model invariant.
class ConfigError : public Error {
public:
    ConfigError(ConfigErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

/// Steady-amplitude iteration did not settle (bistable or unstable drive).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Drift matrix has an eigenvalue with real part above the stability margin.
class UnstableSystemError : public Error {
public:
    using Error::Error;
};

/// Numerical failure inside a solver (singular system, residual check, step underflow).
class SolverError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an analytical routine.
class DomainError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace omcool
