#pragma once

#include <stdexcept>
#include <string>

namespace frobforge {

// Message prefixes are stable; the CLI maps subclasses to exit codes.

/// Malformed input: JSON, schema, flags, out-of-range indices.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& what) : ValidationError("parse error: " + what) {}
};

class SchemaError : public ValidationError {
public:
    explicit SchemaError(const std::string& what) : ValidationError("schema error: " + what) {}
};

/// Exact-algebra failure: division by zero polynomial, insufficient expansion order, non-monic input.
class AlgebraError : public std::runtime_error {
public:
    explicit AlgebraError(const std::string& what) : std::runtime_error("algebra error: " + what) {}
};

/// A closed form / Hessian that fails to integrate; always an upstream inconsistency (WDVV, symmetry).
class IntegrabilityError : public AlgebraError {
public:
    explicit IntegrabilityError(const std::string& what) : AlgebraError("integrability: " + what) {}
};

/// Numeric failure: coincident canonical coordinates, step underflow, root finding, tolerance.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error("numeric error: " + what) {}
};

/// Point outside the semisimple locus (u_i collide within the margin).
class CausticError : public NumericError {
public:
    explicit CausticError(const std::string& what) : NumericError("caustic: " + what) {}
};

}  // namespace frobforge
