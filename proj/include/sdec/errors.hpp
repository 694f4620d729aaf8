#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdec {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Affinely dependent points where a non-degenerate simplex is required.
class DegeneracyError : public Error {
  public:
    using Error::Error;
};

// Complex-level violations: non-manifold faces, mixed dimensions, bad indices.
class StructuralError : public Error {
  public:
    using Error::Error;
};

// A query point outside the affine space a predicate is evaluated in.
class DomainError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

// Ill-posed PDE data, e.g. a pure-flux Poisson problem violating solvability.
class ProblemDefinitionError : public Error {
  public:
    using Error::Error;
};

// A fixture generator could not realize its defining property.
class GenerationError : public Error {
  public:
    using Error::Error;
};

} // namespace sdec
