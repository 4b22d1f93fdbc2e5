#pragma once

#include <stdexcept>
#include <string>

namespace bnfuse {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition: unknown vertex, cyclic input where a DAG is
// required, mismatched vertex sets, overlapping statement sets.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Arc reversal requested while another directed path joins the endpoints.
class IllegalReversalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An exhaustive routine was asked to run past its configured cap.
class ScaleError : public Error {
 public:
  using Error::Error;
};

// No feasible solution exists for the instance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or command line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bnfuse
