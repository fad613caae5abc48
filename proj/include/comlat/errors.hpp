#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comlat {

  // Base of every error thrown by the library. The CLI maps subclasses to
  // exit codes, so each failure mode gets its own type.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Input is malformed or violates an algebraic precondition.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  class NotAPoset : public InputError {
   public:
    using InputError::InputError;
  };

  class NotALattice : public InputError {
   public:
    NotALattice(std::string const& msg, std::size_t a, std::size_t b)
        : InputError(msg), first(a), second(b) {}
    std::size_t first;
    std::size_t second;
  };

  class SyntaxError : public InputError {
   public:
    SyntaxError(std::string const& msg, std::size_t pos)
        : InputError(msg + " at position " + std::to_string(pos)),
          position(pos) {}
    std::size_t position;
  };

  class MissingAssignment : public Error {
   public:
    using Error::Error;
  };

  class ArityError : public Error {
   public:
    using Error::Error;
  };

  class UnknownName : public InputError {
   public:
    using InputError::InputError;
  };

  class ParamOutOfRange : public InputError {
   public:
    using InputError::InputError;
  };

  class AlphabetOverflow : public Error {
   public:
    using Error::Error;
  };

  class BoundsTooSmall : public Error {
   public:
    using Error::Error;
  };

  class NotJoinClosed : public InputError {
   public:
    using InputError::InputError;
  };

  class TopHasNoNilPart : public Error {
   public:
    using Error::Error;
  };

  class NotNil : public Error {
   public:
    using Error::Error;
  };

  class NotInUniverse : public Error {
   public:
    using Error::Error;
  };

  // Evaluation would need a relation table larger than the configured cap.
  class ResourceLimit : public Error {
   public:
    using Error::Error;
  };

}  // namespace comlat
