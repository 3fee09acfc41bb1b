#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perfchar {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for malformed polynomial text; `position` is a byte offset into the
// input string.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct NonPPowerDenominator : ParseError {
  NonPPowerDenominator(const std::string& msg, std::size_t position)
      : ParseError(msg, position) {}
};

struct UnknownVariable : ParseError {
  UnknownVariable(const std::string& name, std::size_t position)
      : ParseError("unknown variable '" + name + "'", position), name(name) {}
  std::string name;
};

// Operands live over different characteristics or variable lists.
struct MismatchError : Error {
  using Error::Error;
};

// rescale(f, n) was asked for with n below the level of f.
struct LevelTooLow : Error {
  using Error::Error;
};

// pth_root of something that is not a p-th power (integer contexts only;
// polynomial p-th roots over F_p always exist).
struct NotPPower : Error {
  using Error::Error;
};

struct ResourceExceeded : Error {
  using Error::Error;
};

struct InsufficientRows : Error {
  using Error::Error;
};

struct InfiniteColength : Error {
  using Error::Error;
};

// An exact linear solve hit a singular matrix.
struct SingularSystem : Error {
  using Error::Error;
};

// An operation restricted to one-variable elements met a second variable.
struct MultiVariable : Error {
  using Error::Error;
};

// A coordinate sequence violated its compatibility relation at `index`.
struct RelationViolated : Error {
  RelationViolated(const std::string& msg, std::size_t index)
      : Error(msg + " (index " + std::to_string(index) + ")"), index(index) {}
  std::size_t index;
};

struct IoError : Error {
  using Error::Error;
};

// A structured input file was readable but not the expected shape.
struct FileFormatError : Error {
  using Error::Error;
};

}  // namespace perfchar
