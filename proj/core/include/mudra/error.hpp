#pragma once

#include <stdexcept>
#include <string>

namespace mudra {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: mismatched dimensions, non-bijective permutations,
/// orders that are not permutations of the object set.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or exact computation was refused because its size
/// exceeds a configured guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Schema or parse failure when reading external files. `path` locates the
/// offending JSON node, e.g. "/preferences/agent1/2".
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A postcondition that the mathematics guarantees was violated. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mudra
