#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace horoflow {

/// Base class of every domain error raised by the library. The CLI maps
/// these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DegeneratePoints : public Error {
 public:
  using Error::Error;
};

class NoIntersection : public Error {
 public:
  using Error::Error;
};

class EllipticElement : public Error {
 public:
  using Error::Error;
};

class InvalidGenerator : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NegativeTime : public Error {
 public:
  using Error::Error;
};

class EmptyBall : public Error {
 public:
  using Error::Error;
};

class BallTooLarge : public Error {
 public:
  BallTooLarge(std::size_t cap)
      : Error("word ball exceeds the enumeration cap of " + std::to_string(cap) + " elements"),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Raised when fewer than the required number of band-bounded escaping
/// elements exist in the enumerated ball. Absence at finite depth is not a
/// proof of absence in the group.
class NoSequenceFound : public Error {
 public:
  NoSequenceFound(std::size_t achieved, std::size_t required)
      : Error("only " + std::to_string(achieved) + " of " + std::to_string(required) +
              " sequence elements found in the enumerated ball"),
        achieved_(achieved),
        required_(required) {}
  std::size_t achieved() const noexcept { return achieved_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t achieved_;
  std::size_t required_;
};

namespace detail {
[[noreturn]] void invariant_breach(const char* what, const char* file, int line);
}  // namespace detail

}  // namespace horoflow

#define HOROFLOW_INVARIANT(cond)                                         \
  do {                                                                   \
    if (!(cond)) ::horoflow::detail::invariant_breach(#cond, __FILE__, __LINE__); \
  } while (0)
