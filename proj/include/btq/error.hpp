#pragma once
#include <stdexcept>
#include <string>

namespace btq {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// bad arguments, malformed literals, singular matrices
class InvalidInput : public Error {
  public:
    using Error::Error;
};

// enumeration or precision bound exceeded
class ResourceLimit : public Error {
  public:
    using Error::Error;
};

class PrecisionError : public ResourceLimit {
  public:
    using ResourceLimit::ResourceLimit;
};

// a mathematical invariant failed; always a bug
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidInput(msg);
}

inline void invariant(bool ok, const std::string& msg) {
    if (!ok) throw InvariantViolation(msg);
}

} // namespace btq
