#pragma once

#include <stdexcept>
#include <string>

namespace ttd {

// Every failure raised by the library derives from ttd::Error so callers can
// catch the whole family in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class BufferNotFull : public Error {
 public:
  using Error::Error;
};

class DegenerateDiscount : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InsufficientLog : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyActionSet : public Error {
 public:
  using Error::Error;
};

class DegenerateAlpha : public Error {
 public:
  using Error::Error;
};

class EpisodeFinished : public Error {
 public:
  using Error::Error;
};

class NothingToPad : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ttd
