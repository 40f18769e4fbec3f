#pragma once

#include <stdexcept>
#include <string>

namespace moodcast {

// Every failure surfaced by the library derives from Error so callers can
// catch one type at the boundary and switch on kind() when they need to.
enum class ErrorKind {
  Validation,     // input violates a documented precondition or invariant
  NotFound,       // unknown id, label or file
  Parse,          // upstream or file text could not be parsed
  Range,          // a parsed number is outside its allowed range
  Conflict,       // concurrent or out-of-order request
  Precondition,   // stage run before its inputs exist
  Timeout,        // provider did not answer in time
  RateLimited,    // provider asked us to back off
  Transport,      // connection or HTTP-level provider failure
  Upstream,       // provider answered with a malformed payload
  NoFixture,      // mock provider has no canned response
  Decode,         // image bytes are not a decodable image
  Io,             // filesystem failure
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m) : Error(ErrorKind::Validation, m) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& m) : Error(ErrorKind::NotFound, m) {}
};

/// Carries the offending text so an operator can see what the model returned.
class ParseError : public Error {
 public:
  ParseError(const std::string& m, std::string raw)
      : Error(ErrorKind::Parse, m), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& m) : Error(ErrorKind::Range, m) {}
};

class ConflictError : public Error {
 public:
  explicit ConflictError(const std::string& m) : Error(ErrorKind::Conflict, m) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& m) : Error(ErrorKind::Precondition, m) {}
};

/// Provider failures. attempts() is how many calls were made before giving up.
class ProviderError : public Error {
 public:
  ProviderError(ErrorKind kind, const std::string& m, int attempts = 1, bool retryable = true)
      : Error(kind, m), attempts_(attempts), retryable_(retryable) {}

  int attempts() const noexcept { return attempts_; }
  void set_attempts(int n) noexcept { attempts_ = n; }
  bool retryable() const noexcept { return retryable_; }

 private:
  int attempts_;
  bool retryable_;
};

class TimeoutError : public ProviderError {
 public:
  explicit TimeoutError(const std::string& m, int attempts = 1)
      : ProviderError(ErrorKind::Timeout, m, attempts) {}
};

class RateLimitError : public ProviderError {
 public:
  explicit RateLimitError(const std::string& m, int attempts = 1)
      : ProviderError(ErrorKind::RateLimited, m, attempts) {}
};

class TransportError : public ProviderError {
 public:
  explicit TransportError(const std::string& m, int attempts = 1, bool retryable = true)
      : ProviderError(ErrorKind::Transport, m, attempts, retryable) {}
};

class UpstreamFormatError : public ProviderError {
 public:
  explicit UpstreamFormatError(const std::string& m, int attempts = 1)
      : ProviderError(ErrorKind::Upstream, m, attempts) {}
};

class NoFixtureError : public ProviderError {
 public:
  explicit NoFixtureError(const std::string& m) : ProviderError(ErrorKind::NoFixture, m, 1, false) {}
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& m) : Error(ErrorKind::Decode, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::Io, m) {}
};

}  // namespace moodcast
