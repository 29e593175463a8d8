#ifndef KBP_ERRORS_HPP
#define KBP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kbp {

// Bad user-supplied parameter (n, k, R, radius, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// An artifact (placement, coloring, schedule) fails its own invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A node program broke the message-passing contract.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Per-edge per-round payload limit exceeded.
class BandwidthError : public std::runtime_error {
 public:
  explicit BandwidthError(const std::string& what) : std::runtime_error(what) {}
};

// Round budget exhausted before all live nodes halted.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for an exact procedure.
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kbp

#endif
