#pragma once

#include <stdexcept>
#include <string>

namespace polygate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (gate set, netlist, target). `line`/`column` are
/// 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line == 0 && column == 0) return what;
    std::string out = "at ";
    if (line != 0) out += "line " + std::to_string(line);
    if (column != 0) {
      if (line != 0) out += ", ";
      out += "column " + std::to_string(column);
    }
    return out + ": " + what;
  }

  int line_;
  int column_;
};

class GateSetError : public Error {
 public:
  enum class Kind { empty_set, mixed_mode_counts, indistinguishable_modes, too_few_modes };

  GateSetError(Kind kind, const std::string& what, int mode_i = 0, int mode_j = 0)
      : Error(what), kind_(kind), mode_i_(mode_i), mode_j_(mode_j) {}

  Kind kind() const { return kind_; }
  /// The offending mode pair (1-based) for indistinguishable_modes.
  int mode_i() const { return mode_i_; }
  int mode_j() const { return mode_j_; }

 private:
  Kind kind_;
  int mode_i_;
  int mode_j_;
};

/// Mode index outside 1..m, or a mode count above the configured cap.
class ModeError : public Error {
 public:
  using Error::Error;
};

class NetlistError : public Error {
 public:
  using Error::Error;
};

/// A caller-side contract was violated (e.g. a closure pool gate that does
/// not realize the target in the earlier modes).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace polygate
