#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfs {

enum class Errc {
  NotPrime,
  BadModulus,
  TooLarge,
  ContextMismatch,
  DivisionByZero,
  RingMismatch,
  ExponentOverflow,
  SyntaxError,
  UnknownVariable,
  BadComposition,
  CacheMismatch,
  BadLevel,
  BackendUnavailable,
  ConstantTerm,
  ZeroMultiplier,
  NotHomogeneous,
  DegreeMismatch,
  BadPrime,
  BudgetExceeded,
  BadArgument,
};

const char* errc_name(Errc c);

/// All library failures are reported as Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Parse failures additionally carry the byte offset of the offending input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(Errc::SyntaxError, what + " (at position " + std::to_string(position) + ")"),
        position_(position),
        brief_(what) {}
  std::size_t position() const { return position_; }
  const std::string& brief() const { return brief_; }

 private:
  std::size_t position_;
  std::string brief_;
};

}  // namespace qfs
