#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpsp {

using BigInt = mpz_class;
using Rational = mpq_class;

enum class Errc {
  InvalidInput,
  UnknownPreset,
  NotSymmetric,
  NotEven,
  NotPositiveDefinite,
  NegativeEntry,
  NotIsometry,
  NonIntegralCharacterMatrix,
  TopModeOutsideIndexSet,
  TwistedGramSingular,
  NotADivisor,
  ConductorMismatch,
  DivisionByZero,
  DimensionMismatch,
  NoSolution,
  PreconditionViolated,
  BudgetExceeded,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message names the violated condition and, where meaningful, the indices.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Outcome of a verification. A failed check is data, not an exception.
struct CheckReport {
  bool passed = true;
  std::string failure;  // first mismatch, empty when passed
  long checked = 0;     // cells or coefficients compared

  static CheckReport fail(std::string why) {
    CheckReport r;
    r.passed = false;
    r.failure = std::move(why);
    return r;
  }
};

/// Selects between the OpenMP kernels and their serial reference versions.
enum class Exec { serial, parallel };

/// num/den in lowest terms. The two-argument mpq_class constructor does not
/// canonicalize, and GMP arithmetic assumes canonical operands.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Parses "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

}  // namespace tpsp
