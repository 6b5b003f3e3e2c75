#include "tpsp/common.hpp"

namespace tpsp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotEven: return "NotEven";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::NonIntegralCharacterMatrix: return "NonIntegralCharacterMatrix";
    case Errc::TopModeOutsideIndexSet: return "TopModeOutsideIndexSet";
    case Errc::TwistedGramSingular: return "TwistedGramSingular";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::ConductorMismatch: return "ConductorMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoSolution: return "NoSolution";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::InvalidInput, "empty rational literal");
  Rational value;
  if (value.set_str(s, 10) != 0 || value.get_den() == 0) {
    throw Error(Errc::InvalidInput, "malformed rational literal '" + s + "'");
  }
  value.canonicalize();
  return value;
}

}  // namespace tpsp
