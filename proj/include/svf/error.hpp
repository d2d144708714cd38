#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svf {

/// Contract violations raised by the library. Every error carries a code so
/// callers (the CLI in particular) can map failures without parsing messages.
enum class Errc {
  NonFinite,
  NotHermitian,
  NotPositive,
  BadScalarFunction,
  ShapeMismatch,
  NotProjection,
  RankOutOfRange,
  VariantMismatch,
  NegativeClass,
  NotNested,
  RankGapViolated,
  ChainNotIncreasing,
  TopMismatch,
  RankOverflow,
  EmptyPartition,
  NotInDomain,
  DomainMismatch,
  JumpNotInDomain,
  BadInterval,
  NonTermination,
  DoesNotVanish,
  BadNormalization,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPositive: return "NotPositive";
    case Errc::BadScalarFunction: return "BadScalarFunction";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotProjection: return "NotProjection";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::VariantMismatch: return "VariantMismatch";
    case Errc::NegativeClass: return "NegativeClass";
    case Errc::NotNested: return "NotNested";
    case Errc::RankGapViolated: return "RankGapViolated";
    case Errc::ChainNotIncreasing: return "ChainNotIncreasing";
    case Errc::TopMismatch: return "TopMismatch";
    case Errc::RankOverflow: return "RankOverflow";
    case Errc::EmptyPartition: return "EmptyPartition";
    case Errc::NotInDomain: return "NotInDomain";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::JumpNotInDomain: return "JumpNotInDomain";
    case Errc::BadInterval: return "BadInterval";
    case Errc::NonTermination: return "NonTermination";
    case Errc::DoesNotVanish: return "DoesNotVanish";
    case Errc::BadNormalization: return "BadNormalization";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace svf
