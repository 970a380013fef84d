#pragma once

#include <stdexcept>
#include <string>

namespace ellva {

enum class ErrorKind {
  NomeOutOfDisk,
  TruncationInsufficient,
  TauNotInUpperHalfPlane,
  ZeroArgument,
  PoleProximity,
  WrongRank,
  NotOnSurface,
  SeriesDiverges,
  InconsistentSurface,
  BothZero,
  InvalidM,
  ExtrapolationUnstable,
  InvalidConfig,
};

const char* to_string(ErrorKind kind);

// Every numerical failure surfaces as an Error carrying its kind, so drivers
// can turn it into a failed record instead of crashing.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NomeOutOfDisk: return "NomeOutOfDisk";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::TauNotInUpperHalfPlane: return "TauNotInUpperHalfPlane";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::NotOnSurface: return "NotOnSurface";
    case ErrorKind::SeriesDiverges: return "SeriesDiverges";
    case ErrorKind::InconsistentSurface: return "InconsistentSurface";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace ellva
