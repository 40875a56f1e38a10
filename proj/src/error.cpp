#include "fanno/error.hpp"

namespace fanno {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::NonPositiveSoundSpeed: return "NonPositiveSoundSpeed";
    case ErrorKind::NonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::SonicUpstream: return "SonicUpstream";
    case ErrorKind::ZeroBeta: return "ZeroBeta";
    case ErrorKind::DuctTooLong: return "DuctTooLong";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::SupersonicityLost: return "SupersonicityLost";
    case ErrorKind::InsufficientSnapshots: return "InsufficientSnapshots";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace fanno
