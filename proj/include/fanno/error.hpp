#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fanno {

enum class ErrorKind {
  NonPositiveDensity,
  NonPositiveSoundSpeed,
  NonPositiveSpeed,
  InvalidParameter,
  SonicUpstream,
  ZeroBeta,
  DuctTooLong,
  EpsilonTooLarge,
  SupersonicityLost,
  InsufficientSnapshots,
  GridMismatch,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Point in the (t, x) plane where a pointwise check first failed.
struct FailureSite {
  double t = 0.0;
  double x = 0.0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<FailureSite> site = std::nullopt)
      : std::runtime_error(what), kind_(kind), site_(site) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<FailureSite>& site() const noexcept { return site_; }

 private:
  ErrorKind kind_;
  std::optional<FailureSite> site_;
};

}  // namespace fanno
