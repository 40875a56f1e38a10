#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "doctest.h"
#include "fanno/error.hpp"

namespace fanno::test {

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// Runs fn and returns the kind of the fanno::Error it throws.
template <class F>
std::optional<ErrorKind> error_kind(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace fanno::test
