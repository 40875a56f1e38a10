#pragma once

#include <string>

namespace fanno {

/// Shortest decimal string that parses back to exactly `value`.
/// Non-finite values are written as nan / inf / -inf.
std::string format_double(double value);

}  // namespace fanno
