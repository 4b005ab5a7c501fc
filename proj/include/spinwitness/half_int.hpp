// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinwitness {

/// Exact half-integer quantum number (s, m, S, M, ...), stored as twice its
/// value. All selection rules and sector assignments are integer arithmetic;
/// no floating-point quantum numbers anywhere.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double to_double() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Parses a spin given as "p/2" or as a plain integer string ("1/2", "3/2",
/// "1", "2"). Anything else (decimals, other denominators) is rejected.
inline HalfInt parse_spin(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("invalid spin '" + text + "': expected an integer or p/2"); };
  if (text.empty()) fail();
  const auto slash = text.find('/');
  const std::string head = slash == std::string::npos ? text : text.substr(0, slash);
  if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos) fail();
  if (slash != std::string::npos && text.substr(slash + 1) != "2") fail();
  const long p = std::strtol(head.c_str(), nullptr, 10);
  const long twice = slash == std::string::npos ? 2 * p : p;
  if (twice < 0 || twice > 1000) fail();
  return HalfInt::from_twice(static_cast<int>(twice));
}

}  // namespace spinwitness
