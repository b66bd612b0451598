#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sbi {

// Non-negative integer or half-integer angular momentum, stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int j) { return HalfInt(2 * j); }

  // Accepts "1", "3/2", "1.5", "0.5". Throws InvalidArgument on anything else.
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  std::string to_string() const;

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// Wigner 6-j symbol { j1 j2 j3 ; j4 j5 j6 } from the Racah single-sum formula.
// The squared triangle coefficients and the alternating sum are accumulated as
// exact rationals; the only floating-point step is the final square root.
// Returns 0 when any triad violates the triangle rule or has a non-integer perimeter.
double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

} // namespace sbi
