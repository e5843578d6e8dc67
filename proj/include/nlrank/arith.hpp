#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>

#include "nlrank/discriminant.hpp"
#include "nlrank/error.hpp"
#include "nlrank/numeric.hpp"

namespace nlrank {

/// Jacobi symbol (a/b) for odd b >= 1, by quadratic reciprocity. The
/// numerator is reduced mod b first, so any sign is accepted; (a/1) = 1.
template <typename Int>
int jacobi(Int a, Int b) {
  if (b <= 0) throw Error(ErrorCode::NonpositiveDenominator, "Jacobi denominator must be positive");
  if (b % 2 == 0) throw Error(ErrorCode::EvenDenominator, "Jacobi denominator must be odd");
  a = mod_floor<Int>(a, b);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const Int r = b % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

/// sum_{k=0}^{g-1} frac(k^2 / (4g-4)), exact.
inline Rational frac_square_sum(std::int64_t g) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  const std::int64_t m = 4 * g - 4;
  BigInt total = 0;
  for (std::int64_t k = 0; k < g; ++k) total += (k * k) % m;
  return Rational(total, m);
}

/// #{0 <= k <= g-1 : (4g-4) | k^2}.
inline std::int64_t square_count(std::int64_t g) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  const std::int64_t m = 4 * g - 4;
  std::int64_t count = 0;
  for (std::int64_t k = 0; k < g; ++k)
    if ((k * k) % m == 0) ++count;
  return count;
}

inline constexpr std::size_t kGaussSumCap = 1'000'000;

/// exp(pi i * num / denom), with num reduced mod 2 denom before scaling.
inline std::complex<double> half_turn_phase(std::int64_t num, std::int64_t denom) {
  const std::int64_t r = mod_floor<std::int64_t>(num, 2 * denom);
  const double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(denom);
  return {std::cos(angle), std::sin(angle)};
}

/// sum over gamma in A of exp(pi i <gamma, gamma>), by full enumeration.
inline std::complex<double> gauss_sum(const DiscriminantForm& df, std::size_t cap = kGaussSumCap) {
  const EnumeratedGroup group = df.enumerate(cap);
  std::complex<double> s = 0.0;
  for (std::int64_t n : group.norm_num) s += half_turn_phase(n, group.denom);
  return s;
}

/// sqrt|A| * exp(2 pi i sig / 8), the closed form the Gauss sum must match.
inline std::complex<double> milgram_value(const DiscriminantForm& df) {
  const double angle = 2.0 * std::numbers::pi * df.sig_mod_8() / 8.0;
  return std::sqrt(static_cast<double>(df.cardinality())) * std::complex<double>(std::cos(angle), std::sin(angle));
}

}  // namespace nlrank
