#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlrank/error.hpp"
#include "nlrank/matrix.hpp"
#include "nlrank/numeric.hpp"

namespace nlrank {

/// Noether-Lefschetz label of D_{h,d} in genus g: the extra class beta has
/// beta^2 = 2h - 2 and beta . L = d.
struct NLLabel {
  std::int64_t g = 2;
  std::int64_t h = 0;
  std::int64_t d = 0;
  BigInt delta;        // d^2 - 4(g-1)(h-1)
  Rational n;          // -delta / (4g - 4), sign kept as defined
  std::int64_t gamma = 0;  // d mod (2g - 2)
  bool degenerate = false;

  Rational abs_n() const { return n < 0 ? Rational(-n) : n; }
  friend bool operator==(const NLLabel&, const NLLabel&) = default;
};

inline BigInt nl_discriminant(std::int64_t g, std::int64_t h, std::int64_t d) {
  return BigInt(d) * d - BigInt(4) * (g - 1) * (h - 1);
}

inline NLLabel nl_label(std::int64_t g, std::int64_t h, std::int64_t d) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  NLLabel label;
  label.g = g;
  label.h = h;
  label.d = d;
  label.delta = nl_discriminant(g, h, d);
  if (label.delta < 0) {
    throw Error(ErrorCode::NegativeDiscriminant, "Delta(" + std::to_string(h) + "," + std::to_string(d) +
                                                     ") = " + label.delta.str() + " < 0");
  }
  label.n = Rational(-label.delta, BigInt(4 * g - 4));
  label.gamma = mod_floor<std::int64_t>(d, 2 * g - 2);
  label.degenerate = label.delta == 0;
  return label;
}

/// (1/2)<x, x> for x the projection of beta orthogonal to c1(L), computed in
/// the rank-two lattice spanned by v = c1(L) and beta.
inline Rational projection_oracle(std::int64_t g, std::int64_t h, std::int64_t d) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  const RationalMatrix gram{{Rational(2 * g - 2), Rational(d)}, {Rational(d), Rational(2 * h - 2)}};
  auto inner = [&gram](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s += x[i] * gram(i, j) * y[j];
    return s;
  };
  const std::vector<Rational> v{1, 0};
  const std::vector<Rational> beta{0, 1};
  const Rational c = inner(beta, v) / inner(v, v);
  const std::vector<Rational> x{beta[0] - c * v[0], beta[1] - c * v[1]};
  return inner(x, x) / 2;
}

/// All labels with 0 <= d <= d_max, 0 <= h <= h_max and Delta >= 0, sorted by
/// (Delta descending, d, h).
inline std::vector<NLLabel> enumerate_nl(std::int64_t g, std::int64_t d_max, std::int64_t h_max) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  if (d_max < 0 || h_max < 0) throw Error(ErrorCode::BadRange, "grid bounds must be nonnegative");
  std::vector<NLLabel> out;
  for (std::int64_t d = 0; d <= d_max; ++d)
    for (std::int64_t h = 0; h <= h_max; ++h)
      if (nl_discriminant(g, h, d) >= 0) out.push_back(nl_label(g, h, d));
  std::sort(out.begin(), out.end(), [](const NLLabel& a, const NLLabel& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    if (a.d != b.d) return a.d < b.d;
    return a.h < b.h;
  });
  return out;
}

inline constexpr const char* kNLCsvHeader = "g,h,d,delta,n_num,n_den,gamma,degenerate";

inline void write_csv_row(std::ostream& os, const NLLabel& l) {
  os << l.g << ',' << l.h << ',' << l.d << ',' << l.delta << ',' << num(l.n) << ',' << den(l.n) << ',' << l.gamma
     << ',' << (l.degenerate ? 1 : 0) << '\n';
}

inline nlohmann::json to_json(const NLLabel& l) {
  return {{"g", l.g},
          {"h", l.h},
          {"d", l.d},
          {"delta", l.delta.str()},
          {"n_num", num(l.n).str()},
          {"n_den", den(l.n).str()},
          {"gamma", l.gamma},
          {"degenerate", l.degenerate}};
}

}  // namespace nlrank
