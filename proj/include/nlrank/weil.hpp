#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlrank/arith.hpp"
#include "nlrank/discriminant.hpp"
#include "nlrank/error.hpp"
#include "nlrank/matrix.hpp"

namespace nlrank {

inline constexpr std::size_t kDefaultWeilCap = 4096;

/// e(x) = exp(2 pi i x).
inline std::complex<double> e(double x) {
  const double angle = 2.0 * std::numbers::pi * x;
  return {std::cos(angle), std::sin(angle)};
}

/// Weil representation of Mp2(Z) on C[A], given by the images of
///   T = ((1,1),(0,1)),  S = ((0,-1),(1,0)),  Z = S^2 = (ST)^3.
/// rhoT e_g = e(q(g)/2) e_g and
/// rhoS e_g = e((b- - b+)/8) / sqrt|A| * sum_d e(-b(g,d)) e_d.
struct WeilRep {
  std::size_t dimension = 0;
  std::vector<Element> basis;       // lexicographic in generator exponents
  std::vector<Rational> norms;      // q(basis[k]) in [0, 2)
  std::vector<std::size_t> negation;
  ComplexMatrix rhoT;
  ComplexMatrix rhoS;
  ComplexMatrix rhoZ;
  int sig_mod_8 = 0;
  std::uint64_t level = 1;
  bool dual = false;  // complex conjugate of rho_M
};

inline WeilRep build_weil_rep(const DiscriminantForm& df, std::size_t cap = kDefaultWeilCap) {
  const EnumeratedGroup group = df.enumerate(cap);
  const std::size_t n = group.elements.size();
  const std::size_t r = df.num_generators();

  WeilRep w;
  w.dimension = n;
  w.basis = group.elements;
  w.sig_mod_8 = df.sig_mod_8();
  w.level = static_cast<std::uint64_t>(df.level());
  w.negation.assign(group.negation.begin(), group.negation.end());
  w.norms.reserve(n);
  for (std::int64_t v : group.norm_num) w.norms.emplace_back(v, group.denom);

  w.rhoT = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) w.rhoT(k, k) = half_turn_phase(group.norm_num[k], group.denom);

  // b(x, y) numerators over the common denominator, from the generator Gram.
  const std::int64_t denom = group.denom;
  std::vector<std::int64_t> pair(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      pair[i * r + j] = to_int64(mod_floor<BigInt>(num(df.generator_gram()(i, j) * Rational(denom)), BigInt(denom)));

  const std::complex<double> phase = e(-static_cast<double>(w.sig_mod_8) / 8.0) / std::sqrt(static_cast<double>(n));
  w.rhoS = ComplexMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a; c < n; ++c) {
      __int128 s = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (group.elements[a][i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j)
          s = (s + static_cast<__int128>(group.elements[a][i]) * group.elements[c][j] % denom * pair[i * r + j]) % denom;
      }
      const auto val = phase * e(-static_cast<double>(static_cast<std::int64_t>(s)) / static_cast<double>(denom));
      w.rhoS(a, c) = val;
      w.rhoS(c, a) = val;
    }
  }
  w.rhoZ = w.rhoS * w.rhoS;
  return w;
}

/// rho* = conjugate representation (the Weil representation of -M).
inline WeilRep dual(const WeilRep& w) {
  WeilRep d = w;
  d.rhoT = conj(w.rhoT);
  d.rhoS = conj(w.rhoS);
  d.rhoZ = conj(w.rhoZ);
  d.sig_mod_8 = (8 - w.sig_mod_8) % 8;
  d.dual = !w.dual;
  for (auto& q : d.norms) q = reduce_mod(-q, Rational(2));
  return d;
}

/// Same representation in the basis order basis'[k] = basis[perm[k]].
inline WeilRep permuted(const WeilRep& w, const std::vector<std::size_t>& perm) {
  const std::size_t n = w.dimension;
  std::vector<std::size_t> inverse(n);
  for (std::size_t k = 0; k < n; ++k) inverse[perm[k]] = k;
  WeilRep p = w;
  for (std::size_t k = 0; k < n; ++k) {
    p.basis[k] = w.basis[perm[k]];
    p.norms[k] = w.norms[perm[k]];
    p.negation[k] = inverse[w.negation[perm[k]]];
    for (std::size_t j = 0; j < n; ++j) {
      p.rhoT(k, j) = w.rhoT(perm[k], perm[j]);
      p.rhoS(k, j) = w.rhoS(perm[k], perm[j]);
      p.rhoZ(k, j) = w.rhoZ(perm[k], perm[j]);
    }
  }
  return p;
}

struct RelationReport {
  double maxErrS2Z = 0.0;
  double maxErrST3 = 0.0;
  double maxErrTN = 0.0;
  double maxErrUnitary = 0.0;
  double maxErrZ = 0.0;  // rhoZ against e(-sig/4) * (e_g -> e_-g)
  std::uint64_t level = 1;
  bool pass = false;
};

inline RelationReport verify_relations(const WeilRep& w, double tol) {
  const std::size_t n = w.dimension;
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix s2 = w.rhoS * w.rhoS;
  const ComplexMatrix st = w.rhoS * w.rhoT;

  RelationReport rep;
  rep.level = w.level;
  rep.maxErrS2Z = max_abs_diff(s2, w.rhoZ);
  rep.maxErrST3 = max_abs_diff(st * st * st, s2);
  rep.maxErrTN = max_abs_diff(power(w.rhoT, w.level), id);
  rep.maxErrUnitary = max_abs_diff(w.rhoS * adjoint(w.rhoS), id);

  ComplexMatrix expected_z(n, n);
  const auto z_phase = e(-static_cast<double>(w.sig_mod_8) / 4.0);
  for (std::size_t k = 0; k < n; ++k) expected_z(w.negation[k], k) = z_phase;
  rep.maxErrZ = max_abs_diff(w.rhoZ, expected_z);

  rep.pass = rep.maxErrS2Z < tol && rep.maxErrST3 < tol && rep.maxErrTN < tol && rep.maxErrUnitary < tol &&
             rep.maxErrZ < tol;
  return rep;
}

inline constexpr double kSnapTolerance = 1e-6;

/// Index j with |z - e(j/N)| minimal; SnapFailure if that distance exceeds
/// kSnapTolerance. Writes the distance to `err` when given.
inline std::uint64_t snap_root_of_unity(std::complex<double> z, std::uint64_t order, double* err = nullptr) {
  const double turns = std::arg(z) / (2.0 * std::numbers::pi);
  auto j = static_cast<std::int64_t>(std::llround(turns * static_cast<double>(order)));
  j = mod_floor<std::int64_t>(j, static_cast<std::int64_t>(order));
  const double dist = std::abs(z - e(static_cast<double>(j) / static_cast<double>(order)));
  if (err) *err = dist;
  if (dist > kSnapTolerance) {
    throw Error(ErrorCode::SnapFailure, "value is not within tolerance of an order-" + std::to_string(order) +
                                            " root of unity (distance " + std::to_string(dist) + ")");
  }
  return static_cast<std::uint64_t>(j);
}

struct WeilTraces {
  std::complex<double> trT;
  std::complex<double> trS;
  std::complex<double> trST;
  /// j -> multiplicity of the eigenvalue e(j / level) of rhoT.
  std::map<std::uint64_t, std::size_t> eigT_multiplicities;
  std::uint64_t level = 1;
  double max_snap_error = 0.0;
};

inline WeilTraces traces(const WeilRep& w) {
  WeilTraces t;
  t.level = w.level;
  t.trT = trace(w.rhoT);
  t.trS = trace(w.rhoS);
  t.trST = trace(w.rhoS * w.rhoT);
  for (std::size_t k = 0; k < w.dimension; ++k) {
    double err = 0.0;
    const auto j = snap_root_of_unity(w.rhoT(k, k), w.level, &err);
    t.max_snap_error = std::max(t.max_snap_error, err);
    ++t.eigT_multiplicities[j];
  }
  return t;
}

/// Matrix as rows of [re, im] pairs.
inline nlohmann::json to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const WeilRep& w) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& el : w.basis) basis.push_back(el);
  nlohmann::json norms = nlohmann::json::array();
  for (const auto& q : w.norms) norms.push_back(to_string(q));
  return {{"dimension", w.dimension}, {"basis", basis},     {"norms", norms},
          {"sig_mod_8", w.sig_mod_8}, {"level", w.level},    {"dual", w.dual},
          {"rhoT", to_json(w.rhoT)},  {"rhoS", to_json(w.rhoS)}, {"rhoZ", to_json(w.rhoZ)}};
}

inline nlohmann::json to_json(const RelationReport& r) {
  return {{"maxErrS2Z", r.maxErrS2Z},         {"maxErrST3", r.maxErrST3}, {"maxErrTN", r.maxErrTN},
          {"maxErrUnitary", r.maxErrUnitary}, {"maxErrZ", r.maxErrZ},     {"level", r.level},
          {"pass", r.pass}};
}

}  // namespace nlrank
