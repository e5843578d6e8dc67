#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlrank/discriminant.hpp"
#include "nlrank/error.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/numeric.hpp"
#include "nlrank/weil.hpp"

namespace nlrank {

/// Correction terms of the Riemann-Roch dimension formula, all taken on the
/// subspace of C[A] where Z acts by the weight-k automorphy factor.
struct BoundaryTerms {
  int subspace_sign = 1;          // eps in e_g + eps * e_-g
  std::size_t subspace_dim = 0;
  std::complex<double> trS{};     // trace of rho(S) on the subspace
  std::complex<double> trST{};    // trace of rho(ST) on the subspace
  std::size_t mult_S_minus = 0;   // eigenvalue -1 of e(k/4) rho(S)
  std::array<std::size_t, 3> mult_ST{};  // eigenvalue e(j/3) of (e(k/6) rho(ST))^-1
  Rational alpha_S;
  Rational alpha_ST;
  Rational alpha_T;
  std::size_t isotropic_count = 0;  // eigenvalue 1 of rho(T): Eisenstein series
  Rational dim_modular;             // dim M_k
  double max_snap_error = 0.0;
};

struct CuspDimReport {
  Rational k;
  std::size_t group_order = 0;
  bool dual = true;
  bool parity_mismatch = false;
  BoundaryTerms boundary;
  std::int64_t dim = 0;
};

namespace detail {

inline std::int64_t snap_integer(double x, const char* what, double& max_err) {
  const double r = std::round(x);
  const double err = std::abs(x - r);
  max_err = std::max(max_err, err);
  if (err > kSnapTolerance) {
    throw Error(ErrorCode::SnapFailure, std::string(what) + " is not near an integer: " + std::to_string(x));
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// dim S_{k, rho} for the representation carried by `w`. Needs 2k integral
/// and k > 2. When Z cannot act by the automorphy factor (2k + sig odd) the
/// report is flagged and dim = 0.
inline CuspDimReport dim_cusp(const WeilRep& w, const Rational& k) {
  if (!is_integer(2 * k)) throw Error(ErrorCode::BadWeight, "weight must be a half-integer, got " + to_string(k));
  if (k <= 2) throw Error(ErrorCode::WeightTooSmall, "dimension formula needs k > 2, got " + to_string(k, true));

  CuspDimReport rep;
  rep.k = k;
  rep.group_order = w.dimension;
  rep.dual = w.dual;
  BoundaryTerms& bt = rep.boundary;
  const std::size_t n = w.dimension;
  const double kd = static_cast<double>(k);

  // rhoZ = c * P with P: e_g -> e_-g; c is read off a fixed point of P
  // (the zero element is one, wherever the basis puts it).
  std::vector<std::size_t> neg(n);
  std::size_t fixed = n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = 0;
    for (std::size_t row = 1; row < n; ++row)
      if (std::abs(w.rhoZ(row, col)) > std::abs(w.rhoZ(best, col))) best = row;
    neg[col] = best;
    if (best == col && fixed == n) fixed = col;
  }
  if (fixed == n) throw Error(ErrorCode::SnapFailure, "rhoZ has no fixed basis vector");
  double snap_err = 0.0;
  const std::uint64_t c_index = snap_root_of_unity(w.rhoZ(fixed, fixed), 4, &snap_err);
  bt.max_snap_error = snap_err;

  // Need Z f = e(-k/2) f, so P = eps with eps = e(-k/2) / c.
  const std::int64_t twice_k = static_cast<std::int64_t>(num(2 * k));
  const std::int64_t eps_quarter = mod_floor<std::int64_t>(-twice_k - static_cast<std::int64_t>(c_index), 4);
  if (eps_quarter % 2 != 0) {
    rep.parity_mismatch = true;
    rep.dim = 0;
    return rep;
  }
  const int eps = eps_quarter == 0 ? 1 : -1;
  bt.subspace_sign = eps;

  std::vector<std::size_t> reps;  // one basis element per {g, -g} orbit in the subspace
  for (std::size_t i = 0; i < n; ++i) {
    if (neg[i] < i) continue;
    if (eps == -1 && neg[i] == i) continue;
    reps.push_back(i);
  }
  bt.subspace_dim = reps.size();
  const auto d = static_cast<std::int64_t>(reps.size());

  // tr(X Pi) = (tr X + eps * sum_i X(i, -i)) / 2 for Pi = (1 + eps P)/2.
  std::complex<double> trS = 0.0, trSP = 0.0, trST = 0.0, trSTP = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trS += w.rhoS(i, i);
    trSP += w.rhoS(i, neg[i]);
    trST += w.rhoS(i, i) * w.rhoT(i, i);
    trSTP += w.rhoS(i, neg[i]) * w.rhoT(neg[i], neg[i]);
  }
  bt.trS = (trS + static_cast<double>(eps) * trSP) / 2.0;
  bt.trST = (trST + static_cast<double>(eps) * trSTP) / 2.0;

  // e(k/4) rho(S) squares to the identity on the subspace: eigenvalues +-1.
  const std::complex<double> trX = e(kd / 4.0) * bt.trS;
  detail::snap_integer(trX.imag(), "imaginary part of tr S", bt.max_snap_error);
  const std::int64_t minus = detail::snap_integer((static_cast<double>(d) - trX.real()) / 2.0, "mult S", bt.max_snap_error);
  bt.mult_S_minus = static_cast<std::size_t>(minus);
  bt.alpha_S = Rational(minus, 2);

  // Y = (e(k/6) rho(ST))^-1 cubes to the identity; tr Y^2 = conj(tr Y).
  const std::complex<double> trY = std::conj(e(kd / 6.0) * bt.trST);
  for (int j = 0; j < 3; ++j) {
    const double m = (static_cast<double>(d) + 2.0 * (e(-j / 3.0) * trY).real()) / 3.0;
    bt.mult_ST[j] = static_cast<std::size_t>(detail::snap_integer(m, "mult ST", bt.max_snap_error));
  }
  if (static_cast<std::int64_t>(bt.mult_ST[0] + bt.mult_ST[1] + bt.mult_ST[2]) != d) {
    throw Error(ErrorCode::SnapFailure, "ST eigenvalue multiplicities do not add up to the subspace dimension");
  }
  bt.alpha_ST = Rational(static_cast<std::int64_t>(bt.mult_ST[1] + 2 * bt.mult_ST[2]), 3);

  // rho(T) is diagonal and commutes with P; read its eigenvalues off the diagonal.
  bt.alpha_T = 0;
  for (std::size_t i : reps) {
    double err = 0.0;
    const std::uint64_t j = snap_root_of_unity(w.rhoT(i, i), w.level, &err);
    bt.max_snap_error = std::max(bt.max_snap_error, err);
    if (j == 0) ++bt.isotropic_count;
    bt.alpha_T += Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(w.level));
  }

  bt.dim_modular = Rational(d) + Rational(d) * k / 12 - bt.alpha_S - bt.alpha_ST - bt.alpha_T;
  const Rational dim_s = bt.dim_modular - Rational(static_cast<std::int64_t>(bt.isotropic_count));
  if (!is_integer(dim_s) || dim_s < 0) {
    throw Error(ErrorCode::NonIntegerResult, "cusp form dimension evaluated to " + to_string(dim_s));
  }
  rep.dim = static_cast<std::int64_t>(num(dim_s));
  return rep;
}

struct CuspDimOptions {
  /// Use rho* (the type paired with signature (2, l) lattices). Set false
  /// for rho_M itself.
  bool dual = true;
  std::size_t max_group = kDefaultWeilCap;
};

inline CuspDimReport dim_cusp(const Lattice& lat, const Rational& k, const CuspDimOptions& opts = {}) {
  if (!is_integer(2 * k)) throw Error(ErrorCode::BadWeight, "weight must be a half-integer, got " + to_string(k));
  if (k <= 2) throw Error(ErrorCode::WeightTooSmall, "dimension formula needs k > 2, got " + to_string(k, true));
  WeilRep w = build_weil_rep(discriminant_form(lat), opts.max_group);
  return dim_cusp(opts.dual ? dual(w) : w, k);
}

enum class SplitHypothesis { NotAsserted, Asserted };

/// 1 + dim S_{m/2}, m = rank, for a lattice of signature (p, 2) or (2, p)
/// containing U + U(N). A (p, 2) lattice M is handled as -M with rho*.
inline std::int64_t picard_rank_via_cusp(const Lattice& lat, SplitHypothesis hypothesis,
                                         std::size_t max_group = kDefaultWeilCap) {
  const Signature sig = signature(lat);
  if (sig.positive != 2 && sig.negative != 2) {
    throw Error(ErrorCode::BadSignature, "need signature (p,2) or (2,q), got (" + std::to_string(sig.positive) + "," +
                                             std::to_string(sig.negative) + ")");
  }
  if (hypothesis != SplitHypothesis::Asserted) {
    throw Error(ErrorCode::HypothesisNotAsserted, "caller must assert the U + U(N) splitting");
  }
  const Lattice oriented = sig.positive == 2 ? lat : negated(lat);
  const Rational k(static_cast<std::int64_t>(lat.rank()), 2);
  const CuspDimReport rep = dim_cusp(oriented, k, {.dual = true, .max_group = max_group});
  if (rep.parity_mismatch) throw Error(ErrorCode::ParityMismatch, "weight m/2 incompatible with the signature");
  return 1 + rep.dim;
}

/// Lambda_g contains two hyperbolic planes, so the splitting holds.
inline std::int64_t picard_rank_via_cusp(std::int64_t g, std::size_t max_group = kDefaultWeilCap) {
  return picard_rank_via_cusp(catalog::lambda(g), SplitHypothesis::Asserted, max_group);
}

inline nlohmann::json to_json(const CuspDimReport& r) {
  const BoundaryTerms& b = r.boundary;
  return {{"k", to_string(r.k)},
          {"group_order", r.group_order},
          {"dual", r.dual},
          {"parity_mismatch", r.parity_mismatch},
          {"boundary",
           {{"subspace_sign", b.subspace_sign},
            {"subspace_dim", b.subspace_dim},
            {"trS", {b.trS.real(), b.trS.imag()}},
            {"trST", {b.trST.real(), b.trST.imag()}},
            {"mult_S_minus", b.mult_S_minus},
            {"mult_ST", b.mult_ST},
            {"alpha_S", to_string(b.alpha_S)},
            {"alpha_ST", to_string(b.alpha_ST)},
            {"alpha_T", to_string(b.alpha_T)},
            {"isotropic_count", b.isotropic_count},
            {"dim_modular", to_string(b.dim_modular)}}},
          {"dim", r.dim}};
}

}  // namespace nlrank
