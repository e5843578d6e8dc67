#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nlrank/error.hpp"
#include "nlrank/matrix.hpp"
#include "nlrank/numeric.hpp"

namespace nlrank {

/// Count of positive and negative eigenvalues of a real symmetric form.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;

  std::size_t rank() const noexcept { return positive + negative; }
  /// (positive - negative) mod 8, in 0..7.
  int mod8() const noexcept {
    auto diff = static_cast<long long>(positive) - static_cast<long long>(negative);
    return static_cast<int>(((diff % 8) + 8) % 8);
  }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline BigInt determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Even, nondegenerate integral lattice given by its Gram matrix. Instances
/// are validated on construction and immutable afterwards.
class Lattice {
 public:
  /// Validates `gram`: square, symmetric, even diagonal, nonzero determinant.
  explicit Lattice(IntMatrix gram, std::string name = {}) : gram_(std::move(gram)), name_(std::move(name)) {
    if (!gram_.square()) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not square");
    const std::size_t n = gram_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (gram_(i, j) != gram_(j, i)) {
          throw Error(ErrorCode::NotSymmetric,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
        }
      }
      if (gram_(i, i) % 2 != 0) {
        throw Error(ErrorCode::NotEven, "diagonal entry " + std::to_string(i) + " is odd");
      }
    }
    det_ = determinant(gram_);
    if (det_ == 0) throw Error(ErrorCode::Degenerate, "Gram matrix has determinant 0");
  }

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }
  const BigInt& det() const noexcept { return det_; }
  const std::string& name() const noexcept { return name_; }

  Lattice renamed(std::string name) const {
    Lattice copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

 private:
  IntMatrix gram_;
  BigInt det_;
  std::string name_;
};

inline Lattice make_lattice(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix gram(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) gram(i, j) = rows[i][j];
  }
  return Lattice(std::move(gram));
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix gram(n, n);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) gram(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) gram(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "+" + b.name();
  return Lattice(std::move(gram), std::move(name));
}

/// Lattice with the form multiplied by `factor` (nonzero).
inline Lattice scaled(const Lattice& lat, const BigInt& factor) {
  IntMatrix gram = lat.gram();
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) gram(i, j) *= factor;
  return Lattice(std::move(gram));
}

inline Lattice negated(const Lattice& lat) {
  std::string name = lat.name().empty() ? std::string{} : "-(" + lat.name() + ")";
  return scaled(lat, -1).renamed(std::move(name));
}

/// Gram matrix P^T G P of the same lattice in another basis.
inline Lattice change_basis(const Lattice& lat, const IntMatrix& basis) {
  return Lattice(basis.transpose() * lat.gram() * basis, lat.name());
}

/// Signature by exact congruence diagonalization over Q.
inline Signature signature(const Lattice& lat) {
  RationalMatrix a = to_rational(lat.gram());
  const std::size_t n = a.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, pivot) == 0) ++pivot;
    if (pivot == n) {
      // Zero diagonal: a_ii + 2 a_ij + a_jj = 2 a_ij != 0 after e_i += e_j.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw Error(ErrorCode::Degenerate, "form is degenerate");
      a.add_row(pi, pj, Rational(1));
      a.add_col(pi, pj, Rational(1));
      pivot = pi;
    }
    a.swap_rows(k, pivot);
    a.swap_cols(k, pivot);
    const Rational d = a(k, k);
    (d > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = -a(i, k) / d;
      a.add_row(i, k, f);
      a.add_col(i, k, f);
    }
  }
  return sig;
}

namespace catalog {

inline Lattice hyperbolic_plane() { return Lattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

/// U(N): off-diagonal entries N.
inline Lattice scaled_hyperbolic_plane(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::BadScale, "U(N) requires N >= 1, got " + std::to_string(n));
  return Lattice(IntMatrix{{0, n}, {n, 0}}, "U(" + std::to_string(n) + ")");
}

/// Rank-one lattice <a>.
inline Lattice rank_one(std::int64_t a) {
  return Lattice(IntMatrix{{a}}, "<" + std::to_string(a) + ">");
}

/// Cartan matrix of E8: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
inline Lattice e8() {
  IntMatrix gram(8, 8);
  for (std::size_t i = 0; i < 8; ++i) gram(i, i) = 2;
  auto link = [&gram](std::size_t i, std::size_t j) { gram(i, j) = gram(j, i) = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return Lattice(std::move(gram), "E8");
}

inline Lattice minus_e8() { return negated(e8()).renamed("-E8"); }

/// U^3 + (-E8)^2, signature (3,19).
inline Lattice k3() {
  Lattice u = hyperbolic_plane();
  Lattice lat = direct_sum(direct_sum(direct_sum(u, u), u), direct_sum(minus_e8(), minus_e8()));
  return lat.renamed("K3");
}

/// <w> + U^2 + (-E8)^2 with w^2 = 2 - 2g; the orthogonal complement of a
/// genus-g quasi-polarization in the K3 lattice.
inline Lattice lambda(std::int64_t g) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
  Lattice u = hyperbolic_plane();
  Lattice lat = direct_sum(direct_sum(rank_one(2 - 2 * g), direct_sum(u, u)), direct_sum(minus_e8(), minus_e8()));
  return lat.renamed("Lambda_" + std::to_string(g));
}

/// Catalog lookup by name: U, U(N) (alias UN), E8, minusE8, K3, Lambda_g.
/// `param` is N for U(N) and g for Lambda_g; ignored otherwise.
inline Lattice by_name(const std::string& name, std::optional<std::int64_t> param = std::nullopt) {
  auto need = [&](const char* what) {
    if (!param) throw Error(ErrorCode::BadName, name + " requires parameter " + what);
    return *param;
  };
  if (name == "U") return hyperbolic_plane();
  if (name == "U(N)" || name == "UN") return scaled_hyperbolic_plane(need("N"));
  if (name == "E8") return e8();
  if (name == "minusE8" || name == "-E8") return minus_e8();
  if (name == "K3") return k3();
  if (name == "Lambda_g" || name == "Lambda") return lambda(need("g"));
  throw Error(ErrorCode::BadName, "unknown catalog lattice '" + name + "'");
}

}  // namespace catalog

/// {name?, gram: [[...]]} with integer entries.
inline nlohmann::json to_json(const Lattice& lat) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < lat.rank(); ++j) row.push_back(to_int64(lat.gram()(i, j)));
    rows.push_back(std::move(row));
  }
  nlohmann::json out;
  if (!lat.name().empty()) out["name"] = lat.name();
  out["gram"] = std::move(rows);
  return out;
}

inline Lattice lattice_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array()) {
    throw Error(ErrorCode::BadFormat, "lattice JSON needs a 'gram' array");
  }
  const auto& rows = j["gram"];
  const std::size_t n = rows.size();
  IntMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not square");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = rows[i][k];
      if (!v.is_number_integer()) throw Error(ErrorCode::BadFormat, "Gram entries must be integers");
      gram(i, k) = v.get<std::int64_t>();
    }
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : std::string{};
  return Lattice(std::move(gram), std::move(name));
}

}  // namespace nlrank
