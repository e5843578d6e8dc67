#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "nlrank/error.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/matrix.hpp"
#include "nlrank/numeric.hpp"
#include "nlrank/smith.hpp"

namespace nlrank {

/// Exponent vector (a_1, ..., a_r) of an element sum a_i * gamma_i, with
/// 0 <= a_i < d_i.
using Element = std::vector<std::int64_t>;

/// Elements of a discriminant group in lexicographic exponent order together
/// with their norms over a common denominator: q(gamma_k) = norm_num[k] / denom.
struct EnumeratedGroup {
  std::vector<Element> elements;
  std::int64_t denom = 1;
  std::vector<std::int64_t> norm_num;   // in [0, 2 * denom)
  std::vector<std::int64_t> negation;   // index of -gamma_k
};

/// The finite quadratic module M^dual / M of an even lattice M.
class DiscriminantForm {
 public:
  DiscriminantForm(RationalMatrix gram, std::vector<BigInt> orders, std::vector<std::vector<Rational>> generators,
                   Signature sig)
      : gram_(std::move(gram)), orders_(std::move(orders)), generators_(std::move(generators)), sig_(sig) {
    const std::size_t r = generators_.size();
    generator_gram_ = RationalMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) generator_gram_(i, j) = inner(generators_[i], generators_[j]);

    cardinality_ = 1;
    for (const auto& d : orders_) cardinality_ *= d;

    // N q(gamma) in 2Z for all gamma iff N Q_ii / 2 and N Q_ij (i < j) are integers.
    level_ = 1;
    for (std::size_t i = 0; i < r; ++i) {
      level_ = boost::multiprecision::lcm(level_, den(generator_gram_(i, i) / 2));
      for (std::size_t j = i + 1; j < r; ++j) level_ = boost::multiprecision::lcm(level_, den(generator_gram_(i, j)));
    }
  }

  const std::vector<BigInt>& orders() const noexcept { return orders_; }
  const std::vector<std::vector<Rational>>& generators() const noexcept { return generators_; }
  /// Gram matrix of the generators, exact (not reduced).
  const RationalMatrix& generator_gram() const noexcept { return generator_gram_; }
  const BigInt& cardinality() const noexcept { return cardinality_; }
  const BigInt& level() const noexcept { return level_; }
  const Signature& signature() const noexcept { return sig_; }
  int sig_mod_8() const noexcept { return sig_.mod8(); }
  std::size_t num_generators() const noexcept { return orders_.size(); }

  /// <x, y> for rational coordinate vectors in the lattice basis.
  Rational inner(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * gram_(i, j) * y[j];
    }
    return s;
  }

  /// Representative sum a_i * gamma_i in M^dual, lattice coordinates.
  std::vector<Rational> vector(const Element& e) const {
    std::vector<Rational> v(gram_.rows(), Rational(0));
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += Rational(e[i]) * generators_[i][k];
    return v;
  }

  /// q(gamma) = <gamma, gamma> in Q/2Z, represented in [0, 2).
  Rational q(const Element& e) const {
    Rational s = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j) s += Rational(e[i] * e[j]) * generator_gram_(i, j);
    return reduce_mod(s, Rational(2));
  }

  /// b(gamma, delta) = <gamma, delta> in Q/Z, represented in [0, 1).
  Rational b(const Element& x, const Element& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * generator_gram_(i, j);
    return frac(s);
  }

  Element add(const Element& x, const Element& y) const {
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_floor<std::int64_t>(x[i] + y[i], order(i));
    return z;
  }

  Element negate(const Element& x) const {
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_floor<std::int64_t>(-x[i], order(i));
    return z;
  }

  Element zero() const { return Element(orders_.size(), 0); }

  /// Position of `e` in lexicographic order (first generator most significant).
  std::size_t index(const Element& e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i) idx = idx * static_cast<std::size_t>(order(i)) + static_cast<std::size_t>(e[i]);
    return idx;
  }

  /// Every element in lexicographic exponent order; TooLarge above `cap`.
  EnumeratedGroup enumerate(std::size_t cap) const {
    if (cardinality_ > cap) {
      throw Error(ErrorCode::TooLarge,
                  "discriminant group of order " + cardinality_.str() + " exceeds cap " + std::to_string(cap));
    }
    const std::size_t r = orders_.size();
    EnumeratedGroup out;

    BigInt denom = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) denom = boost::multiprecision::lcm(denom, den(generator_gram_(i, j)));
    if (denom > (BigInt(1) << 40)) throw Error(ErrorCode::TooLarge, "norm denominator too large: " + denom.str());
    out.denom = static_cast<std::int64_t>(denom);
    const std::int64_t mod = 2 * out.denom;
    std::vector<std::int64_t> coeff(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        coeff[i * r + j] = to_int64(mod_floor<BigInt>(num(generator_gram_(i, j) * Rational(denom)), BigInt(mod)));

    const auto size = static_cast<std::size_t>(cardinality_);
    out.elements.reserve(size);
    out.norm_num.reserve(size);
    Element e(r, 0);
    for (std::size_t k = 0; k < size; ++k) {
      __int128 s = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (e[i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
          s = (s + static_cast<__int128>(e[i]) * e[j] % mod * coeff[i * r + j]) % mod;
        }
      }
      out.elements.push_back(e);
      out.norm_num.push_back(static_cast<std::int64_t>(s));
      for (std::size_t i = r; i-- > 0;) {
        if (++e[i] < order(i)) break;
        e[i] = 0;
      }
    }
    out.negation.resize(size);
    for (std::size_t k = 0; k < size; ++k) out.negation[k] = static_cast<std::int64_t>(index(negate(out.elements[k])));
    return out;
  }

 private:
  std::int64_t order(std::size_t i) const { return static_cast<std::int64_t>(orders_[i]); }

  RationalMatrix gram_;
  std::vector<BigInt> orders_;
  std::vector<std::vector<Rational>> generators_;
  RationalMatrix generator_gram_;
  BigInt cardinality_;
  BigInt level_;
  Signature sig_;
};

/// Discriminant form via Smith normal form L G R = D: the generators are the
/// columns of R divided by the elementary divisors greater than one.
inline DiscriminantForm discriminant_form(const Lattice& lat) {
  const SmithForm snf = smith_normal_form(lat.gram());
  const std::size_t n = lat.rank();
  std::vector<BigInt> orders;
  std::vector<std::vector<Rational>> generators;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt& d = snf.diagonal(i, i);
    if (d == 1) continue;
    orders.push_back(d);
    std::vector<Rational> gen(n);
    for (std::size_t k = 0; k < n; ++k) gen[k] = Rational(snf.right(k, i), d);
    generators.push_back(std::move(gen));
  }
  return DiscriminantForm(to_rational(lat.gram()), std::move(orders), std::move(generators), signature(lat));
}

}  // namespace nlrank
