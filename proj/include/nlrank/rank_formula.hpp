#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nlrank/arith.hpp"
#include "nlrank/error.hpp"
#include "nlrank/numeric.hpp"

namespace nlrank {

/// Term-by-term breakdown of the closed-form Picard rank of K_g:
///   rank = (31g + 24)/24 - alpha/4 - beta/6 - fracsum - sqcount.
struct RankReport {
  std::int64_t g = 2;
  Rational alpha;
  Rational beta;
  Rational fracsum;
  std::int64_t sqcount = 0;
  std::int64_t rank = 0;

  friend bool operator==(const RankReport&, const RankReport&) = default;
};

namespace detail {
inline void check_genus(std::int64_t g) {
  if (g < 2) throw Error(ErrorCode::BadGenus, "genus must be >= 2, got " + std::to_string(g));
}
}  // namespace detail

/// 0 for even g, (2g-2 / 2g-3) otherwise.
inline Rational alpha(std::int64_t g) {
  detail::check_genus(g);
  if (g % 2 == 0) return 0;
  return jacobi<std::int64_t>(2 * g - 2, 2 * g - 3);
}

inline Rational beta(std::int64_t g) {
  detail::check_genus(g);
  const int base = jacobi<std::int64_t>(g - 1, 4 * g - 5);
  if (g % 3 == 1) return base - 1;
  return base + jacobi<std::int64_t>(g - 1, 3);
}

inline RankReport picard_rank(std::int64_t g) {
  detail::check_genus(g);
  RankReport r;
  r.g = g;
  r.alpha = alpha(g);
  r.beta = beta(g);
  r.fracsum = frac_square_sum(g);
  r.sqcount = square_count(g);
  const Rational value =
      Rational(31 * g + 24, 24) - r.alpha / 4 - r.beta / 6 - r.fracsum - Rational(r.sqcount);
  if (!is_integer(value) || value < 1) {
    throw Error(ErrorCode::NonIntegerResult, "rank formula gave " + to_string(value) + " at g = " + std::to_string(g));
  }
  r.rank = static_cast<std::int64_t>(num(value));
  return r;
}

/// Reports for g_lo..g_hi in genus order. Work is split across `threads`
/// workers; the result does not depend on the thread count.
inline std::vector<RankReport> rank_table(std::int64_t g_lo, std::int64_t g_hi, unsigned threads = 1) {
  if (g_lo < 2 || g_hi < g_lo) {
    throw Error(ErrorCode::BadRange, "need 2 <= from <= to, got " + std::to_string(g_lo) + ".." + std::to_string(g_hi));
  }
  const auto count = static_cast<std::size_t>(g_hi - g_lo + 1);
  std::vector<RankReport> out(count);
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(count, 64)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = picard_rank(g_lo + static_cast<std::int64_t>(i));
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) out[i] = picard_rank(g_lo + static_cast<std::int64_t>(i));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

inline constexpr const char* kRankCsvHeader = "g,alpha,beta,fracsum_num,fracsum_den,sqcount,rank";

inline void write_csv_row(std::ostream& os, const RankReport& r) {
  os << r.g << ',' << to_string(r.alpha, true) << ',' << to_string(r.beta, true) << ',' << num(r.fracsum) << ','
     << den(r.fracsum) << ',' << r.sqcount << ',' << r.rank << '\n';
}

inline nlohmann::json to_json(const RankReport& r) {
  return {{"g", r.g},
          {"alpha", to_string(r.alpha, true)},
          {"beta", to_string(r.beta, true)},
          {"fracsum_num", num(r.fracsum).str()},
          {"fracsum_den", den(r.fracsum).str()},
          {"sqcount", r.sqcount},
          {"rank", r.rank}};
}

}  // namespace nlrank
