#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlrank/arith.hpp"
#include "nlrank/cusp_dim.hpp"
#include "nlrank/discriminant.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/nl_cycles.hpp"
#include "nlrank/rank_formula.hpp"
#include "nlrank/weil.hpp"

namespace nlrank::cli {

enum class Format { csv, json, pretty };

/// Group-size cap for the weil and dim verbs, from NLRANK_MAX_GROUP.
inline std::size_t max_group_from_env() {
  const char* raw = std::getenv("NLRANK_MAX_GROUP");
  if (raw == nullptr || *raw == '\0') return kDefaultWeilCap;
  try {
    const long long v = std::stoll(raw);
    if (v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::BadFormat, std::string("NLRANK_MAX_GROUP is not a positive integer: ") + raw);
}

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-aligned plain-text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_)
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << std::setw(static_cast<int>(width[i])) << row[i];
        os << (i + 1 == row.size() ? "\n" : "  ");
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

struct LatticeArgs {
  std::string name;
  std::optional<std::int64_t> g;
  std::optional<std::int64_t> n;
  std::string file;
  std::string gram;

  void attach(CLI::App* app) {
    app->add_option("--name", name, "catalog lattice: U, UN, E8, minusE8, K3, Lambda_g");
    app->add_option("--g", g, "genus for Lambda_g");
    app->add_option("--n", n, "scale N for U(N)");
    app->add_option("--file", file, "lattice JSON file {name?, gram}");
    app->add_option("--gram", gram, "inline Gram matrix as JSON, e.g. [[2]]");
  }

  Lattice resolve() const {
    const int sources = !name.empty() + !file.empty() + !gram.empty();
    if (sources != 1) throw UsageError("exactly one of --name, --file, --gram is required");
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error(ErrorCode::BadFormat, "cannot open " + file);
      try {
        return lattice_from_json(nlohmann::json::parse(in));
      } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::BadFormat, ex.what());
      }
    }
    if (!gram.empty()) {
      try {
        return lattice_from_json(nlohmann::json{{"gram", nlohmann::json::parse(gram)}});
      } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::BadFormat, ex.what());
      }
    }
    if ((name == "Lambda_g" || name == "Lambda") && !g) throw UsageError("--name Lambda_g needs --g");
    if ((name == "UN" || name == "U(N)") && !n) throw UsageError("--name UN needs --n");
    return catalog::by_name(name, name.rfind("U", 0) == 0 ? n : g);
  }
};

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

inline std::string fmt_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline void print_pairs(std::ostream& os, Format fmt, const std::vector<std::pair<std::string, std::string>>& kv) {
  if (fmt == Format::csv) {
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << k << ',' << v << '\n';
    return;
  }
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) os << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << '\n';
  os << std::right;
}

inline void run_rank(std::ostream& out, Format fmt, std::int64_t from, std::int64_t to, unsigned threads) {
  if (from < 2 || to < from) throw UsageError("rank: need 2 <= --from <= --to");
  const auto table = rank_table(from, to, threads);
  if (fmt == Format::csv) {
    out << kRankCsvHeader << '\n';
    for (const auto& r : table) write_csv_row(out, r);
  } else if (fmt == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : table) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    Table t({"g", "alpha", "beta", "fracsum", "sqcount", "rank"});
    for (const auto& r : table)
      t.add({std::to_string(r.g), to_string(r.alpha, true), to_string(r.beta, true), to_string(r.fracsum),
             std::to_string(r.sqcount), std::to_string(r.rank)});
    t.print(out);
  }
}

inline void run_lattice_info(std::ostream& out, Format fmt, const Lattice& lat) {
  const Signature sig = signature(lat);
  const DiscriminantForm df = discriminant_form(lat);
  std::string orders;
  std::string norms;
  for (std::size_t i = 0; i < df.num_generators(); ++i) {
    Element e = df.zero();
    e[i] = 1;
    orders += (i ? " " : "") + df.orders()[i].str();
    norms += (i ? " " : "") + to_string(df.q(e));
  }
  if (fmt == Format::json) {
    nlohmann::json j = to_json(lat);
    j["rank"] = lat.rank();
    j["det"] = lat.det().str();
    j["signature"] = {sig.positive, sig.negative};
    nlohmann::json ords = nlohmann::json::array(), qs = nlohmann::json::array();
    for (std::size_t i = 0; i < df.num_generators(); ++i) {
      Element e = df.zero();
      e[i] = 1;
      ords.push_back(df.orders()[i].str());
      qs.push_back(to_string(df.q(e)));
    }
    j["discriminant"] = {{"orders", ords},
                         {"generator_norms", qs},
                         {"cardinality", df.cardinality().str()},
                         {"level", df.level().str()},
                         {"sig_mod_8", df.sig_mod_8()}};
    out << j.dump(2) << '\n';
    return;
  }
  print_pairs(out, fmt,
              {{"name", lat.name().empty() ? "-" : lat.name()},
               {"rank", std::to_string(lat.rank())},
               {"det", lat.det().str()},
               {"signature", "(" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")"},
               {"disc_orders", orders.empty() ? "-" : orders},
               {"disc_generator_norms", norms.empty() ? "-" : norms},
               {"disc_cardinality", df.cardinality().str()},
               {"level", df.level().str()},
               {"sig_mod_8", std::to_string(df.sig_mod_8())}});
}

/// Returns false when a relation fails.
inline bool run_weil_verify(std::ostream& out, Format fmt, const Lattice& lat, double tol, bool use_dual) {
  WeilRep w = build_weil_rep(discriminant_form(lat), max_group_from_env());
  if (use_dual) w = dual(w);
  const RelationReport rep = verify_relations(w, tol);
  const WeilTraces tr = traces(w);
  if (fmt == Format::json) {
    nlohmann::json j = to_json(rep);
    j["dimension"] = w.dimension;
    j["trT"] = {tr.trT.real(), tr.trT.imag()};
    j["trS"] = {tr.trS.real(), tr.trS.imag()};
    j["trST"] = {tr.trST.real(), tr.trST.imag()};
    out << j.dump(2) << '\n';
  } else {
    print_pairs(out, fmt,
                {{"dimension", std::to_string(w.dimension)},
                 {"level", std::to_string(rep.level)},
                 {"maxErrS2Z", fmt_double(rep.maxErrS2Z)},
                 {"maxErrST3", fmt_double(rep.maxErrST3)},
                 {"maxErrTN", fmt_double(rep.maxErrTN)},
                 {"maxErrUnitary", fmt_double(rep.maxErrUnitary)},
                 {"maxErrZ", fmt_double(rep.maxErrZ)},
                 {"trT", fmt_complex(tr.trT)},
                 {"pass", rep.pass ? "true" : "false"}});
  }
  return rep.pass;
}

inline void run_dim(std::ostream& out, Format fmt, const Lattice& lat, const std::string& weight, bool rho_m) {
  const Rational k = weight.empty() ? Rational(static_cast<std::int64_t>(lat.rank()), 2) : parse_rational(weight);
  const CuspDimReport rep = dim_cusp(lat, k, {.dual = !rho_m, .max_group = max_group_from_env()});
  if (fmt == Format::json) {
    out << to_json(rep).dump(2) << '\n';
    return;
  }
  const BoundaryTerms& b = rep.boundary;
  print_pairs(out, fmt,
              {{"lattice", lat.name().empty() ? "-" : lat.name()},
               {"k", to_string(rep.k, true)},
               {"type", rep.dual ? "dual" : "rho"},
               {"group_order", std::to_string(rep.group_order)},
               {"parity_mismatch", rep.parity_mismatch ? "true" : "false"},
               {"subspace_dim", std::to_string(b.subspace_dim)},
               {"alpha_S", to_string(b.alpha_S, true)},
               {"alpha_ST", to_string(b.alpha_ST, true)},
               {"alpha_T", to_string(b.alpha_T, true)},
               {"isotropic_count", std::to_string(b.isotropic_count)},
               {"dim_modular", to_string(b.dim_modular, true)},
               {"dim", std::to_string(rep.dim)}});
}

inline void run_nl(std::ostream& out, Format fmt, std::int64_t g, std::int64_t dmax, std::int64_t hmax) {
  if (dmax < 0 || hmax < 0) throw UsageError("nl: --dmax and --hmax must be >= 0");
  const auto labels = enumerate_nl(g, dmax, hmax);
  if (fmt == Format::csv) {
    out << kNLCsvHeader << '\n';
    for (const auto& l : labels) write_csv_row(out, l);
  } else if (fmt == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : labels) arr.push_back(to_json(l));
    out << arr.dump(2) << '\n';
  } else {
    Table t({"g", "h", "d", "delta", "n", "gamma", "degenerate"});
    for (const auto& l : labels)
      t.add({std::to_string(l.g), std::to_string(l.h), std::to_string(l.d), l.delta.str(), to_string(l.n, true),
             std::to_string(l.gamma), l.degenerate ? "yes" : "no"});
    t.print(out);
  }
}

/// Returns false when any genus disagrees.
inline bool run_crosscheck(std::ostream& out, Format fmt, std::int64_t from, std::int64_t to) {
  if (from < 2 || to < from) throw UsageError("crosscheck: need 2 <= --from <= --to");
  const std::size_t cap = max_group_from_env();
  bool ok = true;
  nlohmann::json arr = nlohmann::json::array();
  Table t({"g", "formula", "cusp", "agree"});
  if (fmt == Format::csv) out << "g,formula_rank,cusp_rank,agree\n";
  for (std::int64_t g = from; g <= to; ++g) {
    const std::int64_t formula = picard_rank(g).rank;
    const std::int64_t cusp = picard_rank_via_cusp(g, cap);
    const bool agree = formula == cusp;
    ok = ok && agree;
    if (fmt == Format::csv) {
      out << g << ',' << formula << ',' << cusp << ',' << (agree ? 1 : 0) << '\n';
    } else if (fmt == Format::json) {
      arr.push_back({{"g", g}, {"formula_rank", formula}, {"cusp_rank", cusp}, {"agree", agree}});
    } else {
      t.add({std::to_string(g), std::to_string(formula), std::to_string(cusp), agree ? "yes" : "NO"});
    }
  }
  if (fmt == Format::json) out << arr.dump(2) << '\n';
  if (fmt == Format::pretty) t.print(out);
  return ok;
}

}  // namespace detail

/// Runs one command line (args exclude the program name). Exit codes:
/// 0 success, 1 domain error or failed check, 2 usage error.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picard ranks of K3 moduli spaces and lattice tooling", "nlrank"};
  app.require_subcommand(1);

  Format fmt = Format::pretty;
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}, {"pretty", Format::pretty}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", fmt, "csv, json or pretty")->transform(CLI::CheckedTransformer(formats));
  };

  std::int64_t from = 0, to = 0, g = 0, dmax = 0, hmax = 0;
  unsigned threads = 1;
  double tol = 1e-9;
  bool use_dual = false;
  bool rho_m = false;
  std::string weight;

  auto* rank = app.add_subcommand("rank", "closed-form Picard rank table");
  rank->add_option("--from", from)->required();
  rank->add_option("--to", to)->required();
  rank->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 64u));
  add_format(rank);

  auto* lattice = app.add_subcommand("lattice", "lattice inspection");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "invariants and discriminant form");
  detail::LatticeArgs info_args;
  info_args.attach(info);
  add_format(info);

  auto* weil = app.add_subcommand("weil", "Weil representation");
  weil->require_subcommand(1);
  auto* verify = weil->add_subcommand("verify", "check the Mp2(Z) relations");
  detail::LatticeArgs verify_args;
  verify_args.attach(verify);
  verify->add_option("--tol", tol);
  verify->add_flag("--dual", use_dual, "use the conjugate representation");
  add_format(verify);
  auto* exportc = weil->add_subcommand("export", "dump matrices as JSON");
  detail::LatticeArgs export_args;
  export_args.attach(exportc);
  exportc->add_flag("--dual", use_dual, "use the conjugate representation");

  auto* dim = app.add_subcommand("dim", "dimension of vector-valued cusp forms");
  detail::LatticeArgs dim_args;
  dim->add_option("--g", dim_args.g, "genus (Lambda_g)");
  dim->add_option("--name", dim_args.name);
  dim->add_option("--n", dim_args.n);
  dim->add_option("--file", dim_args.file);
  dim->add_option("--gram", dim_args.gram);
  dim->add_option("--k", weight, "weight, e.g. 21/2 (default rank/2)");
  dim->add_flag("--rho", rho_m, "use rho_M instead of its dual");
  add_format(dim);

  auto* nl = app.add_subcommand("nl", "Noether-Lefschetz labels");
  nl->add_option("--g", g)->required();
  nl->add_option("--dmax", dmax)->required();
  nl->add_option("--hmax", hmax)->required();
  add_format(nl);

  auto* cross = app.add_subcommand("crosscheck", "closed form vs cusp-form dimension");
  cross->add_option("--from", from)->required();
  cross->add_option("--to", to)->required();
  add_format(cross);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "nlrank: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (rank->parsed()) {
      detail::run_rank(out, fmt, from, to, threads);
    } else if (info->parsed()) {
      detail::run_lattice_info(out, fmt, info_args.resolve());
    } else if (verify->parsed()) {
      return detail::run_weil_verify(out, fmt, verify_args.resolve(), tol, use_dual) ? 0 : 1;
    } else if (exportc->parsed()) {
      WeilRep w = build_weil_rep(discriminant_form(export_args.resolve()), max_group_from_env());
      out << to_json(use_dual ? dual(w) : w).dump() << '\n';
    } else if (dim->parsed()) {
      if (dim_args.name.empty() && dim_args.file.empty() && dim_args.gram.empty()) {
        if (!dim_args.g) throw detail::UsageError("dim: need --g or a lattice selection");
        dim_args.name = "Lambda_g";
      }
      detail::run_dim(out, fmt, dim_args.resolve(), weight, rho_m);
    } else if (nl->parsed()) {
      detail::run_nl(out, fmt, g, dmax, hmax);
    } else if (cross->parsed()) {
      return detail::run_crosscheck(out, fmt, from, to) ? 0 : 1;
    }
  } catch (const detail::UsageError& e) {
    err << "nlrank: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "nlrank: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nlrank::cli
