#pragma once

// The `dioph` command-line driver. `run` parses argv, dispatches to a
// subcommand and writes its report to `out`; diagnostics go to `err`.
//
//   dioph height   --gens "1 0 1 0; 0 1 0 1" | --plucker "4 2 : 1 0 1 -1 0 1"
//   dioph scan     --target r4:sqrt2 --e 2 --j 1 --hmax 10
//   dioph witness  r4 --xi sqrt2 --mod4 --search 50 --lower-bound
//   dioph witness  r5 --zeta3 3/2 --residuals --search 30
//   dioph dirichlet --target random --n 4 --d 2 --j 1 --qmax 10000
//   dioph goingup  --target random --b "1 2 3 4" --budget 2
//   dioph props    --trials 100
//
// Targets: r4:<xi>, r5:<zeta3>, gens:<rows>, random. Rows are separated by
// ';' and entries may be expressions such as sqrt2 or 1/3.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/angles.hpp"
#include "dioph/dirichlet.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/error.hpp"
#include "dioph/grassmann.hpp"
#include "dioph/param_expr.hpp"
#include "dioph/random.hpp"
#include "dioph/witness.hpp"

namespace dioph::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitCertificateFailed = 2,
  kExitParse = 3,
  kExitTruncated = 4,
};

struct ExperimentConfig {
  int n = 4, d = 2, e = 2, j = 1;
  double height_max = 10;
  unsigned precision_bits = 128;
  std::string cache_dir;
  std::uint64_t seed = 1;
  std::string format = "csv";
  unsigned workers = default_workers();

  void validate() const {
    if (precision_bits < 64) throw Error(ErrorKind::kDomain, "precision must be at least 64 bits");
    if (n < 1 || d < 1 || e < 1 || d + e > n)
      throw Error(ErrorKind::kDimension, "need d, e >= 1 and d + e <= n");
    if (j < 1 || j > std::min(d, e)) throw Error(ErrorKind::kDimension, "need 1 <= j <= min(d, e)");
    if (format != "csv" && format != "json") throw Error(ErrorKind::kDomain, "format must be csv or json");
  }
};

// ---------------------------------------------------------------- parsing

struct Token {
  std::string text;
  int column = 0;  // 1-based, in the original string
};

// Rows separated by ';' or newlines, entries by whitespace or commas.
inline std::vector<std::vector<Token>> split_rows(const std::string& text, int column_offset = 0) {
  std::vector<std::vector<Token>> rows(1);
  Token cur;
  auto flush = [&] {
    if (!cur.text.empty()) rows.back().push_back(cur);
    cur = Token{};
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ';' || c == '\n') {
      flush();
      rows.emplace_back();
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      if (cur.text.empty()) cur.column = static_cast<int>(i) + 1 + column_offset;
      cur.text += c;
    }
  }
  flush();
  std::vector<std::vector<Token>> out;
  for (auto& r : rows)
    if (!r.empty()) out.push_back(std::move(r));
  if (out.empty()) throw ParseError("no generators given", 1, 1 + column_offset);
  for (const auto& r : out)
    if (r.size() != out.front().size())
      throw ParseError("rows have different lengths", 1, r.front().column);
  return out;
}

inline ParamExpr parse_entry(const Token& t) {
  try {
    return ParamExpr::parse(t.text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw ParseError(msg, 1, t.column + e.column() - 1);
  }
}

inline std::vector<std::vector<BigRat>> parse_rational_rows(const std::string& text, int column_offset = 0) {
  std::vector<std::vector<BigRat>> out;
  for (const auto& row : split_rows(text, column_offset)) {
    std::vector<BigRat> v;
    for (const auto& t : row) {
      const auto q = parse_entry(t).exact();
      if (!q) throw ParseError("entry \"" + t.text + "\" is not rational", 1, t.column);
      v.push_back(*q);
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<RealVec> parse_real_rows(const std::string& text, unsigned bits, int column_offset = 0) {
  std::vector<RealVec> out;
  for (const auto& row : split_rows(text, column_offset)) {
    RealVec v;
    for (const auto& t : row) v.push_back(parse_entry(t).eval(bits));
    out.push_back(std::move(v));
  }
  return out;
}

struct Target {
  std::string spec;
  RealSubspace space;
};

inline Target resolve_target(const std::string& spec, const ExperimentConfig& cfg) {
  const unsigned bits = cfg.precision_bits;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  const int offset = static_cast<int>(colon == std::string::npos ? spec.size() : colon + 1);
  if (kind == "r4") {
    const std::string xi = arg.empty() ? "sqrt2" : arg;
    return {spec, witness_r4(ParamExpr::parse(xi), bits)};
  }
  if (kind == "r5") {
    const std::string z = arg.empty() ? kDefaultZeta3 : arg;
    return {spec, witness_r5(ParamExpr::parse(z), bits).subspace};
  }
  if (kind == "gens") return {spec, RealSubspace::from_vectors(parse_real_rows(arg, bits, offset), bits)};
  if (kind == "random" && arg.empty()) {
    std::mt19937_64 rng(cfg.seed);
    return {spec, random_real_subspace(rng, cfg.n, cfg.d, bits)};
  }
  throw ParseError("unknown target \"" + spec + "\" (expected r4:, r5:, gens: or random)", 1, 1);
}

// Dimensions of a resolved target override --n/--d; the rest is checked.
inline void adopt_target(ExperimentConfig& cfg, const Target& t) {
  cfg.n = t.space.n();
  cfg.d = t.space.d();
}

// ---------------------------------------------------------------- output

inline std::string vector_text(const IntVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

inline Json scan_json(const ScanResult& scan, const std::optional<ExponentEstimate>& est) {
  Json j;
  j["n"] = scan.n;
  j["e"] = scan.e;
  j["j"] = scan.j;
  j["height_sq_max"] = scan.height_sq_max.get_str();
  j["evaluated"] = scan.evaluated;
  j["truncated"] = scan.truncated;
  j["rational_target"] = scan.rational_target;
  Json recs = Json::array();
  for (const auto& r : scan.records)
    recs.push_back({{"height", r.height.str()}, {"psi_j", r.psi.str()}, {"phi", r.phi.str()}, {"key", r.key}});
  j["records"] = recs;
  if (est) {
    j["beta_hat"] = est->beta_hat.str();
    j["fit_residual"] = est->fit_residual.str();
  }
  return j;
}

inline Json dirichlet_json(const DirichletSequence& s) {
  Json j;
  j["n"] = s.n;
  j["d"] = s.d;
  j["j"] = s.j;
  j["N"] = s.N;
  j["exponent"] = s.exponent.str();
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"q", r.q}, {"height", r.height.str()}, {"psi_j", r.psi.str()},
                    {"bound_ratio", r.bound_ratio.str()}, {"key", r.key}});
  j["rows"] = rows;
  j["c7"] = s.c7.str();
  j["c7_apriori"] = s.c7_apriori.str();
  j["slope"] = s.slope ? s.slope->str() : "nan";
  j["ratio_slope"] = s.ratio_slope ? s.ratio_slope->str() : "nan";
  j["approximants"] = s.approximants;
  j["skipped"] = s.skipped;
  j["repeated"] = s.repeated;
  j["rational"] = s.rational;
  return j;
}

// ---------------------------------------------------------------- commands

struct HeightArgs {
  std::string gens, plucker;
};

inline int cmd_height(const ExperimentConfig& cfg, const HeightArgs& a, std::ostream& out) {
  if (a.gens.empty() == a.plucker.empty()) throw Error(ErrorKind::kDomain, "give exactly one of --gens or --plucker");
  const RationalSubspace b = a.gens.empty() ? RationalSubspace::from_plucker(parse_plucker_key(a.plucker))
                                            : RationalSubspace::from_rational_generators(parse_rational_rows(a.gens));
  if (cfg.format == "json") {
    Json j;
    j["n"] = b.n();
    j["e"] = b.e();
    j["height_sq"] = b.height_sq().get_str();
    j["height"] = b.height(cfg.precision_bits).str();
    j["plucker"] = b.key();
    Json basis = Json::array();
    for (const auto& v : b.basis_vectors()) basis.push_back(vector_text(v));
    j["basis"] = basis;
    out << j.dump(2) << '\n';
  } else {
    out << "height_sq," << b.height_sq().get_str() << '\n';
    out << "height," << b.height(cfg.precision_bits).str() << '\n';
    out << "plucker," << b.key() << '\n';
    for (const auto& v : b.basis_vectors()) out << "basis," << vector_text(v) << '\n';
  }
  return kExitOk;
}

struct ScanArgs {
  std::string target = "r4:sqrt2";
  std::uint64_t budget = 0;
  bool all = false;  // one row per enumerated subspace instead of records only
};

inline std::string format_all_csv(const RealSubspace& a, const Enumeration& en, std::size_t j, unsigned workers) {
  const unsigned bits = a.precision_bits();
  std::vector<AngleProfile> prof(en.size());
  parallel_for(en.size(), workers, [&](std::size_t i) { prof[i] = canonical_angles(a, en.real_view(i, bits)); });
  std::ostringstream os;
  os << "# all n=" << en.n << " e=" << en.e << " j=" << j << " height_sq_max=" << en.height_sq_max
     << " count=" << en.size() << " truncated=" << (en.truncated ? 1 : 0) << '\n';
  os << "height,psi_j,phi,key\n";
  for (std::size_t i = 0; i < en.size(); ++i)
    os << sqrt(Real(en.height_sq(i), bits)).str() << ',' << prof[i].psi(j).str() << ',' << prof[i].phi.str() << ','
       << en.key(i) << '\n';
  return os.str();
}

inline int cmd_scan(ExperimentConfig cfg, const ScanArgs& a, std::ostream& out) {
  const Target t = resolve_target(a.target, cfg);
  adopt_target(cfg, t);
  cfg.validate();
  EnumerationOptions opt;
  opt.workers = cfg.workers;
  opt.budget = a.budget;
  opt.cache_dir = cfg.cache_dir;
  const Enumeration en = enumerate_subspaces(cfg.n, cfg.e, cfg.height_max, opt);
  if (a.all) {
    out << "# target " << t.spec << '\n' << format_all_csv(t.space, en, static_cast<std::size_t>(cfg.j), cfg.workers);
    return en.truncated ? kExitTruncated : kExitOk;
  }
  const ScanResult scan = scan_target(t.space, en, static_cast<std::size_t>(cfg.j), cfg.workers);
  std::optional<ExponentEstimate> est;
  if (!scan.rational_target) {
    try {
      est = estimate_exponent(scan.records);
    } catch (const Error&) {
    }
  }
  if (cfg.format == "json") {
    Json j = scan_json(scan, est);
    j["target"] = t.spec;
    out << j.dump(2) << '\n';
  } else {
    out << "# target " << t.spec << '\n' << format_scan_csv(scan, est);
    if (scan.rational_target) out << "# rational target\n";
  }
  return scan.truncated ? kExitTruncated : kExitOk;
}

struct WitnessArgs {
  std::string kind;
  std::string param;
  bool mod4 = false;
  bool residuals = false;
  long search = 0;
  bool lower_bound = false;
  double exponent = 3.0;
  std::vector<double> slices;
};

inline int cmd_witness(ExperimentConfig cfg, const WitnessArgs& a, std::ostream& out) {
  Json report;
  report["witness"] = a.kind;
  Json certs = Json::array();
  bool ok = true;
  bool truncated = false;
  std::optional<RealSubspace> space;
  if (a.kind == "r4") {
    const std::string xi = a.param.empty() ? "sqrt2" : a.param;
    report["xi"] = xi;
    space = witness_r4(ParamExpr::parse(xi), cfg.precision_bits);
    const bool any = a.mod4 || a.search > 0 || a.lower_bound;
    if (a.mod4 || a.search > 0 || !any) {
      const auto c = r4_irrationality_certificate(a.search > 0 ? a.search : 50, cfg.workers);
      ok = ok && c.passed();
      certs.push_back(to_json(c));
    }
  } else {
    const std::string z = a.param.empty() ? kDefaultZeta3 : a.param;
    const auto w = witness_r5(ParamExpr::parse(z), cfg.precision_bits);
    space = w.subspace;
    const bool any = a.residuals || a.search > 0 || a.lower_bound;
    if (a.residuals || !any) {
      Json j = to_json(w);
      j["default_param"] = a.param.empty();
      ok = ok && j["passed"].get<bool>();
      certs.push_back(j);
    }
    if (a.search > 0) {
      const auto c = r5_trivial_solution_search(a.search, cfg.workers);
      ok = ok && c.passed();
      certs.push_back(to_json(c));
    }
  }
  Json basis = Json::array();
  for (const auto& v : space->basis()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.str());
    basis.push_back(row);
  }
  report["orthonormal_basis"] = basis;
  if (a.lower_bound) {
    adopt_target(cfg, Target{a.kind, *space});
    cfg.validate();
    EnumerationOptions opt;
    opt.workers = cfg.workers;
    opt.cache_dir = cfg.cache_dir;
    const Enumeration en = enumerate_subspaces(cfg.n, cfg.e, cfg.height_max, opt);
    std::vector<long> slices;
    for (double s : a.slices) slices.push_back(height_sq_bound(s).get_si());
    const auto r = lower_bound_check(*space, en, a.exponent, slices, cfg.workers);
    Json j = to_json(r);
    j["passed"] = !r.rational_target && r.min.sign() > 0;
    ok = ok && j["passed"].get<bool>();
    truncated = r.truncated;
    certs.push_back(j);
  }
  report["certificates"] = certs;
  report["passed"] = ok;
  out << report.dump(2) << '\n';
  if (!ok) return kExitCertificateFailed;
  return truncated ? kExitTruncated : kExitOk;
}

struct DirichletArgs {
  std::string target = "random";
  long q_max = 10000;
};

inline int cmd_dirichlet(ExperimentConfig cfg, const DirichletArgs& a, std::ostream& out) {
  const Target t = resolve_target(a.target, cfg);
  adopt_target(cfg, t);
  if (cfg.j < 1 || cfg.j > cfg.d) throw Error(ErrorKind::kDimension, "need 1 <= j <= dim F");
  const auto seq = dirichlet_sequence(t.space, cfg.j, a.q_max);
  if (cfg.format == "json") {
    Json j = dirichlet_json(seq);
    j["target"] = t.spec;
    out << j.dump(2) << '\n';
  } else {
    out << "# target " << t.spec << '\n' << format_dirichlet_csv(seq);
  }
  return kExitOk;
}

struct GoingUpArgs {
  std::string target = "random";
  std::string b;
  long budget = 2;
  double weight = 1.0;
  std::optional<double> kappa;
};

inline int cmd_goingup(ExperimentConfig cfg, const GoingUpArgs& a, std::ostream& out) {
  const Target t = resolve_target(a.target, cfg);
  adopt_target(cfg, t);
  RationalSubspace b = [&] {
    if (!a.b.empty()) return RationalSubspace::from_rational_generators(parse_rational_rows(a.b));
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    return RationalSubspace::from_generators(random_independent_int_vectors(rng, cfg.n, 1, 10));
  }();
  const auto r = going_up_search(t.space, b, cfg.j, a.budget, a.weight, cfg.workers);
  const Real err = angle_error_bound(cfg.precision_bits, cfg.n, cfg.d, r.c.e());
  const bool monotone = r.psi_c <= r.psi_b + err;
  Json j;
  j["target"] = t.spec;
  j["b"] = b.key();
  j["b_height_sq"] = b.height_sq().get_str();
  j["c"] = r.c.key();
  j["c_height_sq"] = r.c.height_sq().get_str();
  Json basis = Json::array();
  for (const auto& v : r.c.basis_vectors()) basis.push_back(vector_text(v));
  j["c_basis"] = basis;
  j["psi_b"] = r.psi_b.str();
  j["psi_c"] = r.psi_c.str();
  j["score"] = r.score.str();
  j["height_ratio"] = r.height_ratio.str();
  j["min_height_sq"] = r.min_height_sq.get_str();
  j["hermite_kappa"] = r.hermite_kappa.str();
  j["candidates"] = r.candidates;
  j["contains_b"] = r.contains_b;
  j["angle_monotone"] = monotone;
  bool ok = r.contains_b && monotone;
  if (a.kappa) {
    const bool shape = r.shape_ok(Real(*a.kappa, cfg.precision_bits));
    j["kappa"] = *a.kappa;
    j["shape_ok"] = shape;
    ok = ok && shape;
  }
  j["passed"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitCertificateFailed;
}

// Quick seeded property suites; each line reports passes out of trials.
inline int cmd_props(const ExperimentConfig& cfg, int trials, std::ostream& out) {
  const unsigned bits = cfg.precision_bits;
  const Real slack = ldexp(Real::one(bits), -static_cast<long>(bits) / 2);
  std::mt19937_64 rng(cfg.seed);
  bool all = true;
  auto report = [&](const char* name, int passed) {
    out << name << ' ' << (passed == trials ? "PASS" : "FAIL") << ' ' << passed << '/' << trials << '\n';
    all = all && passed == trials;
  };
  int pass = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 5, e = 1 + t % std::min(n, 3);
    const auto b = RationalSubspace::from_generators(random_independent_int_vectors(rng, n, e, 20));
    pass += gram_det_sq(b.lattice_basis()) == b.plucker().norm_sq();
  }
  report("height-identity", pass);
  pass = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 3 + t % 4, d = 1 + t % (n - 1), e = 1 + (t / 3) % (n - 1);
    const auto prof = canonical_angles(random_real_subspace(rng, n, d, bits), random_real_subspace(rng, n, e, bits));
    bool ok = true;
    for (std::size_t j = 1; j <= prof.t(); ++j)
      ok = ok && prof.psi(j) + prof.err >= pow(prof.phi, Real::one(bits) / static_cast<long>(j));
    pass += ok;
  }
  report("psi-phi-bound", pass);
  pass = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 5;
    RealVec x = random_real_vector(rng, n, bits), y = random_real_vector(rng, n, bits);
    const Real nx = real_norm(x), ny = real_norm(y);
    for (auto& c : x) c /= nx;
    for (auto& c : y) c /= ny;
    if (real_dot(x, y).sign() < 0)
      for (auto& c : y) c = -c;
    const auto r = unit_chord_bound(x, y);
    pass += r.sin_xy + slack >= sqrt(Real(2L, bits)) / 2 * r.chord;
  }
  report("unit-chord", pass);
  pass = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 3 + t % 4, k = 1 + t % (n / 2);
    const auto r = line_decomposition(random_real_subspace(rng, n, k, bits), random_real_subspace(rng, n, k, bits));
    pass += r.lower_ok && r.upper_ok;
  }
  report("line-sandwich", pass);
  pass = 0;
  for (int t = 0; t < trials; ++t) {
    RealVec x;
    for (int i = 0, m = 1 + t % 4; i < m; ++i) x.push_back(random_real(rng, bits) * 3);
    const auto got = simultaneous_approx(x, 2 + static_cast<long>(rng() % 300));
    bool ok = !got.empty();
    for (const auto& a : got) ok = ok && a.quality <= Real::one(bits);
    pass += ok;
  }
  report("dirichlet-guarantee", pass);
  return all ? kExitOk : kExitCertificateFailed;
}

// ---------------------------------------------------------------- driver

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Heights, canonical angles and rational approximation of subspaces"};
  app.require_subcommand(1);
  app.fallthrough();
  ExperimentConfig cfg;
  app.add_option("--n", cfg.n, "ambient dimension");
  app.add_option("--d", cfg.d, "dimension of the target");
  app.add_option("--e", cfg.e, "dimension of the rational subspaces");
  app.add_option("--j", cfg.j, "index of the canonical angle");
  app.add_option("--hmax", cfg.height_max, "height bound");
  app.add_option("--prec", cfg.precision_bits, "working precision in bits");
  app.add_option("--cache", cfg.cache_dir, "enumeration cache directory");
  app.add_option("--seed", cfg.seed, "seed for random targets");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);

  HeightArgs ha;
  auto* height = app.add_subcommand("height", "height and Plücker vector of a rational subspace");
  height->add_option("--gens", ha.gens, "generator rows, e.g. \"1 0 1 0; 0 1 0 1\"");
  height->add_option("--plucker", ha.plucker, "Plücker key, e.g. \"4 2 : 1 0 0 0 0 0\"");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "record approximations of a target up to --hmax");
  scan->add_option("--target", sa.target, "r4:<xi>, r5:<zeta3>, gens:<rows> or random");
  scan->add_option("--budget", sa.budget, "cap on enumeration work (0 = none)");
  scan->add_flag("--all", sa.all, "list every enumerated subspace, not just the records");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "certificates for the R^4 and R^5 witnesses");
  witness->require_subcommand(1);
  witness->fallthrough();
  auto* r4 = witness->add_subcommand("r4", "R^4 witness");
  r4->add_option("--xi", wa.param, "parameter xi (default sqrt2)");
  r4->add_flag("--mod4", wa.mod4, "irrationality certificate with the mod-4 table");
  auto* r5 = witness->add_subcommand("r5", "R^5 witness");
  r5->add_option("--zeta3", wa.param, std::string("parameter zeta3 (default ") + kDefaultZeta3 + ")");
  r5->add_flag("--residuals", wa.residuals, "residuals of the defining relations");
  for (auto* sub : {r4, r5}) {
    sub->fallthrough();
    sub->add_option("--search", wa.search, "bounded integer search up to this bound");
    sub->add_flag("--lower-bound", wa.lower_bound, "min of phi H^exponent over the enumeration up to --hmax");
    sub->add_option("--exponent", wa.exponent, "exponent of H in the lower-bound check");
    sub->add_option("--slices", wa.slices, "extra height bounds reported by the lower-bound check");
  }

  DirichletArgs da;
  auto* dirichlet = app.add_subcommand("dirichlet", "approximant sequence from simultaneous approximation");
  dirichlet->add_option("--target", da.target, "r4:<xi>, r5:<zeta3>, gens:<rows> or random");
  dirichlet->add_option("--qmax", da.q_max, "largest denominator")->check(CLI::PositiveNumber);

  GoingUpArgs ga;
  auto* goingup = app.add_subcommand("goingup", "extend a rational subspace by one dimension");
  goingup->add_option("--target", ga.target, "r4:<xi>, r5:<zeta3>, gens:<rows> or random");
  goingup->add_option("--b", ga.b, "generator rows of B (default: seeded random line)");
  goingup->add_option("--budget", ga.budget, "coefficient bound of the search")->check(CLI::PositiveNumber);
  goingup->add_option("--weight", ga.weight, "exponent of psi_j in the score");
  goingup->add_option("--kappa", ga.kappa, "check H(C) <= kappa H(B)^((n-e-1)/(n-e))");

  int trials = 100;
  auto* props = app.add_subcommand("props", "seeded property suites");
  props->add_option("--trials", trials, "instances per suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (cfg.precision_bits < 64) throw Error(ErrorKind::kDomain, "precision must be at least 64 bits");
    if (height->parsed()) return cmd_height(cfg, ha, out);
    if (scan->parsed()) return cmd_scan(cfg, sa, out);
    if (witness->parsed()) {
      wa.kind = r4->parsed() ? "r4" : "r5";
      return cmd_witness(cfg, wa, out);
    }
    if (dirichlet->parsed()) return cmd_dirichlet(cfg, da, out);
    if (goingup->parsed()) return cmd_goingup(cfg, ga, out);
    if (props->parsed()) return cmd_props(cfg, trials, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kParse ? kExitParse : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dioph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dioph::cli
