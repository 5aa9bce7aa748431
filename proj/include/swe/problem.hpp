#pragma once

// Run descriptions, built-in fixtures, the exact-vs-numeric error and the
// plain-text outputs (CSV, gnuplot). No third-party dependencies here; the
// CLI adds config-file parsing and the JSON summary on top.

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "swe/core.hpp"
#include "swe/error.hpp"
#include "swe/godunov.hpp"
#include "swe/riemann.hpp"

namespace swe {

// ---------------------------------------------------------------- L1 error

enum class NormComponents { HU, H, HQ };  // (h,u), h only, (h,hu)

constexpr std::string_view to_string(NormComponents c) {
  switch (c) {
    case NormComponents::HU: return "h+u";
    case NormComponents::H: return "h";
    case NormComponents::HQ: return "h+hu";
  }
  return "?";
}

inline std::optional<NormComponents> parse_norm_components(std::string_view s) {
  if (s == "h+u" || s == "hu") return NormComponents::HU;
  if (s == "h") return NormComponents::H;
  if (s == "h+hu" || s == "hq") return NormComponents::HQ;
  return std::nullopt;
}

struct L1Norm {
  NormComponents components = NormComponents::HU;
  bool weighted = true;  // multiply by dx

  friend bool operator==(const L1Norm&, const L1Norm&) = default;
};

// Frozen by `swe calibrate` against the Test 2 / Test 3 reference errors;
// configs/fixtures.json records the same choice.
inline constexpr L1Norm kCalibratedNorm{NormComponents::HU, true};

inline double pointwise_gap(const State& num, const State& ex, NormComponents c) {
  const double dh = std::abs(num.h - ex.h);
  switch (c) {
    case NormComponents::HU: return dh + std::abs(num.u - ex.u);
    case NormComponents::H: return dh;
    case NormComponents::HQ: return dh + std::abs(num.h * num.u - ex.h * ex.u);
  }
  return dh;
}

inline double l1_error(const std::vector<State>& numeric, const std::vector<State>& exact, double dx,
                       L1Norm norm = kCalibratedNorm) {
  if (numeric.size() != exact.size()) throw Error(ErrorCode::LengthMismatch, "profiles differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) s += pointwise_gap(numeric[i], exact[i], norm.components);
  return norm.weighted ? s * dx : s;
}

// ----------------------------------------------------------- configuration

struct ProblemConfig {
  std::string name = "custom";
  // Initial profile: pieces[k] on (breaks[k-1], breaks[k]). Two pieces make
  // a Riemann problem, which also gets an exact solution. In a config file
  // pieces are written `h,u,a | h,u,a | ...`.
  std::vector<double> breaks{0.0};
  std::vector<State> pieces{State{1.0, 0.0, 0.0}, State{1.0, 0.0, 0.0}};
  double x0 = -1.0;
  double x1 = 1.0;
  std::size_t n = 500;
  double t_end = 0.1;
  double cfl = 0.75;
  double g = 9.8;
  std::vector<ConstructionTag> preference{kDefaultPreference.begin(), kDefaultPreference.end()};
  bool literal_branch_sign = false;
  CompositeAlgorithm composite = CompositeAlgorithm::PhiBisection;
  L1Norm norm = kCalibratedNorm;
  std::string csv_path;
  std::string json_path;
  std::string plot_path;

  bool is_riemann() const { return pieces.size() == 2; }
  const State& left() const { return pieces.front(); }
  const State& right() const { return pieces.back(); }

  void set_riemann(const State& L, const State& R, double x = 0.0) {
    breaks = {x};
    pieces = {L, R};
  }

  SolveOptions solve_options() const {
    SolveOptions o;
    o.preference = preference;
    o.literal_branch_sign = literal_branch_sign;
    o.construct.algorithm = composite;
    return o;
  }

  SchemeConfig scheme() const {
    SchemeConfig s;
    s.cfl = cfl;
    s.solver = solve_options();
    s.g = Gravity(g);
    return s;
  }

  void validate() const {
    const auto fail = [](const std::string& m) { throw Error(ErrorCode::ConfigError, m); };
    if (!(t_end > 0.0)) fail("t_end must be > 0");
    if (n < 2) fail("n must be >= 2");
    if (!(x1 > x0)) fail("x1 must exceed x0");
    if (!(g > 0.0)) fail("g must be > 0");
    if (!(cfl > 0.0) || cfl > 1.0) fail("cfl must lie in (0, 1]");
    if (preference.empty()) fail("empty preference list");
    if (pieces.size() != breaks.size() + 1) fail("need one more piece than breaks");
    if (!std::is_sorted(breaks.begin(), breaks.end())) fail("breaks must be increasing");
    for (const State& s : pieces)
      if (!(s.h >= 0.0) || !std::isfinite(s.u) || !std::isfinite(s.a)) fail("heights must be >= 0 and finite");
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\"'");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"'");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

inline double parse_double(const std::string& s, std::string_view key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw Error(ErrorCode::ConfigError, std::string(key) + ": not a number: '" + s + "'");
  return v;
}

inline State parse_state(const std::string& s, std::string_view key) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(ErrorCode::ConfigError, std::string(key) + ": expected h,u,a");
  return State{parse_double(parts[0], key), parse_double(parts[1], key), parse_double(parts[2], key)};
}

inline bool parse_bool(const std::string& s, std::string_view key) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw Error(ErrorCode::ConfigError, std::string(key) + ": expected a boolean");
}

inline std::string strip_section(std::string_view key) {
  const auto p = key.rfind('.');
  return std::string(p == std::string_view::npos ? key : key.substr(p + 1));
}

}  // namespace detail

inline std::vector<ConstructionTag> parse_preference(std::string_view s) {
  std::vector<ConstructionTag> out;
  for (const auto& item : detail::split(s, ',')) {
    if (item.empty()) continue;
    const auto t = parse_tag(item);
    if (!t) throw Error(ErrorCode::ConfigError, "unknown solver '" + item + "'");
    if (std::find(out.begin(), out.end(), *t) == out.end()) out.push_back(*t);
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "empty preference list");
  return out;
}

/// `--prefer a3` means "a3 first"; the remaining tags keep the default order
/// so every interface still has a fallback.
inline std::vector<ConstructionTag> preference_with_first(std::vector<ConstructionTag> head) {
  for (ConstructionTag t : kDefaultPreference)
    if (std::find(head.begin(), head.end(), t) == head.end()) head.push_back(t);
  return head;
}

/// Applies one `key = value` entry. Keys may carry a section prefix
/// (`grid.n`); only the last component is significant.
inline void apply_setting(ProblemConfig& cfg, std::string_view raw_key, const std::string& raw_value) {
  const std::string key = detail::strip_section(raw_key);
  const std::string v = detail::trim(raw_value);
  using detail::parse_double;
  if (key == "name") {
    cfg.name = v;
  } else if (key == "left") {
    cfg.pieces.front() = detail::parse_state(v, key);
  } else if (key == "right") {
    cfg.pieces.back() = detail::parse_state(v, key);
  } else if (key == "x_break") {
    if (cfg.breaks.size() != 1) throw Error(ErrorCode::ConfigError, "x_break needs a two-piece profile");
    cfg.breaks[0] = parse_double(v, key);
  } else if (key == "pieces") {
    cfg.pieces.clear();
    for (const auto& p : detail::split(v, '|'))
      if (!p.empty()) cfg.pieces.push_back(detail::parse_state(p, key));
  } else if (key == "breaks") {
    cfg.breaks.clear();
    for (const auto& p : detail::split(v, ','))
      if (!p.empty()) cfg.breaks.push_back(parse_double(p, key));
  } else if (key == "x0") {
    cfg.x0 = parse_double(v, key);
  } else if (key == "x1") {
    cfg.x1 = parse_double(v, key);
  } else if (key == "n") {
    const double d = parse_double(v, key);
    if (!(d >= 2.0) || d != std::floor(d)) throw Error(ErrorCode::ConfigError, "n must be an integer >= 2");
    cfg.n = static_cast<std::size_t>(d);
  } else if (key == "t_end") {
    cfg.t_end = parse_double(v, key);
  } else if (key == "cfl") {
    cfg.cfl = parse_double(v, key);
  } else if (key == "g") {
    cfg.g = parse_double(v, key);
  } else if (key == "prefer") {
    cfg.preference = preference_with_first(parse_preference(v));
  } else if (key == "preference") {
    cfg.preference = parse_preference(v);
  } else if (key == "literal_branch_sign") {
    cfg.literal_branch_sign = detail::parse_bool(v, key);
  } else if (key == "composite") {
    if (v == "phi") cfg.composite = CompositeAlgorithm::PhiBisection;
    else if (v == "level") cfg.composite = CompositeAlgorithm::LevelMismatch;
    else throw Error(ErrorCode::ConfigError, "composite must be phi or level");
  } else if (key == "norm") {
    const auto c = parse_norm_components(v);
    if (!c) throw Error(ErrorCode::ConfigError, "norm must be h+u, h or h+hu");
    cfg.norm.components = *c;
  } else if (key == "weighted") {
    cfg.norm.weighted = detail::parse_bool(v, key);
  } else if (key == "csv") {
    cfg.csv_path = v;
  } else if (key == "json") {
    cfg.json_path = v;
  } else if (key == "plot") {
    cfg.plot_path = v;
  } else {
    throw Error(ErrorCode::ConfigError, "unknown key '" + std::string(raw_key) + "'");
  }
}

// ----------------------------------------------------------------- fixtures

inline constexpr std::array<std::string_view, 7> kTestIds{"test1", "test2", "test3", "test4",
                                                          "test5", "test6", "test7"};

inline ProblemConfig test_fixture(int id) {
  ProblemConfig c;
  c.name = "test" + std::to_string(id);
  switch (id) {
    case 1: c.set_riemann({1.0, 5.0, 1.0}, {1.223655890827479, 4.086116070277590, 1.2}); break;
    case 2: c.set_riemann({0.3, 2.0, 1.1}, {0.4, 2.2, 1.0}); break;
    case 3: c.set_riemann({1.0, 3.0, 1.2}, {2.0, 0.5, 1.0}); break;
    case 4: c.set_riemann({1.0, 3.0, 1.1}, {1.2, 0.1, 1.0}); break;
    case 5: c.set_riemann({0.2, 4.0, 1.0}, {0.5, 1.5, 1.1}); break;
    case 6: c.set_riemann({0.2, 5.0, 1.0}, {0.75904946, 1.3410741, 1.2}); break;
    case 7:
      c.set_riemann({1.0, 2.0, 1.1}, {0.8, 4.0, 1.0});
      c.t_end = 0.03;
      break;
    default: throw Error(ErrorCode::ConfigError, "tests are numbered 1..7");
  }
  return c;
}

/// Left state and target level of a contact-endpoint table.
struct TableFixture {
  std::string_view id;
  State left;
  double a_target;
};

// a5 uses h = 0.1: it is the left height for which the tabulated endpoints
// carry discharge 1.
inline constexpr std::array<TableFixture, 8> kTables{{
    {"a1", {0.5, 4.0, 1.0}, 0.9},
    {"a2", {1.0, 3.1304952, 1.0}, 0.9},
    {"a3", {0.01, 10.0, 1.0}, 0.9},
    {"a4", {0.5, 4.0, 0.9}, 1.0},
    {"a5", {0.1, 10.0, 0.9}, 1.0},
    {"b1", {3.0, 0.5, 1.1}, 1.0},
    {"b2", {3.0, 0.1, 1.1}, 1.0},
    {"b3", {3.0, 1.0, 2.0}, 1.0},
}};

inline const TableFixture& table_fixture(std::string_view id) {
  for (const auto& t : kTables) {
    if (t.id.size() != id.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < id.size(); ++i)
      same = same && std::tolower(static_cast<unsigned char>(id[i])) == t.id[i];
    if (same) return t;
  }
  throw Error(ErrorCode::ConfigError, "unknown table '" + std::string(id) + "' (a1..a5, b1..b3)");
}

// --------------------------------------------------------------------- run

struct SolutionDistance {
  ConstructionTag tag;
  double l1;
};

struct RunReport {
  std::string name;
  std::vector<double> x;
  std::vector<State> numeric;
  std::vector<State> exact;  // empty unless the run is a Riemann problem
  double dx = 0.0;
  double t_end = 0.0;
  L1Norm norm;
  std::optional<double> l1_error;
  std::optional<ConstructionTag> exact_tag;
  bool exact_mirrored = false;
  std::optional<ClassificationReport> classification;
  std::vector<SolutionDistance> distances;  // to every solution classify finds
  AdvanceReport advance;
  double wall_seconds = 0.0;
};

inline std::vector<State> sample_profile(const RiemannSolution& sol, const std::vector<double>& x, double x_break,
                                         double t, Gravity g) {
  std::vector<State> out;
  out.reserve(x.size());
  for (double xi : x) out.push_back(sample(sol, (xi - x_break) / t, g));
  return out;
}

inline RunReport run(const ProblemConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const SchemeConfig scheme = cfg.scheme();
  const Gravity g = scheme.g;

  RunReport rep;
  rep.name = cfg.name;
  rep.t_end = cfg.t_end;
  rep.norm = cfg.norm;
  Grid grid = init_cell_averages(PiecewiseConstant{cfg.breaks, cfg.pieces}, cfg.x0, cfg.x1, cfg.n);
  rep.dx = grid.dx();
  grid = advance(std::move(grid), cfg.t_end, scheme, &rep.advance);
  rep.numeric = grid.cells;
  rep.x.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rep.x.push_back(grid.center(i));

  if (cfg.is_riemann() && cfg.left().h > 0.0 && cfg.right().h > 0.0) {
    const RiemannSolution exact = solve(cfg.left(), cfg.right(), g, scheme.solver);
    rep.exact_tag = exact.tag;
    rep.exact_mirrored = exact.mirrored;
    rep.exact = sample_profile(exact, rep.x, cfg.breaks[0], cfg.t_end, g);
    rep.l1_error = l1_error(rep.numeric, rep.exact, rep.dx, cfg.norm);
    rep.classification = classify(cfg.left(), cfg.right(), g, scheme.solver.construct);
    for (const auto& [tag, sol] : rep.classification->solutions) {
      const auto prof = sample_profile(sol, rep.x, cfg.breaks[0], cfg.t_end, g);
      rep.distances.push_back({tag, l1_error(rep.numeric, prof, rep.dx, cfg.norm)});
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ------------------------------------------------------------------ output

/// CSV with header x,h,u,a,h_exact,u_exact,a_exact at 17 significant
/// digits; exact columns are empty when there is no exact solution.
inline void write_csv(std::ostream& os, const RunReport& rep) {
  os << "x,h,u,a,h_exact,u_exact,a_exact\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < rep.numeric.size(); ++i) {
    const State& s = rep.numeric[i];
    os << rep.x[i] << ',' << s.h << ',' << s.u << ',' << s.a << ',';
    if (rep.exact.empty()) {
      os << ",,\n";
    } else {
      const State& e = rep.exact[i];
      os << e.h << ',' << e.u << ',' << e.a << '\n';
    }
  }
}

struct CsvProfile {
  std::vector<double> x;
  std::vector<State> numeric;
  std::vector<State> exact;
};

inline CsvProfile read_csv(std::istream& in) {
  CsvProfile p;
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "x,h,u,a,h_exact,u_exact,a_exact")
    throw Error(ErrorCode::ConfigError, "unexpected CSV header");
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 7) throw Error(ErrorCode::ConfigError, "CSV row needs 7 fields");
    p.x.push_back(detail::parse_double(f[0], "x"));
    p.numeric.push_back({detail::parse_double(f[1], "h"), detail::parse_double(f[2], "u"), detail::parse_double(f[3], "a")});
    if (!f[4].empty())
      p.exact.push_back(
          {detail::parse_double(f[4], "h_exact"), detail::parse_double(f[5], "u_exact"), detail::parse_double(f[6], "a_exact")});
  }
  return p;
}

/// Numeric points over the exact line, one panel each for h and u.
inline void write_gnuplot(std::ostream& os, const RunReport& rep, const std::string& csv_name) {
  const bool exact = !rep.exact.empty();
  os << "set datafile separator ','\n"
     << "set terminal pngcairo size 900,700\n"
     << "set output '" << rep.name << ".png'\n"
     << "set multiplot layout 2,1 title '" << rep.name << ", t = " << rep.t_end << ", N = " << rep.numeric.size()
     << "'\n"
     << "set key top right\n"
     << "set xlabel 'x'\n";
  const auto panel = [&](const char* label, int num_col, int ex_col) {
    os << "set ylabel '" << label << "'\n"
       << "plot '" << csv_name << "' using 1:" << num_col << " with points pt 7 ps 0.4 title 'Godunov'";
    if (exact) os << ", \\\n     '" << csv_name << "' using 1:" << ex_col << " with lines lw 2 title 'exact'";
    os << "\n";
  };
  panel("h", 2, 5);
  panel("u", 3, 6);
  os << "unset multiplot\n";
}

}  // namespace swe
