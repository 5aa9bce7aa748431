#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config_file.hpp"
#include "json.hpp"
#include "swe/swe.hpp"

namespace {

using swe::ConstructionTag;
using swe::ProblemConfig;
using swe::RunReport;
using swe::State;

constexpr int kExitFailure = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitConvergence = 3;

std::string fmt(const State& s) {
  std::ostringstream os;
  os << std::setprecision(17) << "(" << s.h << ", " << s.u << ", " << s.a << ")";
  return os.str();
}

State parse_state_arg(const std::string& s) { return swe::detail::parse_state(s, "state"); }

// Flag overrides shared by `run` and `test`.
struct Overrides {
  std::optional<std::size_t> n;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::string prefer;
  std::string out_dir;
  std::string csv, json, plot;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of cells")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    cmd->add_option("--cfl", cfl, "CFL number in (0, 1]");
    cmd->add_option("--t-end", t_end, "final time");
    cmd->add_option("--prefer", prefer, "solver tried first, or a comma list (a1..b3)");
    cmd->add_option("--out", out_dir, "directory for <name>.csv, <name>.json and <name>.gp");
    cmd->add_option("--csv", csv, "CSV output path");
    cmd->add_option("--json", json, "JSON summary path");
    cmd->add_option("--plot", plot, "gnuplot script path");
  }

  void apply(ProblemConfig& c) const {
    if (n) c.n = *n;
    if (cfl) c.cfl = *cfl;
    if (t_end) c.t_end = *t_end;
    if (!prefer.empty()) c.preference = swe::preference_with_first(swe::parse_preference(prefer));
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path base = std::filesystem::path(out_dir) / c.name;
      c.csv_path = base.string() + ".csv";
      c.json_path = base.string() + ".json";
      c.plot_path = base.string() + ".gp";
    }
    if (!csv.empty()) c.csv_path = csv;
    if (!json.empty()) c.json_path = json;
    if (!plot.empty()) c.plot_path = plot;
  }
};

nlohmann::json summary_json(const ProblemConfig& c, const RunReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["n"] = c.n;
  j["t_end"] = c.t_end;
  j["cfl"] = c.cfl;
  j["g"] = c.g;
  std::vector<std::string> pref;
  for (auto t : c.preference) pref.emplace_back(swe::to_string(t));
  j["preference"] = pref;
  j["steps"] = r.advance.steps;
  j["max_courant"] = r.advance.max_courant;
  j["warnings"] = r.advance.warnings;
  j["norm"] = {{"components", std::string(swe::to_string(r.norm.components))}, {"weighted", r.norm.weighted}};
  j["l1_error"] = r.l1_error ? nlohmann::json(*r.l1_error) : nlohmann::json(nullptr);
  if (r.exact_tag) {
    j["exact_solution"] = {{"tag", std::string(swe::to_string(*r.exact_tag))}, {"mirrored", r.exact_mirrored}};
  }
  if (r.classification) {
    j["classification"] = {{"exists", r.classification->exists},
                           {"verdict", std::string(swe::to_string(r.classification->uniqueness))}};
    nlohmann::json d = nlohmann::json::array();
    for (const auto& s : r.distances) d.push_back({{"tag", std::string(swe::to_string(s.tag))}, {"l1", s.l1}});
    j["distance_to_solutions"] = d;
  }
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

void write_outputs(const ProblemConfig& c, const RunReport& r) {
  const auto open = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw swe::Error(swe::ErrorCode::ConfigError, "cannot write '" + path + "'");
    return f;
  };
  if (!c.csv_path.empty()) {
    auto f = open(c.csv_path);
    swe::write_csv(f, r);
  }
  if (!c.json_path.empty()) {
    auto f = open(c.json_path);
    f << std::setw(2) << summary_json(c, r) << "\n";
  }
  if (!c.plot_path.empty()) {
    const std::string csv_name =
        c.csv_path.empty() ? r.name + ".csv" : std::filesystem::path(c.csv_path).filename().string();
    auto f = open(c.plot_path);
    swe::write_gnuplot(f, r, csv_name);
  }
}

void print_report(const ProblemConfig& c, const RunReport& r) {
  std::cout << std::setprecision(10);
  std::cout << r.name << ": N=" << c.n << " t=" << c.t_end << " cfl=" << c.cfl << " steps=" << r.advance.steps
            << " max_courant=" << r.advance.max_courant << "\n";
  for (const auto& w : r.advance.warnings) std::cout << "warning: " << w << "\n";
  if (r.exact_tag)
    std::cout << "exact solution: " << swe::to_string(*r.exact_tag) << (r.exact_mirrored ? " (mirrored)" : "")
              << "\n";
  if (r.classification)
    std::cout << "classification: " << swe::to_string(r.classification->uniqueness) << "\n";
  if (r.l1_error)
    std::cout << "l1_error [" << swe::to_string(r.norm.components) << (r.norm.weighted ? ", dx" : "")
              << "]: " << *r.l1_error << "\n";
  if (r.distances.size() > 1)
    for (const auto& d : r.distances) std::cout << "  distance to " << swe::to_string(d.tag) << ": " << d.l1 << "\n";
  std::cout << "wall time: " << r.wall_seconds << " s\n";
}

int execute(const ProblemConfig& c) {
  const RunReport r = swe::run(c);
  write_outputs(c, r);
  print_report(c, r);
  return 0;
}

void print_solution(const swe::RiemannSolution& s) {
  std::cout << "  " << swe::to_string(s.tag) << (s.mirrored ? " (mirrored)" : "") << "\n";
  std::cout << std::setprecision(17);
  for (const auto& w : s.waves) std::cout << "    " << w << "\n";
  for (const auto& n : s.named) std::cout << "    " << n.name << " = " << fmt(n.state) << "\n";
}

int cmd_classify(const State& L, const State& R, double g_value) {
  const swe::Gravity g(g_value);
  const auto rep = swe::classify(L, R, g);
  std::cout << "exists: " << (rep.exists ? "yes" : "no") << "\n";
  std::cout << "verdict: " << swe::to_string(rep.uniqueness) << (rep.mirrored ? " (mirrored problem)" : "") << "\n";
  const auto& e = rep.evidence;
  std::cout << std::setprecision(17);
  const auto show = [](const char* name, const auto& v) {
    if (v) std::cout << "  " << name << " = " << *v << "\n";
  };
  std::cout << "evidence:\n";
  if (e.ul_sharp_o) std::cout << "  UL^#o = " << fmt(*e.ul_sharp_o) << "\n";
  if (e.ul_o_sharp) std::cout << "  UL^o# = " << fmt(*e.ul_o_sharp) << "\n";
  show("Phi2(UL^#o)", e.phi2_ul_sharp_o);
  show("Phi2(UL^o#)", e.phi2_ul_o_sharp);
  if (e.u1_o) std::cout << "  U1^o = " << fmt(*e.u1_o) << "\n";
  if (e.u2_sharp) std::cout << "  U2^# = " << fmt(*e.u2_sharp) << "\n";
  show("Phi2(U1^o)", e.phi2_u1_o);
  show("Phi2(U2^#)", e.phi2_u2_sharp);
  if (e.k_o) std::cout << "  K^o = " << fmt(*e.k_o) << "\n";
  show("Phi2(K^o)", e.phi2_k_o);
  std::cout << "solutions: " << rep.solutions.size() << "\n";
  for (const auto& [tag, s] : rep.solutions) print_solution(s);
  return rep.exists ? 0 : kExitNoSolution;
}

int cmd_table(const std::string& id) {
  const auto& t = swe::table_fixture(id);
  const auto p = swe::level_pair(t.left, t.a_target, swe::Gravity{});
  std::cout << "table " << t.id << ": UL = " << fmt(t.left) << ", target level " << t.a_target << "\n";
  if (p.regime == swe::Regime::A) {
    std::cout << "UL^#o = " << fmt(p.first) << "\nUL^o# = " << fmt(p.second) << "\n";
  } else {
    std::cout << "U1^o = " << fmt(p.first) << "\nU2^# = " << fmt(p.second) << "\n";
  }
  return 0;
}

// Runs Tests 2 and 3 at N = 500, 1000, 2000 under every norm composition and
// reports the worst relative deviation from the reference errors.
int cmd_calibrate() {
  struct Ref {
    int test;
    std::array<double, 3> err;
  };
  const std::array<Ref, 2> refs{{{2, {0.012644, 0.0087928, 0.0063773}}, {3, {0.01813, 0.0076434, 0.0035277}}}};
  const std::array<std::size_t, 3> sizes{500, 1000, 2000};
  std::vector<RunReport> runs;
  for (const auto& r : refs)
    for (std::size_t n : sizes) {
      ProblemConfig c = swe::test_fixture(r.test);
      c.n = n;
      runs.push_back(swe::run(c));
    }
  std::cout << std::setprecision(6);
  std::optional<swe::L1Norm> best;
  double best_dev = 0.0;
  for (auto comp : {swe::NormComponents::HU, swe::NormComponents::H, swe::NormComponents::HQ})
    for (bool weighted : {true, false}) {
      const swe::L1Norm norm{comp, weighted};
      double worst = 0.0;
      std::cout << swe::to_string(comp) << (weighted ? " *dx" : "    ") << ":";
      for (std::size_t k = 0; k < runs.size(); ++k) {
        const double e = swe::l1_error(runs[k].numeric, runs[k].exact, runs[k].dx, norm);
        const double ref = refs[k / 3].err[k % 3];
        worst = std::max(worst, std::abs(e / ref - 1.0));
        std::cout << " " << e;
      }
      std::cout << "  worst deviation " << worst << "\n";
      if (!best || worst < best_dev) {
        best = norm;
        best_dev = worst;
      }
    }
  std::cout << "best: " << swe::to_string(best->components) << (best->weighted ? " *dx" : "") << "\n";
  std::cout << "frozen: " << swe::to_string(swe::kCalibratedNorm.components)
            << (swe::kCalibratedNorm.weighted ? " *dx" : "") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Riemann solver and well-balanced Godunov scheme for shallow water over a step"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a config file (or a built-in fixture)");
  std::string config_path;
  int run_test = 0;
  std::string run_table;
  Overrides run_over;
  run->add_option("config", config_path, "INI config file");
  run->add_option("--test", run_test, "start from built-in test 1..7")->check(CLI::Range(1, 7));
  run->add_option("--table", run_table, "print a contact-endpoint table a1..a5, b1..b3 instead of running");
  run_over.attach(run);

  auto* test = app.add_subcommand("test", "run built-in test 1..7");
  int test_id = 0;
  Overrides test_over;
  test->add_option("id", test_id, "test number")->required()->check(CLI::Range(1, 7));
  test_over.attach(test);

  auto* table = app.add_subcommand("table", "contact endpoints of table a1..a5, b1..b3");
  std::string table_id;
  table->add_option("id", table_id, "table id")->required();

  auto* cls = app.add_subcommand("classify", "existence and multiplicity of solutions");
  std::string left, right;
  double g_value = 9.8;
  cls->add_option("--left", left, "h,u,a")->required();
  cls->add_option("--right", right, "h,u,a")->required();
  cls->add_option("--g", g_value, "gravity");

  auto* cal = app.add_subcommand("calibrate", "compare L1 norm compositions on Tests 2 and 3");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (!run_table.empty()) return cmd_table(run_table);
      ProblemConfig c;
      if (run_test != 0 && !config_path.empty()) {
        c = swe::test_fixture(run_test);
        std::ifstream in(config_path);
        if (!in) throw swe::Error(swe::ErrorCode::ConfigError, "cannot open config '" + config_path + "'");
        c = swe::tools::load_config(in, c);
      } else if (run_test != 0) {
        c = swe::test_fixture(run_test);
      } else if (!config_path.empty()) {
        c = swe::tools::load_config_file(config_path);
      } else {
        throw swe::Error(swe::ErrorCode::ConfigError, "run needs a config file or --test");
      }
      run_over.apply(c);
      return execute(c);
    }
    if (*test) {
      ProblemConfig c = swe::test_fixture(test_id);
      test_over.apply(c);
      return execute(c);
    }
    if (*table) return cmd_table(table_id);
    if (*cls) return cmd_classify(parse_state_arg(left), parse_state_arg(right), g_value);
    if (*cal) return cmd_calibrate();
  } catch (const swe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == swe::ErrorCode::NoSolution) return kExitNoSolution;
    if (e.code() == swe::ErrorCode::ConvergenceFailure) return kExitConvergence;
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
