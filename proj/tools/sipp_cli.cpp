#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sipp/checks.hpp"
#include "sipp/coverage.hpp"
#include "sipp/discrete_analogs.hpp"
#include "sipp/fixed_points.hpp"
#include "sipp/samplers.hpp"
#include "sipp/special_functions.hpp"
#include "sipp/tv_distance.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// A simple table: fixed header plus rows of preformatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json meta = json::object();
};

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) {
        // Numeric cells become JSON numbers.
        char* end = nullptr;
        double v = std::strtod(r[i].c_str(), &end);
        if (!r[i].empty() && end && *end == '\0') {
          obj[t.header[i]] = v;
        } else {
          obj[t.header[i]] = r[i];
        }
      }
      rows.push_back(obj);
    }
    json out = t.meta;
    out["rows"] = rows;
    os << out.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : t.meta.items()) os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
}

struct Output {
  std::string path;
  std::string format = "csv";

  void emit(const Table& t) const {
    if (path.empty() || path == "-") {
      write_table(t, format, std::cout);
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open output file " + path);
    write_table(t, format, f);
  }
};

struct SeedOptions {
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  bool fresh = false;

  std::uint64_t resolve() {
    if (fresh) {
      std::random_device rd;
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    return seed;
  }
};

void add_seed_options(CLI::App* cmd, SeedOptions& s) {
  cmd->add_option("--seed", s.seed, "random seed");
  cmd->add_option("--stream", s.stream, "substream index");
  cmd->add_flag("--fresh-seed", s.fresh, "draw a nondeterministic seed (echoed in the output)");
}

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "output path (default stdout)");
  cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw UsageError("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// table --------------------------------------------------------------------

struct TableArgs {
  std::string function;
  double theta = 1.0;
  double max = 10.0;
  double step = 0.01;
  std::string betas = "0.5263157894736842,0.5,0.3333333333333333,0.2857142857142857,0.25";
  std::string method = "auto";
  Output out;
};

int run_table(TableArgs& a) {
  Table t;
  if (a.function == "h") {
    t.header = {"theta", "beta", "H", "error_bound", "method"};
    for (double beta : parse_list(a.betas)) {
      sipp::TVReport r;
      bool explicit_route = a.method == "explicit" || (a.method == "auto" && a.theta == 1.0);
      if (explicit_route) {
        if (a.theta != 1.0) throw UsageError("the explicit route needs theta = 1");
        r = sipp::h1_explicit(beta);
      } else {
        r = sipp::h_theta(sipp::Theta(a.theta), beta);
      }
      t.rows.push_back({num(a.theta), num(beta), num(r.value), num(r.error_bound),
                        sipp::method_name(r.method)});
    }
    a.out.emit(t);
    return 0;
  }
  if (!(a.step > 0.0) || !(a.max > 0.0) || a.max > sipp::kSpecialFunctionMax) {
    throw UsageError("need step > 0 and 0 < max <= 50");
  }
  const long n = std::lround(a.max / a.step);
  if (std::abs(n * a.step - a.max) > 1e-9 * a.max) throw UsageError("max must be a multiple of step");
  t.header = {"u", "value", "error_bound"};
  t.meta["function"] = a.function;
  t.meta["step"] = a.step;
  t.meta["max"] = a.max;
  if (a.function == "rho") {
    const std::string err = num(sipp::cached_rho_table().error_bound);
    for (long i = 0; i <= n; ++i) {
      double u = i * a.step;
      t.rows.push_back({num(u), num(sipp::dickman_rho(u)), err});
    }
  } else if (a.function == "omega") {
    const std::string err = num(sipp::cached_omega_table().error_bound);
    for (long i = 0; i <= n; ++i) {
      double u = i * a.step;
      if (u < 1.0) continue;
      t.rows.push_back({num(u), num(sipp::buchstab_omega(u)), err});
    }
  } else if (a.function == "g") {
    sipp::Theta th(a.theta);
    t.meta["theta"] = a.theta;
    const std::string err = num(sipp::cached_g_table(th).error_bound);
    for (long i = 0; i <= n; ++i) {
      double x = i * a.step;
      if (x == 0.0 && a.theta < 1.0) continue;  // density is infinite at 0
      t.rows.push_back({num(x), num(sipp::density_g(th, x)), err});
    }
  } else {
    throw UsageError("unknown function " + a.function);
  }
  a.out.emit(t);
  return 0;
}

// sample -------------------------------------------------------------------

struct SampleArgs {
  std::string sampler;
  double theta = 1.0;
  std::uint64_t n = 5;
  double eps = 1e-6;
  std::uint64_t count = 1;
  std::uint64_t ceiling = 1000000000ULL;
  SeedOptions seed;
  std::string out;
};

int run_sample(SampleArgs& a) {
  const std::uint64_t seed = a.seed.resolve();
  sipp::RngStream rng(seed, a.seed.stream);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out);
    if (!file) throw UsageError("cannot open output file " + a.out);
    os = &file;
  }
  *os << "# sampler=" << a.sampler << " theta=" << num(a.theta) << " seed=" << seed
      << " stream=" << a.seed.stream << "\n";
  sipp::Theta th(a.theta);
  auto line = [&](const auto& values) {
    bool first = true;
    for (auto v : values) {
      *os << (first ? "" : ",");
      if constexpr (std::is_floating_point_v<decltype(v)>) {
        *os << num(v);
      } else {
        *os << v;
      }
      first = false;
    }
    *os << "\n";
  };
  for (std::uint64_t k = 0; k < a.count; ++k) {
    if (a.sampler == "sipp") {
      line(sipp::sample_sipp_unit(th, a.eps, rng).points());
    } else if (a.sampler == "gem") {
      line(sipp::sample_gem(th, a.n, rng).entries);
    } else if (a.sampler == "pd") {
      line(sipp::sample_pd(th, a.n, std::min(a.eps, 1e-3), rng).ranked.entries());
    } else if (a.sampler == "moran") {
      auto m = sipp::sample_moran(th, a.eps, rng);
      line(m.points.empty() ? std::vector<double>{} : sipp::moran_ranked(m, a.n).entries());
    } else if (a.sampler == "ewens") {
      line(sipp::ewens_cycle_counts(th, a.n, rng).counts);
    } else if (a.sampler == "mapping") {
      line(sipp::random_mapping_components(a.n, rng));
    } else if (a.sampler == "factor") {
      auto f = sipp::factor_uniform_integer(a.ceiling, rng);
      std::vector<std::uint64_t> row{f.value};
      row.insert(row.end(), f.primes.begin(), f.primes.end());
      line(row);
    } else {
      throw UsageError("unknown sampler " + a.sampler);
    }
  }
  return 0;
}

// check --------------------------------------------------------------------

struct CheckArgs {
  std::string suite;
  int n = 6;
  SeedOptions seed;
  Output out;
};

int run_check(CheckArgs& a) {
  const std::uint64_t seed = a.seed.resolve();
  std::vector<sipp::CheckRow> rows;
  auto append = [&](std::vector<sipp::CheckRow> r) { rows.insert(rows.end(), r.begin(), r.end()); };
  if (a.suite == "golden" || a.suite == "all") append(sipp::golden_suite());
  if (a.suite == "oracle" || a.suite == "all") append(sipp::oracle_suite(a.n));
  if (a.suite == "statistical" || a.suite == "all") append(sipp::statistical_suite(seed));
  Table t;
  t.header = {"suite", "check", "value", "reference", "tolerance", "status"};
  t.meta["seed"] = seed;
  t.meta["stream"] = a.seed.stream;
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.pass;
    t.rows.push_back({r.suite, r.name, num(r.value), num(r.reference), num(r.tolerance),
                      r.pass ? "pass" : "FAIL"});
  }
  a.out.emit(t);
  return ok ? 0 : kExitFailedCheck;
}

// coverage -----------------------------------------------------------------

struct CoverageArgs {
  double theta = 3.0;
  double eps = 1e-3;
  double delta = 0.0;
  std::uint64_t trials = 1000;
  double target = 1.0;
  SeedOptions seed;
};

int run_coverage(CoverageArgs& a) {
  const std::uint64_t seed = a.seed.resolve();
  sipp::RngStream rng(seed, a.seed.stream);
  double delta = a.delta > 0.0 ? a.delta : a.eps / 4.0;
  auto f = sipp::estimate_f(sipp::Theta(a.theta), a.eps, delta, a.trials, rng, a.target);
  json out = {{"lower", f.lower},
              {"upper", f.upper},
              {"ci_halfwidth", f.ci_halfwidth},
              {"t_eps_bound", f.t_eps_bound},
              {"theta", a.theta},
              {"eps", a.eps},
              {"delta", delta},
              {"trials", a.trials},
              {"target", a.target},
              {"seed", seed},
              {"stream", a.seed.stream}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

// fixed-point --------------------------------------------------------------

struct FixedPointArgs {
  std::string pattern = "1,repeat";
  double tol = 1e-12;
  std::int64_t n_max = 100000;
  Output out{"", "json"};
};

// "a,b,c,repeat" is the periodic pattern d(i) = (a,b,c)[i mod 3]. Without
// "repeat" the list gives d(-1), d(-2), ... and the last value continues.
sipp::DisplacementPermutation parse_pattern(std::string text) {
  bool periodic = false;
  const std::string suffix = "repeat";
  if (text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
    periodic = true;
    text.erase(text.size() - suffix.size());
  }
  std::vector<int> d;
  for (double v : parse_list(text)) {
    if (v != std::floor(v)) throw UsageError("displacements must be integers");
    d.push_back(static_cast<int>(v));
  }
  if (periodic) return sipp::DisplacementPermutation::periodic(d);
  std::vector<int> table(d.rbegin(), d.rend());
  return sipp::DisplacementPermutation::table(-static_cast<std::int64_t>(d.size()), table, d.back());
}

int run_fixed_point(FixedPointArgs& a) {
  auto perm = parse_pattern(a.pattern);
  auto r = sipp::entrance_solution(perm, a.tol, a.n_max);
  Table t;
  t.header = {"j", "ratio"};
  t.meta["pattern"] = perm.describe();
  t.meta["certificate"] = r.certificate;
  t.meta["factors"] = r.factors;
  t.meta["forward_ratio"] = r.forward_ratio;
  t.meta["converged"] = r.converged;
  for (std::size_t j = 0; j < r.state.ratios.size(); ++j) {
    t.rows.push_back({std::to_string(j + 1), num(r.state.ratios[j])});
  }
  a.out.emit(t);
  if (!r.converged) {
    std::cerr << "error: " << r.diagnostic << "\n";
    return kExitNumeric;
  }
  return 0;
}

// experiment ---------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  double scale = 1.0;
  SeedOptions seed;
  Output out;
};

int run_experiment(ExperimentArgs& a) {
  const std::uint64_t seed = a.seed.resolve();
  auto rows = sipp::run_experiment(a.name, seed, a.scale);
  Table t;
  t.header = {"experiment", "n", "parameter", "statistic", "value", "tolerance", "pass"};
  t.meta["seed"] = seed;
  t.meta["stream"] = a.seed.stream;
  for (const auto& r : rows) {
    t.rows.push_back({r.experiment, std::to_string(r.n), r.parameter, r.statistic, num(r.value),
                      std::isnan(r.tolerance) ? "" : num(r.tolerance), r.pass ? "true" : "false"});
  }
  a.out.emit(t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-invariant Poisson process toolkit"};
  app.require_subcommand(1);

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "tabulate rho, omega, g or H");
  table_cmd->add_option("function", table.function, "rho | omega | g | h")
      ->required()
      ->check(CLI::IsMember({"rho", "omega", "g", "h"}));
  table_cmd->add_option("--theta", table.theta, "theta > 0");
  table_cmd->add_option("--max", table.max, "last grid point");
  table_cmd->add_option("--step", table.step, "grid step");
  table_cmd->add_option("--betas", table.betas, "comma-separated beta values (h only)");
  table_cmd->add_option("--method", table.method, "auto | explicit | general (h only)")
      ->check(CLI::IsMember({"auto", "explicit", "general"}));
  add_output_options(table_cmd, table.out);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "draw samples, one record per line");
  sample_cmd->add_option("sampler", sample.sampler, "sipp | gem | pd | moran | ewens | mapping | factor")
      ->required()
      ->check(CLI::IsMember({"sipp", "gem", "pd", "moran", "ewens", "mapping", "factor"}));
  sample_cmd->add_option("--theta", sample.theta, "theta > 0");
  sample_cmd->add_option("--n", sample.n, "coordinates or size");
  sample_cmd->add_option("--eps", sample.eps, "lower cutoff");
  sample_cmd->add_option("--count", sample.count, "number of records");
  sample_cmd->add_option("--ceiling", sample.ceiling, "integer ceiling (factor only)");
  sample_cmd->add_option("--out", sample.out, "output path (default stdout)");
  add_seed_options(sample_cmd, sample.seed);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "run a check suite");
  check_cmd->add_option("suite", check.suite, "golden | statistical | oracle | all")
      ->required()
      ->check(CLI::IsMember({"golden", "statistical", "oracle", "all"}));
  check_cmd->add_option("--n", check.n, "largest n for exact cycle-law oracles (<= 8)")
      ->check(CLI::Range(1, 8));
  add_seed_options(check_cmd, check.seed);
  add_output_options(check_cmd, check.out);

  CoverageArgs coverage;
  auto* coverage_cmd = app.add_subcommand("coverage", "estimate P(target in A(theta))");
  coverage_cmd->add_option("--theta", coverage.theta, "theta > 0");
  coverage_cmd->add_option("--eps", coverage.eps, "dust cutoff in (0, 0.1]");
  coverage_cmd->add_option("--delta", coverage.delta, "grid step (default eps/4)");
  coverage_cmd->add_option("--trials", coverage.trials, "number of trials");
  coverage_cmd->add_option("--target", coverage.target, "target point");
  add_seed_options(coverage_cmd, coverage.seed);

  FixedPointArgs fixed;
  auto* fixed_cmd = app.add_subcommand("fixed-point", "entrance solution of a periodic displacement pattern");
  fixed_cmd->add_option("--pattern", fixed.pattern, "comma-separated displacements, optional \"repeat\" suffix");
  fixed_cmd->add_option("--tol", fixed.tol, "Hilbert-metric tolerance");
  fixed_cmd->add_option("--n-max", fixed.n_max, "maximum number of matrix factors");
  add_output_options(fixed_cmd, fixed.out);

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "run a trend experiment");
  experiment_cmd->add_option("name", experiment.name, "experiment name")
      ->required()
      ->check(CLI::IsMember(sipp::experiment_names()));
  experiment_cmd->add_option("--scale", experiment.scale, "fraction of the default draw counts");
  add_seed_options(experiment_cmd, experiment.seed);
  add_output_options(experiment_cmd, experiment.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (table_cmd->parsed()) return run_table(table);
    if (sample_cmd->parsed()) return run_sample(sample);
    if (check_cmd->parsed()) return run_check(check);
    if (coverage_cmd->parsed()) return run_coverage(coverage);
    if (fixed_cmd->parsed()) return run_fixed_point(fixed);
    if (experiment_cmd->parsed()) return run_experiment(experiment);
  } catch (const sipp::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
