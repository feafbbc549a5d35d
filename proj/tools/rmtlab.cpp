// rmtlab: batch front end for the rmt library.
//
// Every output starts with "# config: <canonical-json>"; `rmtlab replay
// --input FILE` re-executes a run from that line alone.
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmt/rmt.hpp"

namespace {

using json = nlohmann::json;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string ensemble = "gue";
  std::size_t n = 100;
  std::size_t m_cols = 50;
  double beta = 2.0;
  std::string entry_law = "gaussian";
  std::uint64_t seed = 0;
  std::size_t reps = 1;
  std::string format = "csv";
  std::string kernel = "sine";
  std::vector<double> interval;  // empty: command default
  std::size_t nodes = 60;
  double t_end = 1.0;
  double dt = 1e-4;
  double q = 0.5;
  unsigned k_max = 8;
  unsigned k = 2;
  double step = 0.05;
  std::size_t m_max = 5;
  std::size_t bins = 50;
  bool density = false;
  double eta = 0.1;
  std::vector<std::size_t> sizes{100, 200, 400, 800};
  std::size_t snapshot_every = 1000;
  std::string init = "zeros";
  std::string input;
};

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["ensemble"] = c.ensemble;
  j["n"] = c.n;
  j["m_cols"] = c.m_cols;
  j["beta"] = c.beta;
  j["entry_law"] = c.entry_law;
  j["seed"] = c.seed;
  j["reps"] = c.reps;
  j["format"] = c.format;
  j["kernel"] = c.kernel;
  j["interval"] = c.interval;
  j["nodes"] = c.nodes;
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["q"] = c.q;
  j["k_max"] = c.k_max;
  j["k"] = c.k;
  j["step"] = c.step;
  j["m_max"] = c.m_max;
  j["bins"] = c.bins;
  j["density"] = c.density;
  j["eta"] = c.eta;
  j["sizes"] = c.sizes;
  j["snapshot_every"] = c.snapshot_every;
  j["init"] = c.init;
  j["input"] = c.input;
  return j;
}

RunConfig from_json(const json& j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.ensemble = j.at("ensemble").get<std::string>();
    c.n = j.at("n").get<std::size_t>();
    c.m_cols = j.at("m_cols").get<std::size_t>();
    c.beta = j.at("beta").get<double>();
    c.entry_law = j.at("entry_law").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.reps = j.at("reps").get<std::size_t>();
    c.format = j.at("format").get<std::string>();
    c.kernel = j.at("kernel").get<std::string>();
    c.interval = j.at("interval").get<std::vector<double>>();
    c.nodes = j.at("nodes").get<std::size_t>();
    c.t_end = j.at("t_end").get<double>();
    c.dt = j.at("dt").get<double>();
    c.q = j.at("q").get<double>();
    c.k_max = j.at("k_max").get<unsigned>();
    c.k = j.at("k").get<unsigned>();
    c.step = j.at("step").get<double>();
    c.m_max = j.at("m_max").get<std::size_t>();
    c.bins = j.at("bins").get<std::size_t>();
    c.density = j.at("density").get<bool>();
    c.eta = j.at("eta").get<double>();
    c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    c.snapshot_every = j.at("snapshot_every").get<std::size_t>();
    c.init = j.at("init").get<std::string>();
    c.input = j.at("input").get<std::string>();
  } catch (const json::exception& e) {
    throw usage_error(std::string("malformed config header: ") + e.what());
  }
  return c;
}

// ---- tables -----------------------------------------------------------------

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isfinite(v) ? format_double(v) : "null";
  }
  if (std::holds_alternative<std::string>(c)) return json(std::get<std::string>(c)).dump();
  return "null";
}

void write_table(std::ostream& os, const RunConfig& cfg, const Table& t) {
  os << "# config: " << to_json(cfg).dump() << '\n';
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? ", " : "") << json(t.columns[i]).dump() << ": " << json_cell(t.rows[r][i]);
    os << (r + 1 < t.rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

Cell I(std::size_t v) { return static_cast<std::int64_t>(v); }
Cell D(double v) { return v; }

// ---- inputs -----------------------------------------------------------------

// One value per line; for comma-separated lines the last field is taken.
// Comment lines and non-numeric lines (column headers) are skipped.
std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read input file: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto pos = line.find_last_of(',');
    const std::string field = pos == std::string::npos ? line : line.substr(pos + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      out.push_back(v);
    } catch (const std::exception&) {
      continue;
    }
  }
  if (out.empty()) throw usage_error("input file holds no values: " + path);
  return out;
}

rmt::EnsembleSpec ensemble_spec(const RunConfig& c) {
  rmt::EnsembleSpec s;
  try {
    s.kind = rmt::parse_ensemble_kind(c.ensemble);
    s.law = rmt::parse_entry_distribution(c.entry_law);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  if (c.n < 1) throw usage_error("--n must be >= 1");
  if (s.kind == rmt::EnsembleKind::wishart && c.m_cols < 1) throw usage_error("--m-cols must be >= 1");
  if (!(c.beta > 0.0)) throw usage_error("--beta must be positive");
  s.n = c.n;
  s.m = c.m_cols;
  s.beta = c.beta;
  return s;
}

std::pair<double, double> interval_or(const RunConfig& c, double lo, double hi) {
  if (c.interval.empty()) return {lo, hi};
  if (c.interval.size() != 2) throw usage_error("--interval takes two values");
  if (!(c.interval[0] < c.interval[1])) throw usage_error("--interval needs a < b");
  return {c.interval[0], c.interval[1]};
}

// Normalized spectra of `reps` independent draws (per-rep substreams), or the
// values of --input as a single sample.
std::vector<std::vector<double>> spectra(const RunConfig& c, unsigned threads) {
  if (!c.input.empty()) return {read_values(c.input)};
  const rmt::EnsembleSpec spec = ensemble_spec(c);
  const rmt::RngState base(c.seed);
  return rmt::parallel_map(c.reps, threads, [&](std::size_t r) {
    rmt::RngState rng = base.substream(r);
    return rmt::sample_spectrum(spec, rng).normalized();
  });
}

// ---- commands ---------------------------------------------------------------

Table cmd_sample(const RunConfig& c) {
  const rmt::EnsembleSpec spec = ensemble_spec(c);
  rmt::RngState rng(c.seed);
  const rmt::SpectralSample s = rmt::sample_spectrum(spec, rng);
  Table t{{"index", "value"}, {}};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) t.rows.push_back({I(i), D(s.eigenvalues[i])});
  return t;
}

Table cmd_histogram(const RunConfig& c, unsigned threads) {
  if (c.bins < 1) throw usage_error("--bins must be >= 1");
  std::vector<double> pooled;
  for (const auto& s : spectra(c, threads)) pooled.insert(pooled.end(), s.begin(), s.end());
  rmt::Binning b;
  b.bins = c.bins;
  b.density = c.density;
  if (!c.interval.empty()) {
    const auto [lo, hi] = interval_or(c, 0, 0);
    b.lo = lo;
    b.hi = hi;
  }
  const rmt::Histogram h = rmt::histogram(pooled, b);
  const auto heights = h.heights();
  Table t{{"lo", "hi", "count", "height"}, {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    t.rows.push_back({D(h.edges[i]), D(h.edges[i + 1]), I(h.counts[i]), D(heights[i])});
  return t;
}

Table cmd_moments(const RunConfig& c, unsigned threads) {
  const auto draws = spectra(c, threads);
  Table t{{"k", "mean", "variance", "reps"}, {}};
  for (unsigned k = 0; k <= c.k_max; ++k) {
    std::vector<double> v;
    for (const auto& s : draws) v.push_back(rmt::measure_moment(rmt::empirical_measure(s), static_cast<int>(k)));
    const rmt::MomentStats m = rmt::summarize(0, v);
    t.rows.push_back({I(k), D(m.mean), D(m.variance), I(m.reps)});
  }
  return t;
}

Table cmd_stieltjes(const RunConfig& c, unsigned threads) {
  if (!(c.eta > 0.0)) throw usage_error("--eta must be positive");
  if (!(c.step > 0.0)) throw usage_error("--step must be positive");
  const auto [lo, hi] = interval_or(c, -3.0, 3.0);
  const auto draws = spectra(c, threads);
  std::vector<rmt::EmpiricalMeasure> mus;
  for (const auto& s : draws) mus.push_back(rmt::empirical_measure(s));
  Table t{{"re_z", "im_z", "re_g", "im_g"}, {}};
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / c.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::complex<double> z(lo + c.step * static_cast<double>(i), c.eta);
    std::vector<double> re, im;
    for (const auto& mu : mus) {
      const auto g = rmt::stieltjes_transform(mu, z);
      re.push_back(g.real());
      im.push_back(g.imag());
    }
    const double nd = static_cast<double>(mus.size());
    t.rows.push_back({D(z.real()), D(z.imag()), D(rmt::pairwise_sum(re) / nd), D(rmt::pairwise_sum(im) / nd)});
  }
  return t;
}

Table cmd_variance_scan(const RunConfig& c, unsigned threads) {
  if (c.sizes.size() < 2) throw usage_error("--sizes needs at least two values");
  if (c.reps < 30) throw usage_error("variance-scan needs --reps >= 30");
  for (std::size_t n : c.sizes)
    if (n < 1) throw usage_error("--sizes entries must be >= 1");
  const rmt::EnsembleSpec spec = ensemble_spec(c);
  const rmt::VarianceScan scan =
      rmt::moment_variance_experiment(spec, c.k, c.sizes, c.reps, rmt::RngState(c.seed), threads);
  Table t{{"n", "k", "mean", "variance", "reps"}, {}};
  for (const auto& r : scan.rows) t.rows.push_back({I(r.n), I(c.k), D(r.mean), D(r.variance), I(r.reps)});
  t.rows.push_back({std::string("slope"), I(c.k), D(scan.slope), {}, {}});
  return t;
}

Table cmd_tracy_widom(const RunConfig& c, unsigned threads) {
  const auto [lo, hi] = interval_or(c, -8.0, 4.0);
  if (lo < -10.0 || hi > 6.0) throw usage_error("tracy-widom range must lie in [-10, 6]");
  if (!(c.step > 0.0)) throw usage_error("--step must be positive");
  if (c.nodes < 10) throw usage_error("--nodes must be >= 10");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / c.step + 1e-9)) + 1;
  const auto f = rmt::parallel_map(count, threads, [&](std::size_t i) {
    return rmt::tracy_widom_cdf(lo + c.step * static_cast<double>(i), c.nodes);
  });
  Table t{{"s", "F2"}, {}};
  for (std::size_t i = 0; i < count; ++i) t.rows.push_back({D(lo + c.step * static_cast<double>(i)), D(f[i])});
  return t;
}

rmt::Kernel kernel_from(const RunConfig& c) {
  if (c.kernel == "sine") return rmt::sine_kernel();
  if (c.kernel == "airy") return rmt::airy_kernel();
  if (c.kernel == "cd") return rmt::cd_kernel(static_cast<unsigned>(c.n));
  if (c.kernel == "bulk_cd") return rmt::bulk_scaled_cd(static_cast<unsigned>(std::max<std::size_t>(c.n, 2)));
  if (c.kernel == "edge_cd") return rmt::edge_scaled_cd(static_cast<unsigned>(c.n));
  throw usage_error("unknown kernel: " + c.kernel + " (sine, airy, cd, bulk_cd, edge_cd)");
}

Table cmd_gap(const RunConfig& c) {
  const auto [lo, hi] = interval_or(c, 0.0, 1.0);
  if (c.nodes < 10) throw usage_error("--nodes must be >= 10");
  const rmt::Kernel k = kernel_from(c);
  const auto a = rmt::gap_probabilities(k, lo, hi, c.nodes, c.m_max);
  Table t{{"m", "A_m"}, {}};
  for (std::size_t m = 0; m < a.size(); ++m) t.rows.push_back({I(m), D(a[m])});
  return t;
}

Table cmd_dyson(const RunConfig& c) {
  if (c.n < 1) throw usage_error("--n must be >= 1");
  if (!(c.beta > 0.0)) throw usage_error("--beta must be positive");
  if (!(c.dt > 0.0) || !(c.t_end >= 0.0)) throw usage_error("need --dt > 0 and --t-end >= 0");
  rmt::DysonInit init;
  if (c.init == "zeros")
    init = rmt::DysonInit::zeros_perturbed;
  else if (c.init == "sample")
    init = rmt::DysonInit::sample;
  else
    throw usage_error("--init must be zeros or sample");
  rmt::RngState rng(c.seed);
  const auto traj = rmt::dyson_simulate(c.n, c.beta, c.t_end, c.dt, rng, init, c.snapshot_every);
  Table t;
  t.columns.push_back("t");
  for (std::size_t i = 1; i <= c.n; ++i) t.columns.push_back("lambda_" + std::to_string(i));
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    std::vector<Cell> row{D(traj.times[s])};
    for (double x : traj.snapshots[s]) row.push_back(D(x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_lis(const RunConfig& c, unsigned threads) {
  if (c.n < 1) throw usage_error("--n must be >= 1");
  const rmt::RngState base(c.seed);
  const auto l = rmt::parallel_map(c.reps, threads, [&](std::size_t r) {
    rmt::RngState rng = base.substream(r);
    return rmt::lis_length(rmt::sample_permutation(c.n, rng));
  });
  Table t{{"rep", "n", "l"}, {}};
  for (std::size_t r = 0; r < c.reps; ++r) t.rows.push_back({I(r), I(c.n), I(l[r])});
  return t;
}

Table cmd_lpp(const RunConfig& c, unsigned threads) {
  if (c.n < 1 || c.m_cols < 1) throw usage_error("--n and --m-cols must be >= 1");
  if (!(c.q > 0.0 && c.q < 1.0)) throw usage_error("--q must lie in (0, 1)");
  const rmt::RngState base(c.seed);
  const auto g = rmt::parallel_map(c.reps, threads, [&](std::size_t r) {
    rmt::RngState rng = base.substream(r);
    return rmt::lpp_grid(rmt::sample_geometric_matrix(c.n, c.m_cols, c.q, rng));
  });
  Table t{{"rep", "rows", "cols", "q", "G"}, {}};
  for (std::size_t r = 0; r < c.reps; ++r) t.rows.push_back({I(r), I(c.n), I(c.m_cols), D(c.q), I(g[r])});
  return t;
}

Table run(const RunConfig& c, unsigned threads) {
  if (c.format != "csv" && c.format != "json") throw usage_error("--format must be csv or json");
  if (c.reps < 1) throw usage_error("--reps must be >= 1");
  if (c.command == "sample") return cmd_sample(c);
  if (c.command == "histogram") return cmd_histogram(c, threads);
  if (c.command == "moments") return cmd_moments(c, threads);
  if (c.command == "stieltjes") return cmd_stieltjes(c, threads);
  if (c.command == "variance-scan") return cmd_variance_scan(c, threads);
  if (c.command == "tracy-widom") return cmd_tracy_widom(c, threads);
  if (c.command == "gap") return cmd_gap(c);
  if (c.command == "dyson") return cmd_dyson(c);
  if (c.command == "lis") return cmd_lis(c, threads);
  if (c.command == "lpp") return cmd_lpp(c, threads);
  throw usage_error("unknown command: " + c.command);
}

RunConfig config_from_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read input file: " + path);
  std::string line;
  std::getline(in, line);
  const std::string tag = "# config: ";
  if (line.rfind(tag, 0) != 0) throw usage_error("input has no config header: " + path);
  try {
    return from_json(json::parse(line.substr(tag.size())));
  } catch (const json::parse_error& e) {
    throw usage_error(std::string("config header is not valid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtlab: random-matrix spectral statistics"};
  app.set_config("--config", "", "key=value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig cfg;
  unsigned threads = 1;
  std::string out;

  app.add_option("--ensemble", cfg.ensemble, "wigner, goe, gue, wishart, beta");
  app.add_option("--n", cfg.n, "matrix size, permutation length, or LPP rows");
  app.add_option("--m-cols", cfg.m_cols, "Wishart columns or LPP columns");
  app.add_option("--beta", cfg.beta, "Dyson index");
  app.add_option("--entry-law", cfg.entry_law, "gaussian, rademacher, uniform");
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--reps", cfg.reps, "Monte-Carlo repetitions");
  app.add_option("--out", out, "output path (stdout if omitted)");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--kernel", cfg.kernel, "sine, airy, cd, bulk_cd, edge_cd");
  app.add_option("--interval", cfg.interval, "interval endpoints a b")->expected(2);
  app.add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes");
  app.add_option("--t-end", cfg.t_end, "Dyson end time");
  app.add_option("--dt", cfg.dt, "Dyson time step");
  app.add_option("--q", cfg.q, "geometric weight parameter");
  app.add_option("--k-max", cfg.k_max, "largest moment order");
  app.add_option("--k", cfg.k, "moment order for variance-scan");
  app.add_option("--step", cfg.step, "grid step (tracy-widom, stieltjes)");
  app.add_option("--m-max", cfg.m_max, "largest gap count");
  app.add_option("--bins", cfg.bins, "histogram bins");
  app.add_flag("--density", cfg.density, "histogram density mode");
  app.add_option("--eta", cfg.eta, "imaginary part of z (stieltjes)");
  app.add_option("--sizes", cfg.sizes, "sizes for variance-scan")->delimiter(',');
  app.add_option("--snapshot-every", cfg.snapshot_every, "Dyson snapshot cadence in steps");
  app.add_option("--init", cfg.init, "Dyson start: zeros or sample");
  app.add_option("--input", cfg.input, "input values file; for replay, a previous output");
  app.add_option("--threads", threads, "worker threads (0 = all cores); output does not depend on it");

  const std::pair<const char*, const char*> commands[] = {
      {"sample", "eigenvalues of one draw"},
      {"histogram", "binned normalized spectrum over --reps draws, or of --input"},
      {"moments", "mean and variance of <L_N, x^k> for k = 0..k-max"},
      {"stieltjes", "averaged Stieltjes transform along Im z = eta"},
      {"variance-scan", "Var <L_N, x^k> across --sizes and its log-log slope"},
      {"tracy-widom", "F_2 on a grid"},
      {"gap", "probabilities of m points of a kernel process in --interval"},
      {"dyson", "Dyson Brownian motion trajectory"},
      {"lis", "longest increasing subsequence of uniform permutations"},
      {"lpp", "last passage time on geometric grids"},
      {"replay", "re-run the configuration recorded in --input"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "replay") {
      if (cfg.input.empty()) throw usage_error("replay needs --input");
      cfg = config_from_header(cfg.input);
    }
    const Table t = run(cfg, threads);
    std::ostringstream buf;
    write_table(buf, cfg, t);
    if (out.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw usage_error("cannot write output file: " + out);
      f << buf.str();
      if (!f) throw usage_error("write failed: " + out);
    }
  } catch (const usage_error& e) {
    std::cerr << "rmtlab: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rmtlab: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "rmtlab: " << e.what() << '\n';
    return 2;
  } catch (const rmt::numerical_error& e) {
    std::cerr << "rmtlab: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "rmtlab: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "rmtlab: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
