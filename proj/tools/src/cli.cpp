#include "ssc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ssc/certify.hpp"
#include "ssc/compound.hpp"
#include "ssc/error.hpp"
#include "ssc/graphs.hpp"
#include "ssc/matrix_io.hpp"
#include "ssc/stepmodel.hpp"

namespace ssc::cli {

void RunReport::config(std::string key, std::string value) { config_.emplace_back(std::move(key), std::move(value)); }

void RunReport::result(std::string key, std::string value) {
  results_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> RunReport::find(const std::string& key) const {
  for (const auto* list : {&config_, &results_})
    for (const auto& [k, v] : *list)
      if (k == key) return v;
  return std::nullopt;
}

void RunReport::print(std::ostream& out, bool table) const {
  if (!table) {
    out << "command: " << command_ << '\n';
    for (const auto& [k, v] : config_) out << k << ": " << v << '\n';
    for (const auto& [k, v] : results_) out << k << ": " << v << '\n';
    out << "duration_s: " << format_double(duration_) << '\n';
    return;
  }
  std::size_t width = 8;
  for (const auto* list : {&config_, &results_})
    for (const auto& kv : *list) width = std::max(width, kv.first.size());
  auto section = [&](const char* title, const std::vector<std::pair<std::string, std::string>>& rows) {
    if (rows.empty()) return;
    out << title << '\n';
    for (const auto& [k, v] : rows) out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
  };
  out << "$ " << command_ << '\n';
  section("config", config_);
  section("results", results_);
  out << "duration " << format_double(duration_) << " s\n";
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SSC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  std::istringstream s(env);
  if (!(s >> seed) || !s.eof()) throw InputError(std::string("SSC_SEED is not an unsigned integer: ") + env);
  return seed;
}

namespace {

template <typename Seq, typename F>
std::string join(const Seq& seq, F&& render, const char* sep = ",") {
  std::string out;
  bool first = true;
  for (const auto& x : seq) {
    if (!first) out += sep;
    out += render(x);
    first = false;
  }
  return out;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "n/a"; }

std::string edge_list(const Graph& g) {
  if (g.edge_count() == 0) return "(none)";
  return join(
      g.edges(), [](const auto& e) { return std::to_string(e.first + 1) + "-" + std::to_string(e.second + 1); }, " ");
}

std::vector<int> sorted_degrees(const Graph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

std::string degree_string(const Graph& g) {
  return join(sorted_degrees(g), [](int d) { return std::to_string(d); });
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

struct Globals {
  bool table = false;
};

// Each command fills a report and returns its exit code.

int cmd_spectrum(RunReport& report, const std::string& path) {
  report.config("file", path);
  auto in = open_input(path);
  const Graph g = read_graph(in);
  const auto s = spectral_sum(g);
  report.result("n", std::to_string(g.order()));
  report.result("edges", std::to_string(g.edge_count()));
  report.result("loops", g.has_loops() ? "yes" : "no");
  report.result("eigenvalues", join(s.eigenvalues, format_double));
  report.result("lambda1", format_double(s.lambda1));
  report.result("lambda2", format_double(s.lambda2) + (s.lambda2_by_convention ? " (n=1 convention)" : ""));
  report.result("spectral_sum", format_double(s.spectral_sum));
  report.result("bound_8n_over_7", format_double(8.0 * g.order() / 7.0));
  return kOk;
}

int cmd_search(RunReport& report, int n, bool min_connected, int threads) {
  const SearchMode mode = min_connected ? SearchMode::MinConnected : SearchMode::Max;
  report.config("n", std::to_string(n));
  report.config("mode", min_connected ? "min-connected" : "max");
  report.config("threads", std::to_string(threads));
  const auto r = search_extremal(n, mode, threads);
  report.result("graphs_examined", std::to_string(r.graphs_examined));
  report.result("value", format_double(r.value));
  report.result("optimizer_edges", edge_list(r.graph));
  report.result("optimizer_degrees", degree_string(r.graph));
  report.result("optimizer_classes", std::to_string(r.distinct_optimizers.size()));
  if (min_connected) return kOk;

  const double bound = 8.0 * n / 7.0;
  const bool within = r.value <= bound + 1e-9;
  report.result("bound_8n_over_7", format_double(bound));
  report.result("within_bound", within ? "yes" : "no");
  if (n >= 5) {
    const auto [p, q] = conjecture_pq(n);
    const Graph k = knpq(n, p, q);
    const double ks = spectral_sum(k).spectral_sum;
    bool match = false;
    for (const auto& opt : r.distinct_optimizers)
      match = match || (sorted_degrees(opt) == sorted_degrees(k) && std::abs(spectral_sum(opt).spectral_sum - ks) < 1e-9);
    report.result("conjecture", "K(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + ")");
    report.result("conjecture_value", format_double(ks));
    report.result("conjecture_match", match ? "yes" : "no");
  }
  return within ? kOk : kFail;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream s(text);
  std::string tok;
  while (std::getline(s, tok, ',')) w.push_back(to_double(parse_rational(tok)));
  return w;
}

void describe_model(RunReport& report, const StepModel& model) {
  const auto& u = model.weights();
  report.result("u", join(u, format_double));
  const double s = sigma(model);
  report.result("sigma", format_double(s));
  report.result("sigma_minus_8_over_7", format_double(s - 8.0 / 7.0));
  const auto positive = std::count_if(u.begin(), u.end(), [](double x) { return x > 1e-12; });
  if (positive < 2) {
    report.result("eigenfunctions", "n/a (fewer than two positive weights)");
    return;
  }
  const auto e = step_eigs(model);
  report.result("mu1", format_double(e.mu1));
  report.result("mu2", format_double(e.mu2));
  report.result("alpha", join(e.alpha, fmt_opt));
  report.result("beta", join(e.beta, fmt_opt));
  const auto res = ellipse_residual(model);
  double worst = 0.0;
  for (const auto& r : res)
    if (r) worst = std::max(worst, std::abs(*r));
  report.result("ellipse_residuals", join(res, fmt_opt));
  report.result("max_ellipse_residual", format_double(worst));
  bool all_ok = true;
  for (const auto& k : adjacency_criterion_check(model)) {
    all_ok = all_ok && k.consistent;
    report.result("kappa_" + std::to_string(k.i + 1) + "_" + std::to_string(k.j + 1),
                  format_double(k.kappa) + " " + (k.adjacent ? "edge" : "non-edge") + " " +
                      (k.consistent ? "ok" : "violated"));
  }
  report.result("adjacency_criterion", all_ok ? "consistent" : "violated");
}

int cmd_optimize(RunReport& report, const std::string& name, const std::string& weights, int restarts,
                 std::uint64_t seed, int threads) {
  const CandidateGraph cand = candidate(name);
  report.config("candidate", name);
  const auto twins = true_twin_check(cand.graph);
  if (!weights.empty()) {
    report.config("weights", weights);
    describe_model(report, StepModel(cand, parse_weights(weights)));
  } else {
    OptimizeOptions opt;
    opt.restarts = restarts;
    opt.seed = seed;
    opt.threads = threads;
    report.config("restarts", std::to_string(restarts));
    report.config("seed", std::to_string(seed));
    report.config("threads", std::to_string(threads));
    const auto r = maximize_sigma(cand, opt);
    report.result("starts", std::to_string(r.starts));
    describe_model(report, StepModel(cand, r.weights));
  }
  report.result("true_twins", twins.empty() ? "none" : join(twins, [](const auto& p) {
    return std::to_string(p.first + 1) + "~" + std::to_string(p.second + 1);
  }));
  return kOk;
}

struct CertifyFlags {
  std::string bound = "8/7";
  long max_den = 10000;
  double tol = 1e-9;
  int max_iter = 50000;
  std::string output;
};

int cmd_certify(RunReport& report, const std::string& name, const CertifyFlags& f, std::uint64_t seed) {
  const CandidateGraph cand = candidate(name);
  const Rational bound = parse_rational(f.bound);
  CertifyConfig cfg;
  cfg.max_den = f.max_den;
  cfg.max_den_cap = std::max(cfg.max_den_cap, f.max_den);
  cfg.solve.tol = f.tol;
  cfg.solve.max_iter = f.max_iter;
  cfg.solve.seed = seed;
  report.config("candidate", name);
  report.config("bound", to_string(bound));
  report.config("max_den", std::to_string(f.max_den));
  report.config("tol", format_double(f.tol));
  report.config("max_iter", std::to_string(f.max_iter));
  report.config("seed", std::to_string(seed));

  const auto out = certify(cand, bound, cfg);
  report.result("attempts", std::to_string(out.attempts));
  report.result("iterations", std::to_string(out.last_solve.iterations));
  report.result("affine_residual", format_double(out.last_solve.affine_residual));
  report.result("min_eigenvalue", format_double(out.last_solve.min_eigenvalue));
  if (!out.certificate) {
    report.result("failed_stage", out.failed_stage);
    report.result("verdict", "NOT_FOUND");
    return kFail;
  }
  report.result("max_den_used", std::to_string(out.max_den_used));
  report.result("rank_one_terms", std::to_string(out.psd_terms));
  if (!f.output.empty()) {
    std::ofstream file(f.output);
    if (!file) throw InputError("cannot write " + f.output);
    write_certificate(file, *out.certificate);
    report.result("certificate", f.output);
  }
  report.result("verdict", "PASS");
  return kOk;
}

int cmd_verify(RunReport& report, const std::string& path) {
  report.config("file", path);
  auto in = open_input(path);
  const Certificate cert = read_certificate(in);
  report.result("candidate", cert.candidate);
  report.result("bound", to_string(cert.bound));
  const auto id = verify_identity(cert);
  report.result("identity", id.holds ? "holds" : "violated");
  if (!id.holds) {
    report.result("identity_violations", std::to_string(id.violation_count));
    const auto& v = id.violations.front();
    report.result("violation", "coefficient " + v.monomial + " entry (" + std::to_string(v.row + 1) + "," +
                                   std::to_string(v.col + 1) + ") lhs " + to_string(v.lhs) + " rhs " +
                                   to_string(v.rhs));
  }
  const auto psd = verify_psd(cert);
  report.result("psd", psd.psd() ? "PSD" : "NOT_PSD");
  if (psd.psd()) {
    report.result("rank_one_terms", std::to_string(psd.decomposition.size()));
  } else {
    report.result("witness", join(psd.counterexample, [](const Rational& r) { return to_string(r); }));
    report.result("witness_value", to_string(q_eval(cert.q, psd.counterexample)));
  }
  const bool pass = id.holds && psd.psd();
  report.result("verdict", pass ? "PASS" : "FAIL");
  return pass ? kOk : kFail;
}

int cmd_compound(RunReport& report, const std::string& path, int k) {
  report.config("file", path);
  report.config("k", std::to_string(k));
  auto in = open_input(path);
  const MatrixQ m = read_matrix(in);
  const MatrixQ c = additive_compound(m, k);
  std::ostringstream text;
  write_matrix(text, c);
  report.result("dimension", std::to_string(c.rows()));
  std::istringstream lines(text.str());
  std::string line;
  std::getline(lines, line);
  for (std::size_t r = 0; std::getline(lines, line); ++r) report.result("row_" + std::to_string(r + 1), line);
  if (k == 2) report.result("equals_psi", c == psi(m) ? "yes" : "no");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral-sum toolkit: spectra, extremal search, step-model optimization, SOS certificates"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--table", g.table, "Human-readable table output");

  std::string file;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and spectral sum of a graph file");
  spectrum->add_option("graph", file, "Graph file")->required();

  int n = 0;
  int threads = 1;
  bool want_max = false;
  bool want_min = false;
  auto* search = app.add_subcommand("search", "Exhaustive search over labeled graphs on n vertices");
  search->add_option("n", n, "Number of vertices (2..8)")->required();
  auto* fmax = search->add_flag("--max", want_max, "Maximize the spectral sum");
  auto* fmin = search->add_flag("--min-connected", want_min, "Minimize over connected graphs");
  fmax->excludes(fmin);
  search->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string name;
  std::string weights;
  int restarts = 200;
  std::optional<std::uint64_t> seed_flag;
  auto* optimize = app.add_subcommand("optimize", "Maximize sigma over the weight simplex of a candidate");
  optimize->add_option("candidate", name, "K2, P3, P4, H5 or H6")->required();
  optimize->add_option("--weights", weights, "Evaluate at these weights instead (comma-separated)");
  optimize->add_option("--restarts", restarts, "Random restarts")->check(CLI::NonNegativeNumber);
  optimize->add_option("--seed", seed_flag, "Random seed (default SSC_SEED or 0)");
  optimize->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  CertifyFlags cf;
  auto* cert = app.add_subcommand("certify", "Search for an exact SOS certificate of c*I - psi(M*(x))");
  cert->add_option("candidate", name, "K2, P3, P4, H5 or H6")->required();
  cert->add_option("--bound", cf.bound, "Bound c as p/q")->capture_default_str();
  cert->add_option("--max-den", cf.max_den, "Initial rounding denominator")->check(CLI::PositiveNumber)->capture_default_str();
  cert->add_option("--tol", cf.tol, "Solver tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cert->add_option("--max-iter", cf.max_iter, "Solver iteration limit")->check(CLI::PositiveNumber)->capture_default_str();
  cert->add_option("--seed", seed_flag, "Seed for retries (default SSC_SEED or 0)");
  cert->add_option("-o,--output", cf.output, "Certificate output file");

  auto* verify = app.add_subcommand("verify", "Exact check of a certificate file");
  verify->add_option("certificate", file, "Certificate file")->required();

  int k = 0;
  auto* compound = app.add_subcommand("compound", "k-th additive compound of a matrix file");
  compound->add_option("matrix", file, "Matrix file")->required();
  compound->add_option("k", k, "Order")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
    if (search->parsed() && !want_max && !want_min) throw CLI::ValidationError("search", "one of --max or --min-connected is required");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string echo = "ssc";
  for (std::size_t i = 1; i < args.size(); ++i) echo += " " + args[i];
  RunReport report(echo);
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (spectrum->parsed()) {
      code = cmd_spectrum(report, file);
    } else if (search->parsed()) {
      code = cmd_search(report, n, want_min, threads);
    } else if (optimize->parsed()) {
      code = cmd_optimize(report, name, weights, restarts, resolve_seed(seed_flag), threads);
    } else if (cert->parsed()) {
      code = cmd_certify(report, name, cf, resolve_seed(seed_flag));
    } else if (verify->parsed()) {
      code = cmd_verify(report, file);
    } else if (compound->parsed()) {
      code = cmd_compound(report, file, k);
    }
  } catch (const ParseError& e) {
    err << "error: " << file << ": " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  report.set_duration(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  report.print(out, g.table);
  return code;
}

}  // namespace ssc::cli
