#include "fareycorr/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "fareycorr/correlation.hpp"
#include "fareycorr/farey.hpp"
#include "fareycorr/ntheory.hpp"
#include "fareycorr/report.hpp"
#include "fareycorr/theory.hpp"
#include "fareycorr/verify.hpp"

namespace fareycorr::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridEntry {
  std::string text;
  Rational value;
};

struct RunConfig {
  std::int64_t Q = 100;
  std::string constraint = "all";
  std::string alpha;
  std::string beta;
  std::string lambda_max;
  std::string lambda_step;
  std::string lambdas;
  std::size_t bins = 0;
  std::int64_t m = 1;
  std::int64_t b = 0;
  std::string variant = "coprime";
  bool cumulative = false;
  bool chunked = false;
  std::string out_path;
  std::string format = "csv";
  int threads = 0;
  std::uint64_t mem_cap = correlation::kDefaultPointCap;
  std::string suite = "all";
  std::int64_t dirichlet_x = 10'000;
  std::int64_t qmax = 500;
};

farey::FareySpec make_spec(const RunConfig& cfg) {
  farey::FareySpec spec{cfg.Q, farey::parse_constraint(cfg.constraint), std::nullopt};
  if (!cfg.alpha.empty() || !cfg.beta.empty()) {
    farey::Window w;
    if (!cfg.alpha.empty()) w.alpha = parse_rational(cfg.alpha);
    if (!cfg.beta.empty()) w.beta = parse_rational(cfg.beta);
    spec.window = w;
  }
  spec.validate();
  return spec;
}

std::vector<GridEntry> make_grid(const RunConfig& cfg, std::string_view default_max,
                                 std::string_view default_step) {
  std::vector<GridEntry> grid;
  if (!cfg.lambdas.empty()) {
    std::stringstream ss(cfg.lambdas);
    std::string item;
    while (std::getline(ss, item, ',')) {
      grid.push_back({item, parse_rational(item)});
    }
  } else {
    const std::string max_text = cfg.lambda_max.empty() ? std::string(default_max) : cfg.lambda_max;
    const std::string step_text = cfg.lambda_step.empty() ? std::string(default_step) : cfg.lambda_step;
    const Rational max = parse_rational(max_text);
    const Rational step = parse_rational(step_text);
    if (step <= 0) {
      throw std::invalid_argument("--lambda-step must be positive");
    }
    const int places = std::max(decimal_places(max_text), decimal_places(step_text));
    const bool decimal = max_text.find('/') == std::string::npos &&
                         step_text.find('/') == std::string::npos;
    for (std::int64_t k = 1; step * k <= max; ++k) {
      const Rational v = step * k;
      grid.push_back({decimal ? to_decimal_string(v, places) : format_rational(v), v});
    }
  }
  if (grid.empty()) {
    throw std::invalid_argument("lambda grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].value <= 0) {
      throw std::invalid_argument("lambda values must be positive, got " + grid[i].text);
    }
    if (i > 0 && !(grid[i - 1].value < grid[i].value)) {
      throw std::invalid_argument("lambda values must be strictly increasing");
    }
  }
  return grid;
}

// Writes through --out when set, otherwise to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw IoError("cannot open '" + path + "' for writing");
      }
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) {
      throw IoError("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit_rows(const RunConfig& cfg, std::span<const report::ReportRow> rows, std::ostream& out) {
  Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    report::write_json(sink.get(), rows);
  } else {
    report::write_csv(sink.get(), rows);
  }
  sink.finish();
}

std::vector<Rational> values(std::span<const GridEntry> grid) {
  std::vector<Rational> v;
  for (const auto& g : grid) v.push_back(g.value);
  return v;
}

correlation::CorrelationCurve empirical_curve(const RunConfig& cfg, const farey::FareySpec& spec,
                                              std::span<const GridEntry> grid) {
  const auto lambdas = values(grid);
  if (cfg.chunked) {
    return correlation::empirical_G_streaming(spec, lambdas);
  }
  return correlation::empirical_G(spec, lambdas, cfg.mem_cap);
}

double theory_for_spec(const farey::FareySpec& spec, double lambda) {
  if (const auto* r = std::get_if<farey::ResidueClass>(&spec.constraint)) {
    return theory::cumulative_G_tilde(r->m, lambda);
  }
  return theory::cumulative_G_m(farey::modulus(spec.constraint), lambda);
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const auto spec = make_spec(cfg);
  const std::uint64_t n = farey::count_in_window(spec);
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  os << "# Q=" << spec.Q << " constraint=" << farey::describe(spec.constraint);
  if (spec.window) {
    const auto& w = *spec.window;
    os << " alpha=" << format_rational(w.alpha) << " beta=" << format_rational(w.beta);
  }
  os << " count=" << n << '\n';
  farey::for_each_fraction(spec, [&os](const farey::Fraction& f) { os << f.num << '/' << f.den << '\n'; });
  sink.finish();
  return kOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const auto spec = make_spec(cfg);
  const std::uint64_t n = farey::count_in_window(spec);
  double expected = farey::expected_count(spec);
  if (spec.window) {
    expected *= to_double(spec.window->beta - spec.window->alpha);
  }
  Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    nlohmann::json j{{"Q", spec.Q},
                     {"constraint", farey::describe(spec.constraint)},
                     {"count", n},
                     {"expected_count", expected}};
    sink.get() << j.dump(2) << '\n';
  } else {
    sink.get() << "Q,constraint,count,expected_count\n"
               << spec.Q << ',' << farey::describe(spec.constraint) << ',' << n << ','
               << report::format_double(expected) << '\n';
  }
  sink.finish();
  return kOk;
}

int cmd_empirical(const RunConfig& cfg, std::ostream& out) {
  const auto spec = make_spec(cfg);
  std::vector<report::ReportRow> rows;
  if (cfg.bins > 0) {
    const std::string max_text = cfg.lambda_max.empty() ? "3" : cfg.lambda_max;
    const auto bins = correlation::empirical_density(spec, parse_rational(max_text), cfg.bins, cfg.mem_cap);
    for (const auto& bin : bins) {
      rows.push_back(report::make_row(
          format_rational(bin.hi), bin.density, std::nullopt, bin.pair_count));
    }
  } else {
    const auto grid = make_grid(cfg, "3.0", "0.1");
    const auto curve = empirical_curve(cfg, spec, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows.push_back(report::make_row(grid[i].text, curve.rows[i].G_empirical, std::nullopt,
                                      curve.rows[i].pair_count));
    }
  }
  emit_rows(cfg, rows, out);
  return kOk;
}

int cmd_theory(const RunConfig& cfg, std::ostream& out) {
  const theory::TheoryParams params{cfg.m, theory::parse_variant(cfg.variant), cfg.cumulative};
  if (params.m < 1) {
    throw std::invalid_argument("--m must be >= 1");
  }
  if (cfg.b != 0 && std::gcd(cfg.b, cfg.m) != 1) {
    throw std::invalid_argument("residue class needs (b,m)=1, got b=" + std::to_string(cfg.b) +
                                " m=" + std::to_string(cfg.m));
  }
  const auto grid = make_grid(cfg, "3", "0.01");
  std::vector<double> lambdas;
  for (const auto& g : grid) lambdas.push_back(to_double(g.value));
  const auto values = theory::evaluate_grid(params, lambdas);
  std::vector<report::ReportRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back(report::make_row(grid[i].text, std::nullopt, values[i], std::nullopt));
  }
  emit_rows(cfg, rows, out);
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto spec = make_spec(cfg);
  const auto grid = make_grid(cfg, "3.0", "0.1");
  const auto curve = empirical_curve(cfg, spec, grid);
  std::vector<report::ReportRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back(report::make_row(grid[i].text, curve.rows[i].G_empirical,
                                    theory_for_spec(spec, to_double(grid[i].value)),
                                    curve.rows[i].pair_count));
  }
  emit_rows(cfg, rows, out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const verify::VerifyOptions options{cfg.dirichlet_x, cfg.qmax};
  const auto results = verify::run(cfg.suite, options);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  if (cfg.format == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
      checks.push_back({{"suite", r.suite},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"worst", r.worst},
                        {"limit", r.limit},
                        {"detail", r.detail}});
    }
    os << nlohmann::json{{"passed", ok}, {"checks", checks}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << (r.passed ? "PASS" : "FAIL") << "  [" << r.suite << "] " << r.name
         << "  worst=" << report::format_double(r.worst)
         << " limit=" << report::format_double(r.limit);
      if (!r.detail.empty()) os << "  (" << r.detail << ')';
      os << '\n';
    }
    os << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  }
  sink.finish();
  return ok ? kOk : kVerificationFailed;
}

void add_spec_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--Q,-Q", cfg.Q, "Order of the Farey sequence")->check(CLI::PositiveNumber);
  sub->add_option("--constraint", cfg.constraint, "all | coprime:m | residue:m,b");
  sub->add_option("--alpha", cfg.alpha, "Window left end (exclusive), e.g. 1/4");
  sub->add_option("--beta", cfg.beta, "Window right end (inclusive), e.g. 1/2");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--lambda-max", cfg.lambda_max, "Largest lambda of the grid");
  sub->add_option("--lambda-step", cfg.lambda_step, "Grid step");
  sub->add_option("--lambdas", cfg.lambdas, "Explicit comma-separated lambda list");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
  sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

void add_runtime_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "OpenMP threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--mem-cap", cfg.mem_cap, "Largest point set to hold in memory");
  sub->add_flag("--chunked", cfg.chunked, "Stream the set instead of materialising it");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Pair correlation of Farey fractions with congruence-constrained denominators",
               "fareycorr"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "List the fractions of a Farey set, one a/q per line");
  add_spec_options(gen, cfg);
  gen->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* cnt = app.add_subcommand("count", "Exact cardinality and its leading-order estimate");
  add_spec_options(cnt, cfg);
  add_output_options(cnt, cfg);

  auto* emp = app.add_subcommand("empirical", "Empirical cumulative pair correlation G(lambda)");
  add_spec_options(emp, cfg);
  add_grid_options(emp, cfg);
  emp->add_option("--bins", cfg.bins, "Emit a density histogram with this many bins on (0, lambda-max]");
  add_output_options(emp, cfg);
  add_runtime_options(emp, cfg);

  auto* th = app.add_subcommand("theory", "Limiting pair correlation g or G on a lambda grid");
  th->add_option("--m", cfg.m, "Modulus");
  th->add_option("--variant", cfg.variant, "full | coprime | residue")
      ->check(CLI::IsMember({"full", "coprime", "residue"}));
  th->add_option("--b", cfg.b, "Residue class for the residue variant (the limit does not depend on it)");
  th->add_flag("--cumulative", cfg.cumulative, "Emit G instead of g");
  add_grid_options(th, cfg);
  add_output_options(th, cfg);
  th->add_option("--threads", cfg.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

  auto* cmp = app.add_subcommand("compare", "Empirical G next to its limit, with absolute errors");
  add_spec_options(cmp, cfg);
  add_grid_options(cmp, cfg);
  add_output_options(cmp, cfg);
  add_runtime_options(cmp, cfg);

  auto* ver = app.add_subcommand("verify", "Run numerical verification suites");
  ver->add_option("--suite", cfg.suite, "all | " + [] {
    std::string s;
    for (const auto& n : verify::suite_names()) s += (s.empty() ? "" : " | ") + n;
    return s;
  }());
  ver->add_option("--x", cfg.dirichlet_x, "Upper limit for the Dirichlet partial sum")
      ->check(CLI::PositiveNumber);
  ver->add_option("--qmax", cfg.qmax, "Largest modulus for the congruence-count suite")
      ->check(CLI::PositiveNumber);
  ver->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json", "csv"}));
  ver->add_option("--out", cfg.out_path, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  if (cfg.threads > 0) {
    omp_set_num_threads(cfg.threads);
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (cnt->parsed()) return cmd_count(cfg, out);
    if (emp->parsed()) return cmd_empirical(cfg, out);
    if (th->parsed()) return cmd_theory(cfg, out);
    if (cmp->parsed()) return cmd_compare(cfg, out);
    if (ver->parsed()) return cmd_verify(cfg, out);
  } catch (const farey::ResourceCapError& e) {
    err << "error: " << e.what()
        << " (raise --mem-cap, lower --Q, or use --chunked to stream the set)\n";
    return kResourceCap;
  } catch (const correlation::OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}

}  // namespace fareycorr::cli
