#include "gkw/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gkw/chebfun.hpp"
#include "gkw/evolution.hpp"
#include "gkw/gauss_map.hpp"
#include "gkw/parallel.hpp"
#include "gkw/spectral.hpp"
#include "gkw/transfer.hpp"

namespace gkw {

namespace {

constexpr double kLambdaOne = 0.3036630028987;
constexpr std::size_t kAbscissae = 21;
constexpr std::size_t kThetaStep = 20;

const std::vector<std::pair<std::string_view, Command>>& command_table() {
  static const std::vector<std::pair<std::string_view, Command>> table{
      {"lambda", Command::kLambda},   {"bounds", Command::kBounds},
      {"sandwich", Command::kSandwich}, {"evolve", Command::kEvolve},
      {"spectrum", Command::kSpectrum}, {"montecarlo", Command::kMontecarlo},
      {"verify", Command::kVerify}};
  return table;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Per-p state shared by the checks of one sweep entry. Operators are built on
// first use.
class PContext {
 public:
  PContext(const RunConfig& config, int p) : config_(config), param_(p) {
    policy_.cutoff = config.cutoff;
    policy_.target_tol = config.tol;
  }

  const MapParam& param() const { return param_; }
  const TruncationPolicy& policy() const { return policy_; }
  std::size_t degree() const { return config_.degree; }

  const TransferOperator& op(OperatorKind kind) {
    auto& slot = ops_[static_cast<std::size_t>(kind)];
    if (!slot) slot = std::make_unique<TransferOperator>(kind, param_, config_.degree, policy_);
    return *slot;
  }

  const EigenResult& power() {
    if (!power_) power_ = lambda_by_power(op(OperatorKind::kV), config_.tol);
    return *power_;
  }

  const EigenResult& ratio() {
    if (!ratio_) {
      ratio_ = lambda_by_ratio(op(OperatorKind::kU),
                               FuncRep::fit([](double x) { return x; }, config_.degree), 200,
                               config_.tol);
    }
    return *ratio_;
  }

  Row row(std::string quantity, double value, std::int64_t n_or_dim = 0) const {
    Row r;
    r.p = param_.p();
    r.quantity = std::move(quantity);
    r.value = value;
    r.n_or_dim = n_or_dim;
    r.N = static_cast<std::int64_t>(config_.degree);
    r.K = config_.cutoff;
    r.tol = config_.tol;
    return r;
  }

 private:
  const RunConfig& config_;
  MapParam param_;
  TruncationPolicy policy_;
  std::unique_ptr<TransferOperator> ops_[5];
  std::optional<EigenResult> power_;
  std::optional<EigenResult> ratio_;
};

// Rows of a p-sweep, computed per p (possibly in parallel) and concatenated in
// p order so the output never depends on scheduling.
std::vector<Row> sweep(const RunConfig& config,
                       const std::function<std::vector<Row>(PContext&)>& body) {
  const std::size_t count = static_cast<std::size_t>(config.p_max - config.p_min + 1);
  std::vector<std::vector<Row>> per_p(count);
  parallel_for(count, [&](std::size_t i) {
    PContext ctx(config, config.p_min + static_cast<int>(i));
    per_p[i] = body(ctx);
  });
  std::vector<Row> rows;
  for (auto& part : per_p) rows.insert(rows.end(), part.begin(), part.end());
  return rows;
}

double sup_gap(const FuncRep& f, const std::function<double(double)>& g) {
  double worst = 0.0;
  for (double x : uniform_grid(kDefaultGrid)) worst = std::max(worst, std::abs(f(x) - g(x)));
  return worst;
}

// ---- commands -------------------------------------------------------------

std::vector<Row> lambda_rows(PContext& ctx) {
  const auto& power = ctx.power();
  const auto& ratio = ctx.ratio();
  Row lam = ctx.row("lambda", power.lambda, static_cast<std::int64_t>(power.iterations));
  if (ctx.param().p() >= 2) {
    const auto b = bounds(ctx.param());
    lam.lower = b.v;
    lam.upper = b.w;
    lam.pass = power.lambda >= b.v && power.lambda <= b.w;
  }
  return {lam, ctx.row("lambda_ratio", ratio.lambda, static_cast<std::int64_t>(ratio.iterations)),
          ctx.row("lambda_residual", power.residual, static_cast<std::int64_t>(power.iterations))};
}

std::vector<Row> bounds_rows(PContext& ctx) {
  const auto b = bounds(ctx.param());
  Row r = ctx.row("bounds", 0.5 * (b.v + b.w));
  r.lower = b.v;
  r.upper = b.w;
  return {r};
}

std::vector<Row> sandwich_rows(PContext& ctx) {
  const auto report = verify_sandwich(ctx.op(OperatorKind::kV));
  const double lo = report.bounds.v - kSandwichSlack;
  const double hi = report.bounds.w + kSandwichSlack;
  std::vector<Row> rows;
  for (auto [name, value] : {std::pair{"sandwich_min_ratio", report.min_ratio},
                             std::pair{"sandwich_max_ratio", report.max_ratio}}) {
    Row r = ctx.row(name, value, static_cast<std::int64_t>(kDefaultGrid));
    r.lower = lo;
    r.upper = hi;
    r.pass = value >= lo && value <= hi;
    rows.push_back(r);
  }
  return rows;
}

std::vector<Row> evolve_rows(PContext& ctx, std::size_t steps) {
  const auto trace = evolve_cdf(ctx.op(OperatorKind::kCdfStep), lebesgue_cdf(ctx.degree()), steps);
  std::vector<Row> rows;
  for (std::size_t k = 0; k <= steps; ++k) {
    rows.push_back(ctx.row("sup_delta", sup_norm(delta(trace, k)), static_cast<std::int64_t>(k)));
  }
  for (const char* name : {"phi", "delta"}) {
    const FuncRep& f = std::string_view(name) == "phi" ? trace.phi[steps] : delta(trace, steps);
    for (double x : uniform_grid(kAbscissae)) {
      Row r = ctx.row(name, f(x), static_cast<std::int64_t>(steps));
      r.x = x;
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<Row> spectrum_rows(PContext& ctx, std::size_t dim) {
  const auto spec = spectrum_collocation(ctx.param(), dim, ctx.policy());
  std::vector<Row> rows;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    Row r = ctx.row("eigenvalue", spec.eigenvalues[i], static_cast<std::int64_t>(i + 1));
    r.N = static_cast<std::int64_t>(dim - 1);
    r.pass = spec.reliable[i] && spec.resolved[i];
    rows.push_back(r);
  }
  // Probe only: the limit of these ratios is conjectural.
  const std::size_t shown = std::min<std::size_t>(8, spec.conjecture_ratios.size());
  for (std::size_t n = 1; n <= shown; ++n) {
    Row r = ctx.row("conjecture_ratio", spec.conjecture_ratios[n - 1], static_cast<std::int64_t>(n));
    r.N = static_cast<std::int64_t>(dim - 1);
    rows.push_back(r);
  }
  return rows;
}

std::vector<Row> montecarlo_rows(PContext& ctx, const RunConfig& config) {
  const auto xs = uniform_grid(kAbscissae);
  const auto mc = montecarlo_cdf(ctx.param(), config.steps, config.samples, *config.seed, xs);
  const auto trace =
      evolve_cdf(ctx.op(OperatorKind::kCdfStep), lebesgue_cdf(ctx.degree()), config.steps);
  std::vector<Row> rows;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double exact = trace.phi[config.steps](xs[j]);
    const double band = 4.0 * binomial_se(exact, config.samples) + 1e-12;
    Row r = ctx.row("mc_cdf", mc[j], static_cast<std::int64_t>(config.steps));
    r.seed = config.seed;
    r.x = xs[j];
    r.lower = exact - band;
    r.upper = exact + band;
    r.pass = std::abs(mc[j] - exact) <= band;
    rows.push_back(r);
  }
  return rows;
}

// ---- verification ---------------------------------------------------------

class Checks {
 public:
  Checks(PContext& ctx, std::string suite) : ctx_(ctx), suite_(std::move(suite)) {}

  void at_most(const std::string& name, double value, double upper, std::int64_t n = 0) {
    add(name, value, std::nullopt, upper, value <= upper, n);
  }
  void at_least(const std::string& name, double value, double lower, std::int64_t n = 0) {
    add(name, value, lower, std::nullopt, value >= lower, n);
  }
  void above(const std::string& name, double value, double lower, std::int64_t n = 0) {
    add(name, value, lower, std::nullopt, value > lower, n);
  }
  void within(const std::string& name, double value, double lower, double upper, std::int64_t n = 0) {
    add(name, value, lower, upper, value >= lower && value <= upper, n);
  }
  void fail(const std::string& what) {
    Row r = ctx_.row("verify:" + suite_ + ":error " + what, std::nan(""));
    r.pass = false;
    rows_.push_back(r);
  }

  std::vector<Row>& rows() { return rows_; }

 private:
  void add(const std::string& name, double value, std::optional<double> lower,
           std::optional<double> upper, bool ok, std::int64_t n) {
    Row r = ctx_.row("verify:" + suite_ + ":" + name, value, n);
    r.lower = lower;
    r.upper = upper;
    r.pass = ok && std::isfinite(value);
    rows_.push_back(r);
  }

  PContext& ctx_;
  std::string suite_;
  std::vector<Row> rows_;
};

void suite_anchor(PContext& ctx, Checks& c) {
  if (ctx.param().p() != 1) return;
  const double lam = ctx.ratio().lambda;
  c.within("lambda_1", lam, kLambdaOne - 1e-5, kLambdaOne + 1e-5);
}

void suite_bounds(PContext& ctx, Checks& c) {
  if (ctx.param().p() < 2) return;
  const auto b = bounds(ctx.param());
  c.within("lambda_in_bounds", ctx.power().lambda, b.v, b.w);
}

void suite_sandwich(PContext& ctx, Checks& c) {
  if (ctx.param().p() < 2) return;
  const auto report = verify_sandwich(ctx.op(OperatorKind::kV));
  c.at_least("min_ratio", report.min_ratio, report.bounds.v - kSandwichSlack);
  c.at_most("max_ratio", report.max_ratio, report.bounds.w + kSandwichSlack);
}

void suite_estimators(PContext& ctx, Checks& c) {
  const auto& power = ctx.power();
  const auto& ratio = ctx.ratio();
  c.at_most("ratio_vs_power", std::abs(power.lambda - ratio.lambda), 1e-8);
  c.at_most("power_residual", power.residual, 1e-9, static_cast<std::int64_t>(power.iterations));
}

void suite_tail(PContext& ctx, Checks& c) {
  const MapParam& param = ctx.param();
  const double p = param.pd();
  const std::size_t degree = ctx.degree();
  const auto eta = FuncRep::fit([&](double x) { return stationary_density(param, x); }, degree);
  const auto g_eta = ctx.op(OperatorKind::kGkw).apply(eta);
  c.at_most("G_fixed_point", sup_gap(g_eta, [&](double x) { return eta(x); }), 1e-8);
  const auto u_one = ctx.op(OperatorKind::kU).apply(FuncRep::constant(1.0, degree));
  c.at_most("U_constant", sup_gap(u_one, [](double) { return 1.0; }), 1e-8);
  const auto xi = aux_functions(param, 1.0 / 3.0, degree).xi;
  const auto v_xi = ctx.op(OperatorKind::kV).apply(xi);
  c.at_most("V_closed_form",
            sup_gap(v_xi, [&](double x) { return 1.0 / ((p + 1.0 / 3.0 + x) * (p + 1.0 / 3.0 + x)); }),
            1e-8);

  TruncationPolicy doubled = ctx.policy();
  doubled.cutoff = 2 * ctx.policy().cutoff;
  const TransferOperator g_wide(OperatorKind::kGkw, param, degree, doubled);
  c.at_most("G_cutoff_doubling", sup_gap(g_wide.apply(eta), [&](double x) { return g_eta(x); }),
            ctx.policy().target_tol);
  const TransferOperator v_wide(OperatorKind::kV, param, degree, doubled);
  c.at_most("V_cutoff_doubling", sup_gap(v_wide.apply(xi), [&](double x) { return v_xi(x); }),
            ctx.policy().target_tol);
}

void suite_functional(PContext& ctx, Checks& c) {
  if (ctx.param().p() < 2) return;
  const MapParam& param = ctx.param();
  c.above("F_xi_lower_bound",
          functional_F(param, sandwich_function(param, ctx.degree())) -
              functional_F_xi_lower_bound(param),
          0.0);
  const auto gap = gap_condition(ctx.op(OperatorKind::kV));
  c.above("gap_condition", gap.lhs - gap.rhs, 0.0);
  const auto& eig = ctx.power();
  c.at_most("tau_ratio", tau_bound(param, eig) / eig.lambda, kTauRatioBound);
}

void suite_decomposition(PContext& ctx, Checks& c) {
  const MapParam& param = ctx.param();
  const auto& eig = ctx.power();
  const auto trace =
      evolve_cdf(ctx.op(OperatorKind::kCdfStep), lebesgue_cdf(ctx.degree()), kThetaStep);

  const double q = kuzmin_rate(param);
  const double scale = sup_norm(delta(trace, 2)) / (q * q);
  double worst = 0.0;
  for (std::size_t n = 3; n <= 12; ++n) {
    worst = std::max(worst, sup_norm(delta(trace, n)) / (scale * std::pow(q, static_cast<double>(n))));
  }
  c.at_most("kuzmin_rate", worst, 1.0, 12);

  const FuncRep Psi = build_Psi(param, eig, ctx.policy());
  c.at_most("Psi_endpoint", std::abs(Psi(1.0)), 1e-8);
  const auto profile = estimate_Theta(trace, eig, kThetaStep, Psi);
  const auto l_one = functional_L(ctx.op(OperatorKind::kV), FuncRep::constant(1.0, ctx.degree()), eig);
  c.at_most("Theta_vs_L_Psi", sup_norm(profile.Theta - l_one.value * Psi), kThetaResidualLimit,
            static_cast<std::int64_t>(kThetaStep));
  c.at_most("Theta_endpoints", std::max(std::abs(profile.Theta(0.0)), std::abs(profile.Theta(1.0))),
            1e-8, static_cast<std::int64_t>(kThetaStep));

  if (param.p() < 2) return;
  // Remainder after the leading term, measured in units of tau^n Phi(1 - Phi):
  // the constant fitted at n0 must still cover two later steps. The window
  // ends where the remainder is still ~1e-8 of lambda^n; beyond that the
  // rounding of lambda^n Theta (about n * 1e-11 relative) is all one sees.
  const double tau = tau_bound(param, eig);
  const double ratio = eig.contraction_ratio > 0.0 ? eig.contraction_ratio : tau / eig.lambda;
  const auto n_hi = static_cast<std::size_t>(
      std::clamp(std::floor(std::log(1e-8) / std::log(ratio)), 4.0, 18.0));
  const std::size_t n0 = n_hi >= 10 ? n_hi - 8 : 2;
  const std::size_t n_mid = (n0 + n_hi) / 2;
  auto excess = [&](std::size_t n) {
    const double lead = std::pow(-eig.lambda, static_cast<double>(n));
    double worst = 0.0;
    for (double x : trace.grid) {
      const double y = stationary_cdf(param, x);
      const double shape = y * (1.0 - y);
      if (shape <= 0.0) continue;
      const double gap = std::abs(delta(trace, n)(x) - lead * profile.Theta(x));
      worst = std::max(worst, gap / (std::pow(tau, static_cast<double>(n)) * shape));
    }
    return worst;
  };
  const double fitted = excess(n0);
  c.at_most("error_shape_mid", excess(n_mid) / fitted, 1.0, static_cast<std::int64_t>(n_mid));
  c.at_most("error_shape_late", excess(n_hi) / fitted, 1.0, static_cast<std::int64_t>(n_hi));
}

void suite_spectrum(PContext& ctx, Checks& c, std::size_t dim) {
  const auto spec = spectrum_collocation(ctx.param(), dim, ctx.policy());
  const auto d = static_cast<std::int64_t>(dim);
  c.within("Lambda_1", spec.eigenvalues[0], 1.0 - 1e-10, 1.0 + 1e-10, d);
  const double lam = ctx.power().lambda;
  c.within("Lambda_2", spec.eigenvalues[1], -lam - 1e-8, -lam + 1e-8, d);
}

}  // namespace

void RunConfig::validate() const {
  if (p_min < 1 || p_max < p_min) throw std::invalid_argument("p-range must be nonempty with p >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (degree < 2) throw std::invalid_argument("N must be at least 2");
  if (cutoff < p_max + 1) throw std::invalid_argument("K must be at least p+1");
  if (dim < 8) throw std::invalid_argument("dim must be at least 8");
  if (command == Command::kMontecarlo) {
    if (!seed) throw std::invalid_argument("montecarlo requires --seed");
    if (samples < 10'000) throw std::invalid_argument("montecarlo requires at least 10^4 samples");
  }
  if ((command == Command::kBounds || command == Command::kSandwich) && p_min < 2) {
    throw std::invalid_argument("bounds and sandwich require p >= 2");
  }
  const auto& suites = verify_suites();
  if (suite != "all" && std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
}

std::pair<int, int> parse_p_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int p = parse_int(text);
    return {p, p};
  }
  return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [key, cmd] : command_table()) {
    if (key == name) return cmd;
  }
  return std::nullopt;
}

std::string_view command_name(Command command) {
  for (const auto& [key, cmd] : command_table()) {
    if (cmd == command) return key;
  }
  return "?";
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"anchor",     "bounds",        "sandwich",
                                               "estimators", "tail",          "functional",
                                               "decomposition", "spectrum"};
  return suites;
}

std::vector<Row> compute(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::kLambda:
      return sweep(config, lambda_rows);
    case Command::kBounds:
      return sweep(config, bounds_rows);
    case Command::kSandwich:
      return sweep(config, sandwich_rows);
    case Command::kEvolve:
      return sweep(config, [&](PContext& ctx) { return evolve_rows(ctx, config.steps); });
    case Command::kSpectrum:
      return sweep(config, [&](PContext& ctx) { return spectrum_rows(ctx, config.dim); });
    case Command::kMontecarlo:
      return sweep(config, [&](PContext& ctx) { return montecarlo_rows(ctx, config); });
    case Command::kVerify:
      return verify_all(config);
  }
  return {};
}

std::vector<Row> verify_all(const RunConfig& config) {
  config.validate();
  using Suite = std::function<void(PContext&, Checks&)>;
  const std::vector<std::pair<std::string, Suite>> suites{
      {"anchor", suite_anchor},
      {"bounds", suite_bounds},
      {"sandwich", suite_sandwich},
      {"estimators", suite_estimators},
      {"tail", suite_tail},
      {"functional", suite_functional},
      {"decomposition", suite_decomposition},
      {"spectrum", [&](PContext& ctx, Checks& c) { suite_spectrum(ctx, c, config.dim); }}};
  return sweep(config, [&](PContext& ctx) {
    std::vector<Row> rows;
    for (const auto& [name, body] : suites) {
      if (config.suite != "all" && config.suite != name) continue;
      Checks checks(ctx, name);
      try {
        body(ctx, checks);
      } catch (const std::exception& e) {
        checks.fail(e.what());
      }
      rows.insert(rows.end(), checks.rows().begin(), checks.rows().end());
    }
    return rows;
  });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Row> rows;
  try {
    rows = compute(config);
  } catch (const std::invalid_argument& e) {
    err << "gkw: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = render(rows, config.format);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
      err << "gkw: cannot write '" << config.output << "'\n";
      return kExitUsage;
    }
  }
  if (config.command == Command::kVerify) {
    const auto failed = std::count_if(rows.begin(), rows.end(),
                                      [](const Row& r) { return r.pass && !*r.pass; });
    err << "gkw verify: " << rows.size() - static_cast<std::size_t>(failed) << " passed, " << failed
        << " failed\n";
    if (failed > 0) return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Gauss-Kuzmin-Wirsing constants of x -> {p/x}"};
  app.set_config("--config", "", "Read flat key=value settings (command-line flags win)");

  std::string command;
  std::optional<int> p;
  std::string p_range;
  RunConfig config;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  double cutoff = static_cast<double>(config.cutoff);

  std::vector<std::string> names;
  for (const auto& entry : command_table()) names.emplace_back(entry.first);
  app.add_option("command", command, "lambda | bounds | sandwich | evolve | spectrum | montecarlo | verify")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--p", p, "Single value of p");
  app.add_option("--p-range", p_range, "Inclusive range A..B");
  app.add_option("--N", config.degree, "Chebyshev degree")->capture_default_str();
  app.add_option("--K", cutoff, "Series cutoff (1e4 style accepted)")->capture_default_str();
  app.add_option("--tol", config.tol, "Target tolerance")->capture_default_str();
  app.add_option("--n", config.steps, "Evolution steps")->capture_default_str();
  app.add_option("--samples", config.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", config.output, "Output file (default: standard output)");
  app.add_option("--suite", config.suite, "Verification suite or 'all'")->capture_default_str();
  app.add_option("--dim", config.dim, "Spectrum matrix dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_stream;
    const int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.command = *parse_command(command);
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  config.seed = seed;
  if (!(cutoff >= 1.0) || cutoff != std::floor(cutoff) || cutoff > 1e9) {
    err << "gkw: --K must be a positive integer\n";
    return kExitUsage;
  }
  config.cutoff = static_cast<long>(cutoff);
  try {
    // --p and --p-range are exclusive within one source; the command line
    // overrides either one coming from a config file.
    auto on_command_line = [&](std::string_view flag) {
      for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == flag || (a.size() > flag.size() && a.substr(0, flag.size() + 1) == std::string(flag) + "=")) {
          return true;
        }
      }
      return false;
    };
    const bool cli_p = on_command_line("--p");
    const bool cli_range = on_command_line("--p-range");
    if (p && !p_range.empty()) {
      if (cli_p == cli_range) throw std::invalid_argument("--p and --p-range are mutually exclusive");
      if (cli_p) p_range.clear();
      else p.reset();
    }
    if (p) {
      config.p_min = config.p_max = *p;
    } else if (!p_range.empty()) {
      std::tie(config.p_min, config.p_max) = parse_p_range(p_range);
    } else if (config.command == Command::kVerify) {
      config.p_min = 2;
      config.p_max = 10;
    } else {
      const bool from_one = config.command == Command::kLambda || config.command == Command::kSpectrum;
      config.p_min = config.p_max = from_one ? 1 : 2;
    }
  } catch (const std::invalid_argument& e) {
    err << "gkw: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace gkw
