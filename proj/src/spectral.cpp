#include "gkw/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace gkw {

namespace {

constexpr double kThird = 1.0 / 3.0;

// Rows T_m(2x-1) for each grid point, so that values = E * coeffs.
Eigen::MatrixXd evaluation_matrix(const std::vector<double>& grid, std::size_t degree) {
  Eigen::MatrixXd e(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(degree + 1));
  std::vector<double> t(degree + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    chebyshev_values(grid[i], t);
    for (std::size_t m = 0; m <= degree; ++m) {
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) = t[m];
    }
  }
  return e;
}

Eigen::VectorXd to_vector(const FuncRep& f) {
  const auto c = f.coeffs();
  return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

FuncRep to_rep(const Eigen::VectorXd& v) {
  return FuncRep::from_coeffs(std::vector<double>(v.data(), v.data() + v.size()));
}

// Value of largest modulus (keeps its sign).
double signed_peak(const Eigen::VectorXd& values) {
  Eigen::Index idx = 0;
  values.cwiseAbs().maxCoeff(&idx);
  return values(idx);
}

// Median of |d_n / d_{n-1}| over the successive differences that sit well
// above the rounding floor.
double contraction_from_history(const std::vector<double>& estimates) {
  if (estimates.size() < 3) return 0.0;
  const double scale = std::abs(estimates.back());
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  std::vector<double> diffs;
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    diffs.push_back(std::abs(estimates[i] - estimates[i - 1]));
  }
  std::vector<double> ratios;
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (diffs[i] > floor && diffs[i - 1] > floor) ratios.push_back(diffs[i] / diffs[i - 1]);
  }
  if (ratios.empty()) return 0.0;
  // Skip the transient when enough ratios are available.
  const std::size_t skip = ratios.size() > 4 ? ratios.size() / 2 : 0;
  std::vector<double> tail(ratios.begin() + static_cast<std::ptrdiff_t>(skip), ratios.end());
  std::nth_element(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(tail.size() / 2),
                   tail.end());
  return tail[tail.size() / 2];
}

void require_p_at_least_two(const MapParam& param, const char* what) {
  if (param.p() < 2) throw std::invalid_argument(std::string(what) + ": requires p >= 2");
}

}  // namespace

Bounds bounds(const MapParam& param) {
  const double p = param.pd();
  const double base = p * p + 2.0 * p / 3.0;
  return {p / (2.0 * (base + 1.0 / 9.0)), p / (2.0 * (base - 2.0 / 9.0))};
}

long double rho(const MapParam& param, long double a) {
  const long double p = param.p();
  const long double u = p + a;
  const long double u2 = u * u;
  return 2.0L * u2 * u2 - (2.0L * p * p * p + p * p) * u - p * p * (p + 1.0L);
}

long double rho_expanded(const MapParam& param, long double a) {
  const long double p = param.p();
  const long double p2 = p * p;
  return (6.0L * a - 2.0L) * p2 * p + (12.0L * a * a - a - 1.0L) * p2 + 8.0L * a * a * a * p +
         2.0L * a * a * a * a;
}

long double alpha_root(const MapParam& param) {
  require_p_at_least_two(param, "alpha_root");
  long double lo = 0.32L;
  long double hi = 1.0L / 3.0L;
  long double f_lo = rho_expanded(param, lo);
  const long double f_hi = rho_expanded(param, hi);
  if (!(f_lo < 0.0L && f_hi > 0.0L)) {
    throw std::logic_error("alpha_root: rho does not change sign on [0.32, 1/3]");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const long double f_mid = rho_expanded(param, mid);
    if (f_mid == 0.0L) return mid;
    if ((f_mid < 0.0L) == (f_lo < 0.0L)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(rho_expanded(param, lo)) <= std::abs(rho_expanded(param, hi)) ? lo : hi;
}

AuxFunctions aux_functions(const MapParam& param, double a, std::size_t degree) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("aux_functions: a outside [0,1]");
  const double p = param.pd();
  AuxFunctions out;
  out.g = FuncRep::fit([=](double x) { return (p + x) / (p + a * x) - p / (p + (1.0 + a) * x); },
                       degree);
  out.H = FuncRep::fit([=](double x) { return 1.0 / (p + a + x); }, degree);
  out.xi = FuncRep::fit(
      [=](double x) {
        const double u = p + a * x;
        const double v = p + (1.0 + a) * x;
        return p * (1.0 - a) / (u * u) + p * (1.0 + a) / (v * v);
      },
      degree);
  return out;
}

MinMaxRatio min_max_ratio(const MapParam& param, double a) {
  require_p_at_least_two(param, "min_max_ratio");
  const long double alpha = alpha_root(param);
  // Accept the double nearest to alpha_p.
  if (static_cast<long double>(a) < alpha - 1e-15L || a > kThird + 1e-15) {
    throw std::invalid_argument("min_max_ratio: a must lie in [alpha_p, 1/3]");
  }
  const double p = param.pd();
  const double big_a = p - p * a - a * a;
  const double big_b = p * a + a + a * a;
  MinMaxRatio r;
  r.gamma = std::cbrt((1.0 + a) * big_b / ((1.0 - a) * big_a));
  r.x0 = (r.gamma - 1.0) * p / (1.0 + a - a * r.gamma);
  const double s = big_a * r.gamma + big_b;
  const double t = big_a + big_b / r.gamma;
  r.m = ((1.0 - a) * s * s + (1.0 + a) * t * t) / p;
  r.M = 2.0 / p * (p + a) * (p + a);
  return r;
}

AuxAnalysis aux_analysis(const MapParam& param, double a) {
  const auto mm = min_max_ratio(param, a);
  const auto b = bounds(param);
  return {param.p(), a, static_cast<double>(alpha_root(param)), mm.gamma, mm.x0, mm.m, mm.M, b.v,
          b.w};
}

FuncRep sandwich_function(const MapParam& param, std::size_t degree) {
  const double shift = param.pd() + kThird;
  return FuncRep::fit([=](double x) { return 1.0 / ((shift + x) * (shift + x)); }, degree);
}

SandwichReport verify_sandwich(const TransferOperator& v_op, std::size_t grid_size) {
  const MapParam& param = v_op.param();
  require_p_at_least_two(param, "verify_sandwich");
  const auto xi = sandwich_function(param, v_op.degree());
  const auto image = v_op.apply(xi);
  SandwichReport report;
  report.bounds = bounds(param);
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  const double shift = param.pd() + kThird;
  for (double x : uniform_grid(grid_size)) {
    // Divide by the exact xi so the ratio carries only the operator error.
    const double r = image(x) * (shift + x) * (shift + x);
    report.min_ratio = std::min(report.min_ratio, r);
    report.max_ratio = std::max(report.max_ratio, r);
  }
  report.passed = report.min_ratio >= report.bounds.v - kSandwichSlack &&
                  report.max_ratio <= report.bounds.w + kSandwichSlack;
  return report;
}

SandwichReport verify_sandwich(const MapParam& param, std::size_t grid_size,
                               const TruncationPolicy& policy) {
  return verify_sandwich(TransferOperator(OperatorKind::kV, param, kDefaultDegree, policy),
                         grid_size);
}

EigenResult lambda_by_ratio(const TransferOperator& u_op, const FuncRep& f0, std::size_t n_max,
                            double tol) {
  if (u_op.kind() != OperatorKind::kU && u_op.kind() != OperatorKind::kUDirect) {
    throw std::invalid_argument("lambda_by_ratio: operator must be U");
  }
  const std::size_t degree = u_op.degree();
  const auto grid = uniform_grid(kDefaultGrid);
  const auto slope = f0.derivative();
  for (double x : grid) {
    if (!(slope(x) > 0.0)) throw std::invalid_argument("lambda_by_ratio: f0 must be increasing");
  }

  auto normalize = [](const FuncRep& g) {
    const double g0 = g(0.0);
    const double span = g(1.0) - g0;
    return (g - FuncRep::constant(g0, g.degree())) * (1.0 / span);
  };

  FuncRep g = normalize(f0.with_degree(degree));
  std::vector<double> history;
  EigenResult result;
  result.p = u_op.param().p();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const FuncRep image = u_op.apply(g);
    const double diff = image(1.0) - image(0.0);
    if (std::abs(diff) < 1e-300) break;
    history.push_back(diff);
    g = normalize(image);
    result.iterations = n;
    if (history.size() >= 2 && std::abs(history.back() - history[history.size() - 2]) < tol) {
      result.converged = true;
      break;
    }
  }
  if (history.empty()) throw std::runtime_error("lambda_by_ratio: no usable iterate");

  result.lambda = -history.back();
  result.contraction_ratio = contraction_from_history(history);

  const FuncRep image = u_op.apply(g);
  const FuncRep shifted = image - FuncRep::constant(image(0.0), image.degree());
  result.residual = sup_norm(shifted + result.lambda * g);

  // (U^n f)' = (-1)^n V^n f', so the derivative of the iterate tracks psi.
  FuncRep psi = g.derivative();
  const auto values = psi.eval(grid);
  const double peak = signed_peak(
      Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
  result.psi = psi * (1.0 / peak);
  return result;
}

EigenResult lambda_by_ratio(const MapParam& param, const FuncRep& f0, std::size_t n_max,
                            double tol, const TruncationPolicy& policy) {
  return lambda_by_ratio(TransferOperator(OperatorKind::kU, param, f0.degree(), policy), f0, n_max,
                         tol);
}

EigenResult lambda_by_power(const TransferOperator& v_op, double tol, std::size_t n_max) {
  if (v_op.kind() != OperatorKind::kV) throw std::invalid_argument("lambda_by_power: operator must be V");
  const std::size_t degree = v_op.degree();
  const auto grid = uniform_grid(kDefaultGrid);
  const Eigen::MatrixXd eval = evaluation_matrix(grid, degree);
  const Eigen::MatrixXd& op = v_op.matrix();

  Eigen::VectorXd psi = to_vector(sandwich_function(v_op.param(), degree));
  psi /= signed_peak(eval * psi);

  EigenResult result;
  result.p = v_op.param().p();
  std::vector<double> history;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Eigen::VectorXd image = op * psi;
    const double lambda = signed_peak(eval * image);
    const double residual = (eval * (image - lambda * psi)).cwiseAbs().maxCoeff();
    history.push_back(lambda);
    psi = image / lambda;
    result.iterations = n;
    result.lambda = lambda;
    if (history.size() >= 2 && std::abs(lambda - history[history.size() - 2]) < tol &&
        residual < tol) {
      result.converged = true;
      break;
    }
  }
  const Eigen::VectorXd image = op * psi;
  result.residual = (eval * (image - result.lambda * psi)).cwiseAbs().maxCoeff();
  result.contraction_ratio = contraction_from_history(history);
  result.psi = to_rep(psi);
  return result;
}

EigenResult lambda_by_power(const MapParam& param, double tol, std::size_t n_max,
                            const TruncationPolicy& policy, std::size_t degree) {
  return lambda_by_power(TransferOperator(OperatorKind::kV, param, degree, policy), tol, n_max);
}

double functional_F(const MapParam& param, const FuncRep& f) {
  require_p_at_least_two(param, "functional_F");
  const double p = param.pd();
  const double b1 = p / (2.0 * p + 1.0);
  const double b3 = p / (p + 1.0);
  const double flat = p / ((2.0 * p + 1.0) * (2.0 * p + 1.0));
  const double first = clenshaw_curtis(
      [&](double y) { return p * y * (1.0 - y) / ((p + y) * (p + y)) * f(y); }, 0.0, b1);
  const double second = clenshaw_curtis([&](double y) { return flat * f(y); }, b1, 0.5);
  const double third = clenshaw_curtis(
      [&](double y) { return y * (p - (p + 1.0) * y) / (p * p) * f(y); }, 0.5, b3);
  return first + second + third;
}

double functional_F_xi_lower_bound(const MapParam& param) {
  const double p = param.pd();
  const double a = p + 5.0 / 6.0;
  const double b = p + 0.5;
  return (p - 0.25) / (8.0 * a * a * b * b);
}

GapCondition gap_condition(const TransferOperator& v_op) {
  const MapParam& param = v_op.param();
  const auto b = bounds(param);
  const auto xi = sandwich_function(param, v_op.degree());
  return {b.w * functional_F(param, xi) / sup_norm(v_op.apply(xi)), b.w - b.v};
}

double tau_bound(const MapParam& param, const EigenResult& eig) {
  return eig.lambda - functional_F(param, eig.psi) / sup_norm(eig.psi);
}

LEstimate functional_L(const TransferOperator& v_op, const FuncRep& f, const EigenResult& eig,
                       std::size_t n) {
  if (n == 0) {
    const double r = eig.contraction_ratio;
    n = (r > 0.0 && r < 1.0)
            ? static_cast<std::size_t>(std::ceil(std::log(1e-8) / std::log(std::max(r, 1e-3))))
            : 60;
    n = std::clamp<std::size_t>(n, 5, 2000);
  }
  const std::size_t degree = v_op.degree();
  const auto grid = uniform_grid(kDefaultGrid);
  const Eigen::MatrixXd eval = evaluation_matrix(grid, degree);
  Eigen::VectorXd h = to_vector(f.with_degree(degree));
  for (std::size_t i = 0; i < n; ++i) h = v_op.matrix() * h / eig.lambda;

  const Eigen::VectorXd num = eval * h;
  const Eigen::VectorXd den = eval * to_vector(eig.psi.with_degree(degree));
  std::vector<double> ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ratio[i] = num(static_cast<Eigen::Index>(i)) / den(static_cast<Eigen::Index>(i));
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  LEstimate out;
  out.spread = *hi - *lo;
  std::nth_element(ratio.begin(), ratio.begin() + static_cast<std::ptrdiff_t>(ratio.size() / 2),
                   ratio.end());
  out.value = ratio[ratio.size() / 2];
  out.iterations = n;
  out.converged = out.spread <= 1e-4;
  return out;
}

LEstimate functional_L(const MapParam& param, const FuncRep& f, const EigenResult& eig,
                       std::size_t n, const TruncationPolicy& policy) {
  return functional_L(TransferOperator(OperatorKind::kV, param, eig.psi.degree(), policy), f, eig,
                      n);
}

double conjectured_eigenvalue(const MapParam& param, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign * std::pow(param.fixed_point() * param.fixed_point() / param.pd(), nd);
}

namespace {

std::vector<std::complex<double>> sorted_eigenvalues(const TransferOperator& g_op) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(g_op.matrix(), false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum_collocation: eigen-solver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> values(ev.data(), ev.data() + ev.size());
  std::stable_sort(values.begin(), values.end(),
                   [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
  return values;
}

}  // namespace

SpectrumResult spectrum_collocation(const MapParam& param, std::size_t dim,
                                    const TruncationPolicy& policy) {
  if (dim < 8) throw std::invalid_argument("spectrum_collocation: dim must be at least 8");
  const TransferOperator g_op(OperatorKind::kGkw, param, dim - 1, policy);
  const double cutoff = 10.0 * std::numeric_limits<double>::epsilon() * g_op.matrix().norm();
  const auto values = sorted_eigenvalues(g_op);
  // An eigenvalue counts as resolved when a finer discretization reproduces it.
  const auto finer =
      sorted_eigenvalues(TransferOperator(OperatorKind::kGkw, param, dim + dim / 2 - 1, policy));

  SpectrumResult out;
  out.p = param.p();
  out.dim = dim;
  for (const auto& v : values) {
    double nearest = INFINITY;
    for (const auto& w : finer) nearest = std::min(nearest, std::abs(v - w));
    const bool resolved = nearest <= kSpectrumAgreement * std::abs(v);
    out.eigenvalues.push_back(v.real());
    out.moduli.push_back(std::abs(v));
    out.reliable.push_back(std::abs(v) >= cutoff);
    out.resolved.push_back(resolved);
    if (resolved) out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  }
  for (std::size_t n = 1; n <= dim / 4; ++n) {
    out.conjecture_ratios.push_back(out.eigenvalues[n - 1] / conjectured_eigenvalue(param, n));
  }
  return out;
}

}  // namespace gkw
