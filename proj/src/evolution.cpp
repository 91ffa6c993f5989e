#include "gkw/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gkw/parallel.hpp"

namespace gkw {

namespace {

constexpr double kCdfSlack = 1e-10;
constexpr double kFlatTol = 1e-10;
constexpr std::size_t kFlatMaxSteps = 200;

void require_cdf(const FuncRep& phi0, const std::vector<double>& grid) {
  if (std::abs(phi0(0.0)) > kCdfSlack || std::abs(phi0(1.0) - 1.0) > kCdfSlack) {
    throw std::invalid_argument("evolve_cdf: phi0 must satisfy phi0(0) = 0 and phi0(1) = 1");
  }
  const auto values = phi0.eval(grid);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1] - kCdfSlack) {
      throw std::invalid_argument("evolve_cdf: phi0 must be nondecreasing");
    }
  }
}

double grid_mean(const FuncRep& f) {
  const auto values = f.eval(uniform_grid(kDefaultGrid));
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty set");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// One splitmix64 step. Draw k hashes k, mixes in the seed and hashes again.
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_draw(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(seed ^ splitmix64(index));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

FuncRep lebesgue_cdf(std::size_t degree) {
  return FuncRep::fit([](double x) { return x; }, degree);
}

EvolutionTrace evolve_cdf(const TransferOperator& r_op, const FuncRep& phi0, std::size_t n) {
  if (r_op.kind() != OperatorKind::kCdfStep) {
    throw std::invalid_argument("evolve_cdf: operator must be the CDF step");
  }
  const MapParam& param = r_op.param();
  EvolutionTrace trace;
  trace.p = param.p();
  trace.steps = n;
  trace.grid = uniform_grid(kDefaultGrid);
  require_cdf(phi0, trace.grid);

  const std::size_t degree = r_op.degree();
  const FuncRep limit = FuncRep::fit([&](double x) { return stationary_cdf(param, x); }, degree);
  FuncRep d = phi0.with_degree(degree) - limit;
  trace.phi.reserve(n + 1);
  trace.delta.reserve(n + 1);
  trace.phi.push_back(limit + d);
  trace.delta.push_back(d);
  for (std::size_t k = 1; k <= n; ++k) {
    d = r_op.apply(d);
    d -= d(1.0) * limit;
    trace.phi.push_back(limit + d);
    trace.delta.push_back(d);
  }
  return trace;
}

EvolutionTrace evolve_cdf(const MapParam& param, const FuncRep& phi0, std::size_t n,
                          const TruncationPolicy& policy) {
  return evolve_cdf(TransferOperator(OperatorKind::kCdfStep, param, phi0.degree(), policy), phi0,
                    n);
}

const FuncRep& delta(const EvolutionTrace& trace, std::size_t k) {
  if (k > trace.steps || k >= trace.delta.size()) throw std::out_of_range("delta: step past the trace");
  return trace.delta[k];
}

FlatLimit flat_limit(const TransferOperator& u_op, const FuncRep& g) {
  if (u_op.kind() != OperatorKind::kU && u_op.kind() != OperatorKind::kUDirect) {
    throw std::invalid_argument("flat_limit: operator must be U");
  }
  const MapParam& param = u_op.param();
  FlatLimit out;
  const double p = param.pd();
  out.integral_value =
      clenshaw_curtis([&](double t) { return g(t) / (p + t); }, 0.0, 1.0, 128) / param.log_norm();

  FuncRep h = g.with_degree(u_op.degree());
  for (std::size_t n = 0; n <= kFlatMaxSteps; ++n) {
    if (osc(h) < kFlatTol) {
      out.value = grid_mean(h);
      out.iterations = n;
      return out;
    }
    h = u_op.apply(h);
  }
  throw std::runtime_error("flat_limit: U-iterates did not flatten within 200 steps");
}

FuncRep build_Psi(const MapParam& param, const EigenResult& eig, const TruncationPolicy& policy) {
  if (!eig.converged) throw std::invalid_argument("build_Psi: eigenpair not converged");
  const FuncRep primitive = eig.psi.antiderivative();
  const std::size_t degree = primitive.degree();
  const FlatLimit c = flat_limit(TransferOperator(OperatorKind::kU, param, degree, policy), primitive);
  const double p = param.pd();
  const FuncRep integrand =
      FuncRep::fit([&](double t) { return (primitive(t) - c.value) / (p + t); }, degree);
  return integrand.antiderivative().with_degree(degree);
}

WirsingProfile estimate_Theta(const EvolutionTrace& trace, const EigenResult& eig, std::size_t n,
                              const FuncRep& Psi) {
  if (n > trace.steps) throw std::invalid_argument("estimate_Theta: n past the trace");
  const MapParam param(trace.p);
  double rate = eig.contraction_ratio;
  if (!(rate > 0.0 && rate < 1.0)) rate = tau_bound(param, eig) / eig.lambda;
  if (std::pow(rate, static_cast<double>(n)) >= 1e-4) {
    throw std::invalid_argument("estimate_Theta: n too small for the decomposition to settle");
  }

  WirsingProfile out;
  out.p = trace.p;
  out.n = n;
  out.Psi = Psi;
  out.Theta = delta(trace, n) * std::pow(-eig.lambda, -static_cast<double>(n));

  std::vector<double> ratios;
  for (double x : trace.grid) {
    if (x < kThetaEndpointZone || x > 1.0 - kThetaEndpointZone) continue;
    ratios.push_back(out.Theta(x) / Psi(x));
  }
  out.L_g0 = median(std::move(ratios));
  out.residual = sup_norm(out.Theta - out.L_g0 * Psi);
  out.converged = out.residual <= kThetaResidualLimit;
  return out;
}

WirsingProfile estimate_Theta(const EvolutionTrace& trace, const EigenResult& eig, std::size_t n,
                              const TruncationPolicy& policy) {
  return estimate_Theta(trace, eig, n, build_Psi(MapParam(trace.p), eig, policy));
}

InterpolationReport interpolation_check(const FuncRep& f, std::size_t grid_size) {
  if (std::abs(f(0.0)) >= 1e-10 || std::abs(f(1.0)) >= 1e-10) {
    throw std::invalid_argument("interpolation_check: f must vanish at both endpoints");
  }
  const auto grid = uniform_grid(grid_size);
  InterpolationReport out;
  const FuncRep f2 = f.derivative().derivative();
  for (double y : grid) out.second_derivative_sup = std::max(out.second_derivative_sup, std::abs(f2(y)));
  // The endpoint residuals admitted by the precondition carry over as an
  // absolute slack, next to a rounding term relative to the size of f.
  const double slack = std::max(std::abs(f(0.0)), std::abs(f(1.0))) + 1e-14 * sup_norm(f, grid_size);
  out.worst_margin = INFINITY;
  out.passed = true;
  for (double y : grid) {
    const double bound = 0.5 * y * (1.0 - y) * out.second_derivative_sup;
    const double value = std::abs(f(y));
    out.worst_margin = std::min(out.worst_margin, bound - value);
    if (value > bound * (1.0 + 1e-8) + slack) out.passed = false;
  }
  return out;
}

FuncRep decomposition_remainder(const MapParam& param, const FuncRep& delta_n, double lambda,
                                std::size_t n, double L, const FuncRep& Psi) {
  const double p = param.pd();
  const double log_norm = param.log_norm();
  const double scale = std::pow(-lambda, static_cast<double>(n)) * L;
  return FuncRep::fit(
      [&](double y) {
        const double x = std::clamp(p * std::expm1(y * log_norm), 0.0, 1.0);
        return delta_n(x) - scale * Psi(x);
      },
      std::max(delta_n.degree(), Psi.degree()));
}

std::vector<double> montecarlo_cdf(const MapParam& param, std::size_t n, std::size_t samples,
                                   std::uint64_t seed, std::span<const double> xs) {
  if (samples < 10'000) throw std::invalid_argument("montecarlo_cdf: at least 10^4 samples required");
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> counts(chunks, std::vector<std::uint64_t>(xs.size(), 0));
  const double p = param.pd();
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    auto& local = counts[c];
    for (std::size_t i = c * kChunk; i < end; ++i) {
      double x = uniform_draw(seed, i);
      for (std::size_t step = 0; step < n && x > 0.0; ++step) {
        if (x < 1e-300) {
          x = 0.0;
          break;
        }
        const double q = p / x;
        x = q - std::floor(q);
      }
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (x <= xs[j]) ++local[j];
      }
    }
  });
  std::vector<double> out(xs.size(), 0.0);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::uint64_t total = 0;
    for (const auto& local : counts) total += local[j];
    out[j] = static_cast<double>(total) / static_cast<double>(samples);
  }
  return out;
}

double binomial_se(double fraction, std::size_t samples) {
  return std::sqrt(std::max(fraction * (1.0 - fraction), 0.0) / static_cast<double>(samples));
}

}  // namespace gkw
