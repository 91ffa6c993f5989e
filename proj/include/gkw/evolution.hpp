#pragma once

// Distribution side: the CDFs phi_n of T_p^n started from an absolutely
// continuous measure, their error Delta_n = phi_n - Phi_p, the primitive
// Psi_p built from the eigenfunction and the limit profile Theta of
// Delta_n / (-lambda_p)^n. Also a Monte Carlo oracle for phi_n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gkw/chebfun.hpp"
#include "gkw/gauss_map.hpp"
#include "gkw/spectral.hpp"
#include "gkw/transfer.hpp"

namespace gkw {

struct EvolutionTrace {
  int p = 0;
  std::size_t steps = 0;
  std::vector<double> grid;
  std::vector<FuncRep> phi;    // phi[k] for k = 0..steps
  std::vector<FuncRep> delta;  // phi[k] - Phi_p
};

/// Applies phi -> sum_{k>=p} phi(p/k) - phi(p/(k+x)) n times.
///
/// Since Phi_p is fixed, the recursion is run on Delta = phi - Phi_p itself,
/// so small errors are not lost against the O(1) CDF. Delta(1) = 0 is exact
/// for the true operator; any numerical drift is removed after each step by
/// subtracting Delta(1) Phi_p. Throws std::invalid_argument unless phi0 is a
/// CDF (phi0(0) = 0, phi0(1) = 1, nondecreasing on the grid).
EvolutionTrace evolve_cdf(const MapParam& param, const FuncRep& phi0, std::size_t n,
                          const TruncationPolicy& policy = {});
EvolutionTrace evolve_cdf(const TransferOperator& r_op, const FuncRep& phi0, std::size_t n);

/// Identity CDF, the Lebesgue start.
FuncRep lebesgue_cdf(std::size_t degree = kDefaultDegree);

/// Delta_k of a trace; throws std::out_of_range past the last step.
const FuncRep& delta(const EvolutionTrace& trace, std::size_t k);

/// The flat limit of U-iterates of g, with the integral identity
/// int g/(p+t) = limit * (ln(p+1) - ln p) as an independent value.
struct FlatLimit {
  double value = 0.0;
  double integral_value = 0.0;
  std::size_t iterations = 0;
};

/// Iterates U until osc < 1e-10 and takes the grid mean. Throws
/// std::runtime_error if 200 steps do not flatten the iterate.
FlatLimit flat_limit(const TransferOperator& u_op, const FuncRep& g);

/// Psi(x) = int_0^x (psi~(t) - U^inf psi~) / (p+t) dt with psi~ the primitive
/// of psi. Vanishes at both endpoints and ((p+x) Psi')' = psi.
FuncRep build_Psi(const MapParam& param, const EigenResult& eig,
                  const TruncationPolicy& policy = {});

struct WirsingProfile {
  int p = 0;
  std::size_t n = 0;
  FuncRep Psi;
  FuncRep Theta;
  double L_g0 = 0.0;
  double residual = 0.0;  // sup |Theta - L_g0 Psi|
  bool converged = false;
};

inline constexpr double kThetaEndpointZone = 0.05;
inline constexpr double kThetaResidualLimit = 1e-3;

/// Theta = Delta_n / (-lambda)^n, and L_g0 as the grid median of Theta/Psi
/// away from the endpoints. The step n must make (tau/lambda)^n < 1e-4, where
/// tau/lambda is taken as the contraction ratio measured by the eigen-solver
/// (tau_bound is used when that is unavailable). Throws std::invalid_argument
/// otherwise or if n exceeds the trace.
WirsingProfile estimate_Theta(const EvolutionTrace& trace, const EigenResult& eig, std::size_t n,
                              const FuncRep& Psi);
WirsingProfile estimate_Theta(const EvolutionTrace& trace, const EigenResult& eig, std::size_t n,
                              const TruncationPolicy& policy = {});

/// Checks |f(y)| <= y(1-y)/2 sup|f''| on a uniform grid. The equality case
/// passes within a relative slack of 1e-8; the endpoint residuals of f plus
/// 1e-14 sup|f| are allowed as absolute slack.
struct InterpolationReport {
  bool passed = false;
  double worst_margin = 0.0;  // min over the grid of bound - |f|
  double second_derivative_sup = 0.0;
};

/// Throws std::invalid_argument unless |f(0)|, |f(1)| < 1e-10.
InterpolationReport interpolation_check(const FuncRep& f, std::size_t grid_size = kDefaultGrid);

/// D_n(y) = Delta_n(x) - (-lambda)^n L Psi(x) at x = p(exp(y (ln(p+1) - ln p)) - 1),
/// the remainder of the decomposition in the Phi_p variable.
FuncRep decomposition_remainder(const MapParam& param, const FuncRep& delta_n, double lambda,
                                std::size_t n, double L, const FuncRep& Psi);

/// Fraction of x0 ~ U(0,1) with T_p^n(x0) <= x for each x in xs. The k-th draw
/// depends only on (seed, k), so the result does not depend on threading.
/// Throws std::invalid_argument if samples < 10^4.
std::vector<double> montecarlo_cdf(const MapParam& param, std::size_t n, std::size_t samples,
                                   std::uint64_t seed, std::span<const double> xs);

/// Binomial standard error sqrt(F(1-F)/samples).
double binomial_se(double fraction, std::size_t samples);

}  // namespace gkw
