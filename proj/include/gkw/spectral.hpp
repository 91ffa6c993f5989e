#pragma once

// The leading eigenvalue lambda_p of V (equivalently minus the second
// eigenvalue of the Gauss-Kuzmin-Wirsing operator): the auxiliary-function
// bounds, two independent estimators, the functionals F and L, the gap bound
// on tau_p, and a collocation spectrum of G.

#include <cstddef>
#include <vector>

#include "gkw/chebfun.hpp"
#include "gkw/gauss_map.hpp"
#include "gkw/transfer.hpp"

namespace gkw {

struct Bounds {
  double v = 0.0;  // p / (2(p^2 + 2p/3 + 1/9))
  double w = 0.0;  // p / (2(p^2 + 2p/3 - 2/9))
};

Bounds bounds(const MapParam& param);

/// The quartic 2(p+a)^4 - (2p^3+p^2)(p+a) - p^2(p+1), evaluated in extended
/// precision.
long double rho(const MapParam& param, long double a);

/// Same polynomial expanded in a:
/// (6a-2)p^3 + (12a^2-a-1)p^2 + 8a^3 p + 2a^4.
long double rho_expanded(const MapParam& param, long double a);

/// Unique positive root of rho, by bisection on [0.32, 1/3] (p >= 2).
/// Throws std::logic_error if the bracket does not change sign.
long double alpha_root(const MapParam& param);

/// g_a, H_a = U g_a and xi_a = g_a' fitted at the given degree.
struct AuxFunctions {
  FuncRep g;
  FuncRep H;
  FuncRep xi;
};

AuxFunctions aux_functions(const MapParam& param, double a, std::size_t degree = kDefaultDegree);

/// Extremes of xi_a / V xi_a = xi_a(x) (p+a+x)^2 over [0,1] for a in [alpha_p, 1/3]:
/// maximum M at x = 0, minimum m at the interior point x0.
struct MinMaxRatio {
  double m = 0.0;
  double M = 0.0;
  double x0 = 0.0;
  double gamma = 0.0;
};

MinMaxRatio min_max_ratio(const MapParam& param, double a);

struct AuxAnalysis {
  int p = 0;
  double a = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double x0 = 0.0;
  double m_a = 0.0;
  double M_a = 0.0;
  double v_p = 0.0;
  double w_p = 0.0;
};

AuxAnalysis aux_analysis(const MapParam& param, double a);

/// xi(x) = 1/(p + 1/3 + x)^2, the explicit test function of the sandwich.
FuncRep sandwich_function(const MapParam& param, std::size_t degree = kDefaultDegree);

inline constexpr double kSandwichSlack = 1e-9;

struct SandwichReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  Bounds bounds;
  bool passed = false;
};

/// Extremes of (V xi)/xi on a uniform grid; passes iff they lie in
/// [v_p, w_p] up to kSandwichSlack.
SandwichReport verify_sandwich(const MapParam& param, std::size_t grid_size = kDefaultGrid,
                               const TruncationPolicy& policy = {});
SandwichReport verify_sandwich(const TransferOperator& v_op, std::size_t grid_size = kDefaultGrid);

struct EigenResult {
  int p = 0;
  double lambda = 0.0;
  FuncRep psi;              // positive, sup norm 1
  double residual = 0.0;    // sup |V psi - lambda psi| (see estimator docs)
  double contraction_ratio = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Endpoint-difference ratio of successive U-iterates, started from f0 with
/// f0' > 0. Iterates are shifted and rescaled each step (U fixes constants),
/// which leaves the ratio unchanged but avoids cancellation. psi is the
/// normalized derivative of the last iterate; the residual is measured in the
/// U picture, sup |U g - (U g)(0) + lambda g| for the normalized iterate g.
EigenResult lambda_by_ratio(const MapParam& param, const FuncRep& f0, std::size_t n_max = 200,
                            double tol = 1e-10, const TruncationPolicy& policy = {});
EigenResult lambda_by_ratio(const TransferOperator& u_op, const FuncRep& f0,
                            std::size_t n_max = 200, double tol = 1e-10);

/// Power iteration on V from the sandwich function with sup-norm
/// normalization; stops once both the eigenvalue change and the residual are
/// below tol.
EigenResult lambda_by_power(const MapParam& param, double tol = 1e-10, std::size_t n_max = 500,
                            const TruncationPolicy& policy = {},
                            std::size_t degree = kDefaultDegree);
EigenResult lambda_by_power(const TransferOperator& v_op, double tol = 1e-10,
                            std::size_t n_max = 500);

/// Piecewise positive functional bounded above by V f pointwise (p >= 2).
double functional_F(const MapParam& param, const FuncRep& f);

/// Closed-form lower bound (p - 1/4) / (8 (p+5/6)^2 (p+1/2)^2) for F(xi).
double functional_F_xi_lower_bound(const MapParam& param);

/// w_p F(xi)/||V xi|| and w_p - v_p; the first must exceed the second.
struct GapCondition {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs > rhs; }
};

GapCondition gap_condition(const TransferOperator& v_op);

/// lambda - F(psi)/||psi||, an upper bound for the second-order rate tau_p.
double tau_bound(const MapParam& param, const EigenResult& eig);

inline constexpr double kTauRatioBound = 189.0 / 198.0;

struct LEstimate {
  double value = 0.0;
  double spread = 0.0;  // max - min of the pointwise ratio on the grid
  std::size_t iterations = 0;
  bool converged = false;
};

/// L(f) = lim (V^n f)(x) / (lambda^n psi(x)), taken as the grid median of the
/// ratio after n steps. n = 0 picks n with contraction_ratio^n < 1e-8.
LEstimate functional_L(const MapParam& param, const FuncRep& f, const EigenResult& eig,
                       std::size_t n = 0, const TruncationPolicy& policy = {});
LEstimate functional_L(const TransferOperator& v_op, const FuncRep& f, const EigenResult& eig,
                       std::size_t n = 0);

struct SpectrumResult {
  int p = 0;
  std::size_t dim = 0;
  std::vector<double> eigenvalues;  // real parts, sorted by decreasing modulus
  std::vector<double> moduli;
  std::vector<bool> reliable;       // |value| above 10 eps ||M||
  std::vector<bool> resolved;       // reproduced at 3/2 the dimension
  std::vector<double> conjecture_ratios;  // n = 1 .. dim/4
  double max_imag = 0.0;                  // largest |imaginary part| among resolved ones
};

inline constexpr double kSpectrumAgreement = 1e-6;

/// Eigenvalues of the dim x dim Chebyshev-coefficient matrix of G.
SpectrumResult spectrum_collocation(const MapParam& param, std::size_t dim = 64,
                                    const TruncationPolicy& policy = {});

/// (-1)^{n-1} p^{-n} phi_p^{2n}, the conjectured size of the n-th eigenvalue.
double conjectured_eigenvalue(const MapParam& param, std::size_t n);

}  // namespace gkw
