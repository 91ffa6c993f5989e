#pragma once

// Transfer operators of the map T_p acting on Chebyshev representations:
//
//   (G f)(x) = sum_{k>=p} p/(k+x)^2 f(p/(k+x))                 Gauss-Kuzmin-Wirsing
//   (U g)(x) = sum_{k>=p} h_k(x) g(p/(k+x)),  h_k = (p+x)/((k+x)(k+1+x))
//   (V f)(x) = sum_{k>=p} (k+1-p)/(k+1+x)^2 int_{p/(k+1+x)}^{p/(k+x)} f
//                         + p h_k(x)/(k+x)^2 f(p/(k+x))
//   (R phi)(x) = sum_{k>=p} phi(p/k) - phi(p/(k+x))              one step of the CDF recursion
//
// The series are cut at k = K. With tail correction on, the remainder
// sum_{k>K} is replaced by a Taylor expansion of the argument function at 0
// (orders 0..tail_order) whose k-sums are evaluated by Euler-Maclaurin.

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

#include "gkw/chebfun.hpp"
#include "gkw/gauss_map.hpp"

namespace gkw {

struct TruncationPolicy {
  long cutoff = 10000;
  bool tail_correction = true;
  double target_tol = 1e-10;
  int tail_order = 3;

  /// Throws std::invalid_argument unless cutoff >= p+1, target_tol > 0 and
  /// 0 <= tail_order <= 8.
  void validate(const MapParam& param) const;
};

/// Resolution diagnostic of one operator application.
struct ApplyStatus {
  double decay_ratio = 0.0;
  bool under_resolved = false;
};

enum class OperatorKind {
  kGkw,      // G
  kU,        // U in telescoped form g(0) + sum c_k (g(a_k) - g(a_{k+1}))
  kUDirect,  // U as the plain h_k-weighted sum
  kV,        // V, inner integrals through the antiderivative
  kCdfStep,  // R
};

/// sum_{k=first}^inf w(k) for a smooth w decaying at least like k^{-2}:
/// integral over [first, inf) plus Euler-Maclaurin endpoint corrections.
double euler_maclaurin_tail(const std::function<double(double)>& w, double first);

/// A transfer operator discretized at a fixed degree: the image of a series
/// is sampled at the Lobatto nodes and refitted, so the whole map is one
/// (N+1) x (N+1) matrix on Chebyshev coefficients, assembled once.
class TransferOperator {
 public:
  TransferOperator(OperatorKind kind, const MapParam& param, std::size_t degree,
                   const TruncationPolicy& policy = {});

  /// Inputs of another degree are re-expanded at this operator's degree.
  FuncRep apply(const FuncRep& f, ApplyStatus* status = nullptr) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& coeffs) const { return matrix_ * coeffs; }

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  OperatorKind kind() const noexcept { return kind_; }
  const MapParam& param() const noexcept { return param_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }
  std::size_t degree() const noexcept { return degree_; }

 private:
  OperatorKind kind_;
  MapParam param_;
  std::size_t degree_;
  TruncationPolicy policy_;
  Eigen::MatrixXd matrix_;
};

FuncRep apply_gkw(const MapParam& param, const FuncRep& f, const TruncationPolicy& policy = {},
                  ApplyStatus* status = nullptr);
FuncRep apply_U(const MapParam& param, const FuncRep& g, const TruncationPolicy& policy = {},
                ApplyStatus* status = nullptr);
FuncRep apply_V(const MapParam& param, const FuncRep& f, const TruncationPolicy& policy = {},
                ApplyStatus* status = nullptr);

/// V f computed as -(U F)' with F the antiderivative of f.
FuncRep apply_V_via_U(const MapParam& param, const FuncRep& f,
                      const TruncationPolicy& policy = {}, ApplyStatus* status = nullptr);

}  // namespace gkw
