#pragma once

// The generalized Gauss map x -> {p/x} on [0,1], its invariant measure and
// the scalar constants attached to it.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gkw {

/// The integer parameter p >= 1 of the map together with the constants every
/// other module derives from it.
class MapParam {
 public:
  explicit MapParam(int p);

  int p() const noexcept { return p_; }
  double pd() const noexcept { return static_cast<double>(p_); }

  /// ln(p+1) - ln(p), the normalizer of the invariant density.
  double log_norm() const noexcept { return log_norm_; }

  /// Positive root of x = p/(p+x).
  double fixed_point() const noexcept { return fixed_point_; }

 private:
  int p_;
  double log_norm_;
  double fixed_point_;
};

/// Partial quotients of an orbit: a_i = floor(p / x_{i-1}), every a_i >= p.
struct DigitSeq {
  int p = 1;
  std::vector<std::int64_t> digits;
};

/// {p/x} for x in (0,1], 0 at x = 0. Throws std::domain_error for x outside
/// [0,1], non-finite x, or 0 < x < 1e-300.
double apply_map(const MapParam& param, double x);

/// First n digits of the orbit of x; shorter if an iterate lands exactly on 0.
DigitSeq digits(const MapParam& param, double x, std::size_t n);

/// Value of the finite continued fraction p/(a_1 + p/(a_2 + ... + p/a_n)).
double from_digits(const DigitSeq& seq);

/// Phi_p(x) = (ln(p+x) - ln p) / (ln(p+1) - ln p).
double stationary_cdf(const MapParam& param, double x);

/// eta_p(x) = 1 / ((ln(p+1) - ln p)(p+x)).
double stationary_density(const MapParam& param, double x);

/// Hurwitz zeta sum_{k>=p} k^{-s} for s in {2,3}: explicit partial sum over
/// 10^4 terms followed by an Euler-Maclaurin tail.
double hurwitz_zeta(int s, const MapParam& param);

/// Levy-type rate Q_p = 2 p^2 zeta(3,p) - p zeta(2,p).
double kuzmin_rate(const MapParam& param);

/// The closed-form majorant 1/(2p) + 3/(8p^2) of Q_p.
double kuzmin_rate_bound(const MapParam& param);

}  // namespace gkw
