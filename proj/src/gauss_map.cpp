#include "gkw/gauss_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkw {

namespace {

constexpr double kSmallestArgument = 1e-300;
constexpr int kZetaExplicitTerms = 10000;

void require_unit_interval(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::domain_error(std::string(what) + ": argument outside [0,1]");
  }
}

}  // namespace

MapParam::MapParam(int p) : p_(p) {
  if (p < 1) {
    throw std::invalid_argument("MapParam: p must be a positive integer");
  }
  const double pd = static_cast<double>(p);
  log_norm_ = std::log1p(1.0 / pd);
  // 2p / (sqrt(p^2+4p) + p) avoids the cancellation in (sqrt(p^2+4p) - p)/2.
  fixed_point_ = 2.0 * pd / (std::sqrt(pd * pd + 4.0 * pd) + pd);
}

double apply_map(const MapParam& param, double x) {
  require_unit_interval(x, "apply_map");
  if (x == 0.0) return 0.0;
  if (x < kSmallestArgument) {
    throw std::domain_error("apply_map: argument below 1e-300");
  }
  const double q = param.pd() / x;
  return q - std::floor(q);
}

DigitSeq digits(const MapParam& param, double x, std::size_t n) {
  if (!std::isfinite(x) || x <= 0.0 || x > 1.0) {
    throw std::domain_error("digits: argument outside (0,1]");
  }
  DigitSeq seq;
  seq.p = param.p();
  seq.digits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x == 0.0 || x < kSmallestArgument) break;
    const double q = param.pd() / x;
    const double a = std::floor(q);
    seq.digits.push_back(static_cast<std::int64_t>(a));
    x = q - a;
  }
  return seq;
}

double from_digits(const DigitSeq& seq) {
  const double pd = static_cast<double>(seq.p);
  double tail = 0.0;
  for (auto it = seq.digits.rbegin(); it != seq.digits.rend(); ++it) {
    tail = pd / (static_cast<double>(*it) + tail);
  }
  return tail;
}

double stationary_cdf(const MapParam& param, double x) {
  require_unit_interval(x, "stationary_cdf");
  return std::log1p(x / param.pd()) / param.log_norm();
}

double stationary_density(const MapParam& param, double x) {
  require_unit_interval(x, "stationary_density");
  return 1.0 / (param.log_norm() * (param.pd() + x));
}

double hurwitz_zeta(int s, const MapParam& param) {
  if (s != 2 && s != 3) {
    throw std::invalid_argument("hurwitz_zeta: only s = 2 and s = 3 are supported");
  }
  const long first = param.p();
  const long cut = first + kZetaExplicitTerms;

  // Smallest terms first, Neumaier-compensated.
  double sum = 0.0;
  double comp = 0.0;
  for (long k = cut - 1; k >= first; --k) {
    const double term = std::pow(static_cast<double>(k), -s);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }

  // sum_{k>=M} k^{-s} = M^{1-s}/(s-1) + M^{-s}/2 + B2/2! s M^{-s-1}
  //                     + B4/4! s(s+1)(s+2) M^{-s-3} + ...
  const double m = static_cast<double>(cut);
  const double sd = static_cast<double>(s);
  const double tail = std::pow(m, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(m, -sd) +
                      sd / 12.0 * std::pow(m, -sd - 1.0) -
                      sd * (sd + 1.0) * (sd + 2.0) / 720.0 * std::pow(m, -sd - 3.0);
  return sum + (comp + tail);
}

double kuzmin_rate(const MapParam& param) {
  const double pd = param.pd();
  return 2.0 * pd * pd * hurwitz_zeta(3, param) - pd * hurwitz_zeta(2, param);
}

double kuzmin_rate_bound(const MapParam& param) {
  const double pd = param.pd();
  return 1.0 / (2.0 * pd) + 3.0 / (8.0 * pd * pd);
}

}  // namespace gkw
