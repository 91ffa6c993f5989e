#pragma once

// Chebyshev representation of continuous functions on [0,1]. Every operator
// in the library consumes and produces FuncRep values.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gkw {

inline constexpr std::size_t kDefaultDegree = 64;
inline constexpr std::size_t kDefaultGrid = 1001;

/// Chebyshev-Lobatto nodes x_j = (1 - cos(pi j / N)) / 2, ascending, j = 0..N.
std::vector<double> lobatto_nodes(std::size_t degree);

/// Uniform grid of `size` points on [0,1] including both endpoints.
std::vector<double> uniform_grid(std::size_t size);

/// Fills out[m] = T_m(2y - 1) for m = 0..out.size()-1.
void chebyshev_values(double y, std::span<double> out);

/// Functional c -> f^{(order)}(0) for a degree-`degree` series on [0,1].
std::vector<double> derivative_at_zero(std::size_t degree, int order);

/// Degree-N Chebyshev series on [0,1]. Immutable once built.
class FuncRep {
 public:
  FuncRep() : coeffs_(1, 0.0) {}

  /// Interpolant through the N+1 Chebyshev-Lobatto nodes.
  template <class F>
  static FuncRep fit(F&& f, std::size_t degree = kDefaultDegree) {
    if (degree < 2) throw std::invalid_argument("FuncRep::fit: degree must be at least 2");
    const auto nodes = lobatto_nodes(degree);
    std::vector<double> values(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) values[j] = f(nodes[j]);
    return from_samples(values);
  }

  /// Interpolant through values sampled at lobatto_nodes(values.size() - 1).
  static FuncRep from_samples(std::span<const double> values);
  static FuncRep from_coeffs(std::vector<double> coeffs);
  static FuncRep constant(double value, std::size_t degree = kDefaultDegree);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// Clenshaw evaluation; throws std::domain_error outside [0,1].
  double operator()(double x) const;
  double eval(double x) const { return (*this)(x); }
  std::vector<double> eval(std::span<const double> xs) const;
  std::vector<double> node_values() const;

  FuncRep derivative() const;
  /// Degree N+1 antiderivative vanishing at x = 0.
  FuncRep antiderivative() const;
  /// Clenshaw-Curtis value of the integral over [0,1].
  double integral() const;

  /// Re-expand at another degree (truncate or zero-pad the coefficients).
  FuncRep with_degree(std::size_t degree) const;

  /// max of the last three |coefficients| relative to the largest one.
  double decay_ratio() const;

  FuncRep& operator+=(const FuncRep& other);
  FuncRep& operator-=(const FuncRep& other);
  FuncRep& operator*=(double s);

  friend FuncRep operator+(FuncRep a, const FuncRep& b) { return a += b; }
  friend FuncRep operator-(FuncRep a, const FuncRep& b) { return a -= b; }
  friend FuncRep operator*(FuncRep a, double s) { return a *= s; }
  friend FuncRep operator*(double s, FuncRep a) { return a *= s; }

 private:
  explicit FuncRep(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::vector<double> coeffs_;
};

/// Values -> coefficients matrix of the Lobatto interpolant, row-major
/// (N+1) x (N+1).
std::vector<double> lobatto_transform(std::size_t degree);

/// Coefficients of the antiderivative (vanishing at 0) of a degree-N series,
/// as a row-major (N+2) x (N+1) matrix.
std::vector<double> antiderivative_matrix(std::size_t degree);

double osc(const FuncRep& f, std::size_t grid_size = kDefaultGrid);
double sup_norm(const FuncRep& f, std::size_t grid_size = kDefaultGrid);

/// Clenshaw-Curtis rule with n+1 points on [a,b].
double clenshaw_curtis(const std::function<double(double)>& f, double a, double b,
                       std::size_t n = 64);

}  // namespace gkw
