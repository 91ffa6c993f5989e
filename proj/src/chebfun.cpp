#include "gkw/chebfun.hpp"

#include <algorithm>
#include <numbers>

namespace gkw {

std::vector<double> lobatto_nodes(std::size_t degree) {
  std::vector<double> nodes(degree + 1);
  if (degree == 0) {
    nodes[0] = 0.5;
    return nodes;
  }
  const double n = static_cast<double>(degree);
  for (std::size_t j = 0; j <= degree; ++j) {
    // sin^2 form keeps the nodes near 0 accurate to full relative precision.
    const double s = std::sin(0.5 * std::numbers::pi * static_cast<double>(j) / n);
    nodes[j] = s * s;
  }
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  return nodes;
}

std::vector<double> uniform_grid(std::size_t size) {
  if (size < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> grid(size);
  const double h = 1.0 / static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i) grid[i] = static_cast<double>(i) * h;
  grid.back() = 1.0;
  return grid;
}

void chebyshev_values(double y, std::span<double> out) {
  if (out.empty()) return;
  const double s = 2.0 * y - 1.0;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = s;
  const double two_s = 2.0 * s;
  for (std::size_t m = 2; m < out.size(); ++m) out[m] = two_s * out[m - 1] - out[m - 2];
}

std::vector<double> derivative_at_zero(std::size_t degree, int order) {
  std::vector<double> d(degree + 1);
  const double scale = std::ldexp(1.0, order);
  for (std::size_t m = 0; m <= degree; ++m) {
    const double md = static_cast<double>(m);
    double v = ((m + static_cast<std::size_t>(order)) % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < order; ++i) {
      v *= (md * md - static_cast<double>(i * i)) / static_cast<double>(2 * i + 1);
    }
    d[m] = scale * v;
  }
  return d;
}

std::vector<double> lobatto_transform(std::size_t degree) {
  const std::size_t n1 = degree + 1;
  std::vector<double> c(n1 * n1, 0.0);
  if (degree == 0) {
    c[0] = 1.0;
    return c;
  }
  const std::size_t two_n = 2 * degree;
  const double inv_n = 1.0 / static_cast<double>(degree);
  for (std::size_t m = 0; m <= degree; ++m) {
    const double row_scale = (m == 0 || m == degree) ? inv_n : 2.0 * inv_n;
    for (std::size_t j = 0; j <= degree; ++j) {
      // Node j sits at s = cos(pi (N-j)/N).
      const std::size_t idx = (m * (degree - j)) % two_n;
      const double w = (j == 0 || j == degree) ? 0.5 : 1.0;
      c[m * n1 + j] = row_scale * w *
                      std::cos(std::numbers::pi * static_cast<double>(idx) * inv_n);
    }
  }
  return c;
}

std::vector<double> antiderivative_matrix(std::size_t degree) {
  const std::size_t rows = degree + 2;
  const std::size_t cols = degree + 1;
  std::vector<double> a(rows * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * cols + c]; };
  // On s in [-1,1]: int T_0 = T_1, int T_1 = T_2/4,
  // int T_m = T_{m+1}/(2(m+1)) - T_{m-1}/(2(m-1)); dx = ds/2.
  for (std::size_t m = 0; m <= degree; ++m) {
    if (m == 0) {
      at(1, 0) += 0.5;
    } else if (m == 1) {
      at(2, 1) += 0.5 * 0.25;
    } else {
      at(m + 1, m) += 0.5 / (2.0 * static_cast<double>(m + 1));
      at(m - 1, m) -= 0.5 / (2.0 * static_cast<double>(m - 1));
    }
  }
  // Fix the constant so the value at x = 0 (s = -1) vanishes.
  for (std::size_t c = 0; c < cols; ++c) {
    double v = 0.0;
    for (std::size_t r = 1; r < rows; ++r) v += (r % 2 == 0 ? 1.0 : -1.0) * at(r, c);
    at(0, c) = -v;
  }
  return a;
}

FuncRep FuncRep::from_samples(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("FuncRep::from_samples: no samples");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("FuncRep: non-finite sample value");
  }
  const std::size_t degree = values.size() - 1;
  const auto t = lobatto_transform(degree);
  std::vector<double> coeffs(degree + 1, 0.0);
  for (std::size_t m = 0; m <= degree; ++m) {
    double acc = 0.0;
    const double* row = t.data() + m * (degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) acc += row[j] * values[j];
    coeffs[m] = acc;
  }
  return FuncRep(std::move(coeffs));
}

FuncRep FuncRep::from_coeffs(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("FuncRep::from_coeffs: no coefficients");
  for (double v : coeffs) {
    if (!std::isfinite(v)) throw std::domain_error("FuncRep: non-finite coefficient");
  }
  return FuncRep(std::move(coeffs));
}

FuncRep FuncRep::constant(double value, std::size_t degree) {
  std::vector<double> coeffs(degree + 1, 0.0);
  coeffs[0] = value;
  return FuncRep(std::move(coeffs));
}

double FuncRep::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("FuncRep: evaluation outside [0,1]");
  const double s = 2.0 * x - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t m = coeffs_.size() - 1; m >= 1; --m) {
    const double b0 = coeffs_[m] + 2.0 * s * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + s * b1 - b2;
}

std::vector<double> FuncRep::eval(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [this](double x) { return (*this)(x); });
  return out;
}

std::vector<double> FuncRep::node_values() const { return eval(lobatto_nodes(degree())); }

FuncRep FuncRep::derivative() const {
  const std::size_t n = degree();
  if (n == 0) return FuncRep::constant(0.0, 0);
  // d_{k-1} = d_{k+1} + 2k c_k on [-1,1], with d_N = d_{N+1} = 0.
  std::vector<double> d(n + 2, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    d[k - 1] = d[k + 1] + 2.0 * static_cast<double>(k) * coeffs_[k];
  }
  d[0] *= 0.5;
  d.resize(n);
  for (double& v : d) v *= 2.0;  // dx = ds/2
  return FuncRep(std::move(d));
}

FuncRep FuncRep::antiderivative() const {
  const std::size_t n = degree();
  const auto a = antiderivative_matrix(n);
  std::vector<double> out(n + 2, 0.0);
  for (std::size_t r = 0; r < n + 2; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c <= n; ++c) acc += a[r * (n + 1) + c] * coeffs_[c];
    out[r] = acc;
  }
  return FuncRep(std::move(out));
}

double FuncRep::integral() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < coeffs_.size(); m += 2) {
    const double md = static_cast<double>(m);
    acc += coeffs_[m] / (1.0 - md * md);
  }
  return acc;  // 2/(1-m^2) on [-1,1], halved for [0,1]
}

FuncRep FuncRep::with_degree(std::size_t degree) const {
  std::vector<double> c(degree + 1, 0.0);
  std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
  return FuncRep(std::move(c));
}

double FuncRep::decay_ratio() const {
  double peak = 0.0;
  for (double c : coeffs_) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  double tail = 0.0;
  const std::size_t n = coeffs_.size();
  for (std::size_t m = n > 3 ? n - 3 : 0; m < n; ++m) tail = std::max(tail, std::abs(coeffs_[m]));
  return tail / peak;
}

FuncRep& FuncRep::operator+=(const FuncRep& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] += other.coeffs_[m];
  return *this;
}

FuncRep& FuncRep::operator-=(const FuncRep& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] -= other.coeffs_[m];
  return *this;
}

FuncRep& FuncRep::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

double osc(const FuncRep& f, std::size_t grid_size) {
  const auto v = f.eval(uniform_grid(grid_size));
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

double sup_norm(const FuncRep& f, std::size_t grid_size) {
  double best = 0.0;
  for (double v : f.eval(uniform_grid(grid_size))) best = std::max(best, std::abs(v));
  return best;
}

double clenshaw_curtis(const std::function<double(double)>& f, double a, double b,
                       std::size_t n) {
  if (!(b >= a)) throw std::invalid_argument("clenshaw_curtis: empty interval");
  if (a == b) return 0.0;
  const auto rep = FuncRep::fit([&](double t) { return f(a + (b - a) * t); }, n);
  return (b - a) * rep.integral();
}

}  // namespace gkw
