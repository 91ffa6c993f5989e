#include "gkw/transfer.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <stdexcept>
#include <vector>

#include "gkw/parallel.hpp"

namespace gkw {

namespace {

constexpr int kMaxTailOrder = 8;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// sum_{i=0}^{j-1} u^i v^{j-1-i}, so that u^j - v^j = (u - v) * power_gap(u, v, j).
double power_gap(double u, double v, int j) {
  double acc = 0.0;
  double ui = 1.0;
  for (int i = 0; i < j; ++i) {
    acc += ui * std::pow(v, j - 1 - i);
    ui *= u;
  }
  return acc;
}

struct RowContext {
  double p;
  double x;
  long first;
  long cutoff;
  std::size_t degree;
};

// Weight of the j-th Taylor coefficient f^{(j)}(0)/j! in term k (continuous k = t).
std::function<double(double)> tail_weight(OperatorKind kind, const RowContext& c, int j) {
  const double p = c.p;
  const double x = c.x;
  switch (kind) {
    case OperatorKind::kGkw:
      return [=](double t) {
        const double a = p / (t + x);
        return p / ((t + x) * (t + x)) * std::pow(a, j);
      };
    case OperatorKind::kUDirect:
      return [=](double t) {
        const double a = p / (t + x);
        return (p + x) / ((t + x) * (t + 1.0 + x)) * std::pow(a, j);
      };
    case OperatorKind::kU:
      return [=](double t) {
        if (j == 0) return 0.0;
        const double a = p / (t + x);
        const double b = p / (t + 1.0 + x);
        const double gap = p / ((t + x) * (t + 1.0 + x));
        return (t + 1.0 - p) / (t + 1.0 + x) * gap * power_gap(a, b, j);
      };
    case OperatorKind::kV:
      return [=](double t) {
        const double a = p / (t + x);
        const double b = p / (t + 1.0 + x);
        const double gap = p / ((t + x) * (t + 1.0 + x));
        const double alpha = (t + 1.0 - p) / ((t + 1.0 + x) * (t + 1.0 + x));
        const double beta = p * (p + x) / ((t + x) * (t + x) * (t + x) * (t + 1.0 + x));
        return alpha * gap * power_gap(a, b, j + 1) / static_cast<double>(j + 1) +
               beta * std::pow(a, j);
      };
    case OperatorKind::kCdfStep:
      return [=](double t) {
        if (j == 0) return 0.0;
        const double u = p / t;
        const double v = p / (t + x);
        return p * x / (t * (t + x)) * power_gap(u, v, j);
      };
  }
  return [](double) { return 0.0; };
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_diff(double a, const double* x, const double* z, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * (x[i] - z[i]);
}

// Row of the node-evaluation functional at c.x acting on input coefficients.
std::vector<double> assemble_row(OperatorKind kind, const RowContext& c,
                                 const std::vector<double>& antideriv,
                                 const TruncationPolicy& policy) {
  const std::size_t n1 = c.degree + 1;
  const double p = c.p;
  const double x = c.x;
  std::vector<double> row(n1, 0.0);

  switch (kind) {
    case OperatorKind::kGkw: {
      std::vector<double> t(n1);
      for (long k = c.first; k <= c.cutoff; ++k) {
        const double kx = static_cast<double>(k) + x;
        chebyshev_values(p / kx, t);
        axpy(p / (kx * kx), t.data(), row.data(), n1);
      }
      break;
    }
    case OperatorKind::kUDirect: {
      std::vector<double> t(n1);
      for (long k = c.first; k <= c.cutoff; ++k) {
        const double kx = static_cast<double>(k) + x;
        chebyshev_values(p / kx, t);
        axpy((p + x) / (kx * (kx + 1.0)), t.data(), row.data(), n1);
      }
      break;
    }
    case OperatorKind::kU: {
      std::vector<double> cur(n1);
      std::vector<double> next(n1);
      chebyshev_values(0.0, row);
      chebyshev_values(p / (static_cast<double>(c.first) + x), cur);
      for (long k = c.first; k <= c.cutoff; ++k) {
        const double k1x = static_cast<double>(k) + 1.0 + x;
        chebyshev_values(p / k1x, next);
        axpy_diff((static_cast<double>(k) + 1.0 - p) / k1x, cur.data(), next.data(), row.data(),
                  n1);
        cur.swap(next);
      }
      break;
    }
    case OperatorKind::kV: {
      const std::size_t n2 = n1 + 1;
      std::vector<double> acc(n2, 0.0);
      std::vector<double> cur(n2);
      std::vector<double> next(n2);
      chebyshev_values(p / (static_cast<double>(c.first) + x), cur);
      for (long k = c.first; k <= c.cutoff; ++k) {
        const double kx = static_cast<double>(k) + x;
        const double k1x = kx + 1.0;
        chebyshev_values(p / k1x, next);
        const double alpha = (static_cast<double>(k) + 1.0 - p) / (k1x * k1x);
        const double beta = p * (p + x) / (kx * kx * kx * k1x);
        axpy_diff(alpha, cur.data(), next.data(), acc.data(), n2);
        axpy(beta, cur.data(), row.data(), n1);
        cur.swap(next);
      }
      for (std::size_t r = 0; r < n2; ++r) {
        if (acc[r] == 0.0) continue;
        axpy(acc[r], antideriv.data() + r * n1, row.data(), n1);
      }
      break;
    }
    case OperatorKind::kCdfStep: {
      std::vector<double> u(n1);
      std::vector<double> v(n1);
      for (long k = c.first; k <= c.cutoff; ++k) {
        const double kd = static_cast<double>(k);
        chebyshev_values(p / kd, u);
        chebyshev_values(p / (kd + x), v);
        axpy_diff(1.0, u.data(), v.data(), row.data(), n1);
      }
      break;
    }
  }

  if (policy.tail_correction) {
    const double first_tail = static_cast<double>(c.cutoff + 1);
    for (int j = 0; j <= policy.tail_order; ++j) {
      const double s = euler_maclaurin_tail(tail_weight(kind, c, j), first_tail);
      if (s == 0.0) continue;
      const auto d = derivative_at_zero(c.degree, j);
      axpy(s / factorial(j), d.data(), row.data(), n1);
    }
  }
  return row;
}

}  // namespace

void TruncationPolicy::validate(const MapParam& param) const {
  if (cutoff < static_cast<long>(param.p()) + 1) {
    throw std::invalid_argument("TruncationPolicy: cutoff must be at least p+1");
  }
  if (!(target_tol > 0.0)) throw std::invalid_argument("TruncationPolicy: target_tol must be > 0");
  if (tail_order < 0 || tail_order > kMaxTailOrder) {
    throw std::invalid_argument("TruncationPolicy: tail_order out of range");
  }
}

double euler_maclaurin_tail(const std::function<double(double)>& w, double first) {
  // Substituting t = first/u maps [first, inf) onto (0, 1]; the integrand stays
  // analytic for weights that are rational in t.
  const double integral = boost::math::quadrature::gauss<double, 30>::integrate(
      [&](double u) { return w(first / u) * first / (u * u); }, 0.0, 1.0);
  const double h = 0.5;
  const double wp = w(first + h);
  const double wm = w(first - h);
  const double wpp = w(first + 2.0 * h);
  const double wmm = w(first - 2.0 * h);
  const double d1 = (8.0 * (wp - wm) - (wpp - wmm)) / (12.0 * h);
  const double d3 = (wpp - 2.0 * wp + 2.0 * wm - wmm) / (2.0 * h * h * h);
  return integral + 0.5 * w(first) - d1 / 12.0 + d3 / 720.0;
}

TransferOperator::TransferOperator(OperatorKind kind, const MapParam& param, std::size_t degree,
                                   const TruncationPolicy& policy)
    : kind_(kind), param_(param), degree_(degree), policy_(policy) {
  if (degree < 2) throw std::invalid_argument("TransferOperator: degree must be at least 2");
  policy.validate(param);

  const std::size_t n1 = degree + 1;
  const auto nodes = lobatto_nodes(degree);
  const auto antideriv = kind == OperatorKind::kV ? antiderivative_matrix(degree)
                                                  : std::vector<double>{};
  std::vector<std::vector<double>> rows(n1);
  parallel_for(n1, [&](std::size_t i) {
    const RowContext ctx{param.pd(), nodes[i], param.p(), policy.cutoff, degree};
    rows[i] = assemble_row(kind, ctx, antideriv, policy);
  });

  Eigen::MatrixXd node_map(n1, n1);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) node_map(static_cast<Eigen::Index>(i),
                                                  static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  const auto t = lobatto_transform(degree);
  Eigen::MatrixXd to_coeffs(n1, n1);
  for (std::size_t m = 0; m < n1; ++m) {
    for (std::size_t j = 0; j < n1; ++j) to_coeffs(static_cast<Eigen::Index>(m),
                                                   static_cast<Eigen::Index>(j)) = t[m * n1 + j];
  }
  matrix_ = to_coeffs * node_map;
}

FuncRep TransferOperator::apply(const FuncRep& f, ApplyStatus* status) const {
  const FuncRep input = f.degree() == degree_ ? f : f.with_degree(degree_);
  const auto c = input.coeffs();
  const Eigen::Map<const Eigen::VectorXd> in(c.data(), static_cast<Eigen::Index>(c.size()));
  const Eigen::VectorXd out = matrix_ * in;
  FuncRep result = FuncRep::from_coeffs(std::vector<double>(out.data(), out.data() + out.size()));
  if (status != nullptr) {
    status->decay_ratio = result.decay_ratio();
    status->under_resolved = status->decay_ratio > policy_.target_tol;
  }
  return result;
}

FuncRep apply_gkw(const MapParam& param, const FuncRep& f, const TruncationPolicy& policy,
                  ApplyStatus* status) {
  return TransferOperator(OperatorKind::kGkw, param, f.degree(), policy).apply(f, status);
}

FuncRep apply_U(const MapParam& param, const FuncRep& g, const TruncationPolicy& policy,
                ApplyStatus* status) {
  return TransferOperator(OperatorKind::kU, param, g.degree(), policy).apply(g, status);
}

FuncRep apply_V(const MapParam& param, const FuncRep& f, const TruncationPolicy& policy,
                ApplyStatus* status) {
  return TransferOperator(OperatorKind::kV, param, f.degree(), policy).apply(f, status);
}

FuncRep apply_V_via_U(const MapParam& param, const FuncRep& f, const TruncationPolicy& policy,
                      ApplyStatus* status) {
  const FuncRep primitive = f.antiderivative();
  const FuncRep image = apply_U(param, primitive, policy, status);
  FuncRep result = image.derivative() * -1.0;
  if (status != nullptr) {
    status->decay_ratio = result.decay_ratio();
    status->under_resolved = status->decay_ratio > policy.target_tol;
  }
  return result;
}

}  // namespace gkw
