#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gkw/spectral.hpp"

using namespace gkw;

namespace {

// Newton iteration on 2u^4 - (2p^3 + p^2) u - p^2 (p+1), u = p + a, started to
// the right of the root (the quartic is convex there).
long double alpha_newton(int p_int) {
  const long double p = p_int;
  long double u = p + 0.5L;
  for (int i = 0; i < 100; ++i) {
    const long double f = 2 * u * u * u * u - (2 * p * p * p + p * p) * u - p * p * (p + 1);
    const long double df = 8 * u * u * u - (2 * p * p * p + p * p);
    u -= f / df;
  }
  return u - p;
}

FuncRep random_positive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const double c1 = u(rng), s1 = u(rng), c2 = u(rng), r = u(rng);
  return FuncRep::fit([=](double x) { return c1 / (s1 + x) + c2 * std::exp(-r * x); });
}

double min_on_grid(const FuncRep& f) {
  double m = INFINITY;
  for (double x : uniform_grid(kDefaultGrid)) m = std::min(m, f(x));
  return m;
}

FuncRep lebesgue_start() { return FuncRep::fit([](double x) { return x; }); }

}  // namespace

TEST_CASE("bounds formula") {
  const auto b = bounds(MapParam(2));
  CHECK(b.v == doctest::Approx(2.0 / (2.0 * (4.0 + 4.0 / 3.0 + 1.0 / 9.0))).epsilon(1e-15));
  CHECK(b.w == doctest::Approx(2.0 / (2.0 * (4.0 + 4.0 / 3.0 - 2.0 / 9.0))).epsilon(1e-15));
  for (int p = 2; p <= 50; ++p) {
    const auto bp = bounds(MapParam(p));
    CHECK(bp.v < bp.w);
  }
}

TEST_CASE("root of the quartic") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 2; p <= 50; ++p) {
    const MapParam param(p);
    for (int i = 0; i < 5; ++i) {
      const long double a = u(rng);
      const long double lhs = rho(param, a);
      // Relative to the size of the largest term, 2(p+a)^4.
      const double scale = 2.0 * std::pow(p + 1.0, 4);
      CHECK(std::abs(static_cast<double>(lhs - rho_expanded(param, a))) <= 1e-16 * scale);
    }
    const long double alpha = alpha_root(param);
    CHECK(alpha > 0.32L);
    CHECK(alpha < 1.0L / 3.0L);
    // The expanded form keeps its terms near p^3; the factored one near p^4.
    CHECK(std::abs(static_cast<double>(rho_expanded(param, alpha))) <= 1e-12);
    CHECK(std::abs(static_cast<double>(rho(param, alpha))) <= 1e-10);
    CHECK(std::abs(static_cast<double>(alpha - alpha_newton(p))) <= 1e-15);
    // Exactly one sign change on [0.32, 1/3] at 1e-4 resolution.
    int changes = 0;
    long double prev = rho_expanded(param, 0.32L);
    for (long double a = 0.32L + 1e-4L; a <= 1.0L / 3.0L; a += 1e-4L) {
      const long double cur = rho_expanded(param, a);
      if ((cur > 0.0L) != (prev > 0.0L)) ++changes;
      prev = cur;
    }
    if ((rho_expanded(param, 1.0L / 3.0L) > 0.0L) != (prev > 0.0L)) ++changes;
    CHECK(changes == 1);
  }
  // u^4 - 10u - 6 = 0 with u = 2 + alpha_2.
  CHECK(static_cast<double>(alpha_root(MapParam(2))) == doctest::Approx(0.325725096).epsilon(1e-9));
  CHECK_THROWS_AS(alpha_root(MapParam(1)), std::invalid_argument);
}

TEST_CASE("auxiliary functions") {
  const MapParam two(2);
  const auto aux = aux_functions(two, 0.3);
  const auto image = apply_U(two, aux.g);
  for (double x : uniform_grid(101)) CHECK(std::abs(image(x) - aux.H(x)) <= 1e-9);
  const auto dg = aux.g.derivative();
  for (double x : uniform_grid(101)) CHECK(std::abs(dg(x) - aux.xi(x)) <= 1e-10);
}

TEST_CASE("extremes of the auxiliary ratio") {
  for (int p : {2, 3, 7, 20}) {
    const MapParam param(p);
    const TransferOperator v_op(OperatorKind::kV, param, kDefaultDegree);
    const double alpha = static_cast<double>(alpha_root(param));
    for (double a : {alpha, 0.5 * (alpha + 1.0 / 3.0), 1.0 / 3.0}) {
      const auto mm = min_max_ratio(param, a);
      const double pd = p;
      const double big_a = pd - pd * a - a * a;
      const double big_b = pd * a + a + a * a;

      // Second route to gamma.
      const double gamma3 =
          1.0 + (3.0 * a * a + (3.0 * pd + 1.0) * a - pd) / ((1.0 - a) * big_a);
      CHECK(mm.gamma == doctest::Approx(std::cbrt(gamma3)).epsilon(1e-14));

      // Closed form rearranged in terms of p and a only.
      const double alt = ((1.0 - a) * pd * pd + a * a * (1.0 + a) +
                          3.0 * big_a * big_b * ((1.0 - a) * mm.gamma + (1.0 + a) / mm.gamma)) /
                         pd;
      CHECK(mm.m == doctest::Approx(alt).epsilon(1e-13));

      // Brute force with the numerical operator.
      const auto xi = aux_functions(param, a).xi;
      const auto v_xi = v_op.apply(xi);
      double lo = INFINITY;
      double hi = -INFINITY;
      double argmin = 0.0;
      for (double x : uniform_grid(2001)) {
        const double r = xi(x) / v_xi(x);
        if (r < lo) {
          lo = r;
          argmin = x;
        }
        hi = std::max(hi, r);
      }
      CHECK(std::abs(lo - mm.m) <= 1e-6);
      CHECK(std::abs(hi - mm.M) <= 1e-6);
      CHECK(std::abs(argmin - mm.x0) <= 1e-3);
    }
    CHECK_THROWS_AS(min_max_ratio(param, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(min_max_ratio(param, 0.34), std::invalid_argument);
  }
  // M(1/3) is exactly 1/v_p.
  for (int p = 2; p <= 30; ++p) {
    const MapParam param(p);
    CHECK(min_max_ratio(param, 1.0 / 3.0).M * bounds(param).v == doctest::Approx(1.0).epsilon(1e-14));
    const auto info = aux_analysis(param, 1.0 / 3.0);
    CHECK(1.0 / info.m_a <= info.w_p);
  }
}

TEST_CASE("sandwich") {
  for (int p : {2, 5}) {
    const auto report = verify_sandwich(MapParam(p));
    CHECK(report.passed);
    CHECK(report.min_ratio >= report.bounds.v - kSandwichSlack);
    CHECK(report.max_ratio <= report.bounds.w + kSandwichSlack);
  }
}

TEST_CASE("lambda for p = 1") {
  const auto power = lambda_by_power(MapParam(1));
  CHECK(power.converged);
  CHECK(std::abs(power.lambda - 0.3036630028987) <= 1e-6);
  const auto ratio = lambda_by_ratio(MapParam(1), lebesgue_start());
  CHECK(ratio.converged);
  CHECK(std::abs(ratio.lambda - 0.3036630028987) <= 1e-6);
}

TEST_CASE("estimators agree and sit inside the bounds") {
  for (int p = 1; p <= 10; ++p) {
    CAPTURE(p);
    const MapParam param(p);
    const auto power = lambda_by_power(param);
    const auto ratio = lambda_by_ratio(param, lebesgue_start());
    CHECK(power.converged);
    CHECK(ratio.converged);
    CHECK(std::abs(power.lambda - ratio.lambda) <= 1e-8);
    CHECK(power.residual <= 1e-10);
    CHECK(min_on_grid(power.psi) > 0.0);
    CHECK(sup_norm(power.psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_on_grid(ratio.psi) > 0.0);
    if (p >= 2) {
      const auto b = bounds(param);
      CHECK(power.lambda >= b.v);
      CHECK(power.lambda <= b.w);
    }
  }
}

TEST_CASE("ratio estimator rejects a non-increasing start") {
  CHECK_THROWS_AS(lambda_by_ratio(MapParam(2), FuncRep::fit([](double x) { return 1.0 - x; })),
                  std::invalid_argument);
}

TEST_CASE("functional F") {
  std::mt19937_64 rng(11);
  for (int p = 2; p <= 20; ++p) {
    CAPTURE(p);
    const MapParam param(p);
    const TransferOperator v_op(OperatorKind::kV, param, kDefaultDegree);
    const auto xi = sandwich_function(param);
    CHECK(functional_F(param, xi) > functional_F_xi_lower_bound(param));
    for (int i = 0; i < 3; ++i) {
      const auto f = random_positive(rng);
      CHECK(functional_F(param, f) <= min_on_grid(v_op.apply(f)) + 1e-12);
    }
    CHECK(gap_condition(v_op).holds());

    const auto eig = lambda_by_power(v_op);
    const double tau = tau_bound(param, eig);
    CHECK(tau / eig.lambda < kTauRatioBound);
    CHECK(tau > 0.0);
  }
  // Linear and zero on zero.
  const MapParam two(2);
  CHECK(functional_F(two, FuncRep::constant(0.0)) == 0.0);
}

TEST_CASE("functional L") {
  const MapParam three(3);
  const TransferOperator v_op(OperatorKind::kV, three, kDefaultDegree);
  const auto eig = lambda_by_power(v_op);
  const auto on_psi = functional_L(v_op, eig.psi, eig);
  CHECK(on_psi.value == doctest::Approx(1.0).epsilon(1e-8));
  const auto on_zero = functional_L(v_op, FuncRep::constant(0.0), eig);
  CHECK(on_zero.value == 0.0);

  const auto f = FuncRep::fit([](double x) { return 1.0 + x * x; });
  const auto once = functional_L(v_op, f, eig);
  const auto scaled = functional_L(v_op, 2.5 * f, eig);
  CHECK(once.converged);
  CHECK(once.value > 0.0);
  CHECK(scaled.value == doctest::Approx(2.5 * once.value).epsilon(1e-10));
  // L is invariant under V / lambda.
  const auto stepped = functional_L(v_op, v_op.apply(f) * (1.0 / eig.lambda), eig);
  CHECK(stepped.value == doctest::Approx(once.value).epsilon(1e-7));
}

TEST_CASE("collocation spectrum") {
  for (int p : {1, 2, 4}) {
    CAPTURE(p);
    const MapParam param(p);
    const auto spec = spectrum_collocation(param, 64);
    REQUIRE(spec.eigenvalues.size() == 64);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) <= 1e-10);
    const auto eig = lambda_by_power(param);
    CHECK(std::abs(spec.eigenvalues[1] + eig.lambda) <= 1e-8);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(spec.reliable[i]);
      CHECK(spec.resolved[i]);
    }
    CHECK(spec.max_imag <= 1e-10);
    for (std::size_t i = 1; i < spec.moduli.size(); ++i) CHECK(spec.moduli[i] <= spec.moduli[i - 1]);
    CHECK(spec.conjecture_ratios.size() == 16);
  }
  SUBCASE("alternating signs for p = 2") {
    const auto spec = spectrum_collocation(MapParam(2), 64);
    for (std::size_t n = 1; n <= 6; ++n) CHECK((spec.eigenvalues[n - 1] > 0.0) == (n % 2 == 1));
  }
  SUBCASE("classical p = 1 values") {
    // Wirsing's constant and the next three eigenvalues of the Gauss map operator.
    const auto spec = spectrum_collocation(MapParam(1), 64);
    CHECK(spec.eigenvalues[1] == doctest::Approx(-0.3036630028987).epsilon(1e-11));
    CHECK(spec.eigenvalues[2] == doctest::Approx(0.1008845092).epsilon(1e-9));
    CHECK(spec.eigenvalues[3] == doctest::Approx(-0.0354961590).epsilon(1e-8));
  }
  CHECK(conjectured_eigenvalue(MapParam(1), 1) ==
        doctest::Approx(std::pow((std::sqrt(5.0) - 1) / 2, 2)).epsilon(1e-15));
  CHECK(conjectured_eigenvalue(MapParam(1), 2) < 0.0);
  CHECK_THROWS_AS(spectrum_collocation(MapParam(2), 4), std::invalid_argument);
}

TEST_CASE("lambda sweep over p") {
  // Both estimators, the enclosure and the second-order asymptotics.
  double worst_scaled = 0.0;
  for (int p = 2; p <= 50; ++p) {
    CAPTURE(p);
    const MapParam param(p);
    const TransferOperator v_op(OperatorKind::kV, param, kDefaultDegree);
    const auto eig = lambda_by_power(v_op);
    CHECK(eig.residual <= 1e-9);
    const auto b = bounds(param);
    CHECK(eig.lambda >= b.v);
    CHECK(eig.lambda <= b.w);
    CHECK(gap_condition(v_op).holds());
    if (p >= 5) {
      const double pd = p;
      worst_scaled = std::max(worst_scaled, pd * pd * pd * std::abs(eig.lambda - (0.5 / pd - 1.0 / (3.0 * pd * pd))));
    }
  }
  MESSAGE("max p^3 |lambda - 1/(2p) + 1/(3p^2)| over p = 5..50: " << worst_scaled);
  CHECK(worst_scaled < 1.0);
}

TEST_CASE("closed-form anchors") {
  for (int p = 2; p <= 50; ++p) {
    const MapParam param(p);
    const double pd = p;
    CHECK(static_cast<double>(rho_expanded(param, 1.0L / 3.0L)) ==
          doctest::Approx(8.0 * pd / 27.0 + 2.0 / 81.0).epsilon(1e-14));
    const double at_032 = -0.08 * pd * pd * pd - 0.0912 * pd * pd + 0.262144 * pd + 0.02097152;
    CHECK(static_cast<double>(rho_expanded(param, 0.32L)) == doctest::Approx(at_032).epsilon(1e-12));
    CHECK(at_032 < 0.0);
  }
  // alpha_p increases towards 1/3.
  long double prev = 0.0L;
  for (int p = 2; p <= 50; ++p) {
    const long double a = alpha_root(MapParam(p));
    CHECK(a > prev);
    prev = a;
  }
  const auto mm = min_max_ratio(MapParam(2), 1.0 / 3.0);
  CHECK(mm.M == doctest::Approx(49.0 / 9.0).epsilon(1e-15));
  const auto b2 = bounds(MapParam(2));
  CHECK(b2.v == doctest::Approx(9.0 / 49.0).epsilon(1e-15));
  CHECK(b2.w == doctest::Approx(9.0 / 46.0).epsilon(1e-15));
  const auto b10 = bounds(MapParam(10));
  // v_p = 9p / (2(3p+1)^2) and w_p = 9p / (2(9p^2+6p-2)).
  CHECK(b10.v == doctest::Approx(90.0 / 1922.0).epsilon(1e-15));
  CHECK(b10.w == doctest::Approx(90.0 / 1916.0).epsilon(1e-15));
  CHECK(std::abs(b10.v - 0.046667) < 5e-4);
  CHECK(std::abs(b10.w - 0.046667) < 5e-4);
  double worst = 0.0;
  for (int p = 2; p <= 100; ++p) {
    const auto b = bounds(MapParam(p));
    worst = std::max(worst, std::pow(p, 3.0) * (b.w - b.v));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("eigenfunction and contraction diagnostics") {
  for (int p : {2, 3, 6}) {
    CAPTURE(p);
    const MapParam param(p);
    const auto eig = lambda_by_power(param);
    const auto xi = sandwich_function(param);
    double lowest = INFINITY;
    for (double x : uniform_grid(kDefaultGrid)) lowest = std::min(lowest, eig.psi(x) / xi(x));
    CHECK(lowest > 0.0);
    const double bound_ratio = tau_bound(param, eig) / eig.lambda;
    CHECK(eig.contraction_ratio < kTauRatioBound);
    CHECK(eig.contraction_ratio <= bound_ratio + 0.05);
    const auto ratio = lambda_by_ratio(param, lebesgue_start());
    CHECK(ratio.contraction_ratio < kTauRatioBound);
    CHECK(ratio.residual <= 1e-9);
  }
}
