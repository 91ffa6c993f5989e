#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gkw/gauss_map.hpp"

using namespace gkw;

namespace {

// Direct sum to `terms`, smallest terms first in long double, plus the
// midpoint-rule tail integral_{M+1/2}^inf t^{-s} dt.
double brute_zeta(int s, long first, long terms) {
  long double acc = 0.0L;
  const long last = first + terms - 1;
  for (long k = last; k >= first; --k) acc += std::pow(static_cast<long double>(k), -s);
  const long double m = static_cast<long double>(last) + 0.5L;
  acc += std::pow(m, 1 - s) / (s - 1);
  return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("MapParam constants") {
  for (int p = 1; p <= 60; ++p) {
    const MapParam param(p);
    const double fp = param.fixed_point();
    CHECK(fp > 0.0);
    CHECK(fp < 1.0);
    CHECK(std::abs(fp - p / (p + fp)) < 4e-16);
    CHECK(param.log_norm() > 0.0);
    CHECK(param.log_norm() == doctest::Approx(std::log((p + 1.0) / p)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(MapParam(0), std::invalid_argument);
  CHECK_THROWS_AS(MapParam(-3), std::invalid_argument);
}

TEST_CASE("apply_map") {
  const MapParam two(2);
  CHECK(apply_map(two, 0.0) == 0.0);
  CHECK(apply_map(two, 0.8) == doctest::Approx(0.5).epsilon(1e-15));
  const double fixed = std::sqrt(3.0) - 1.0;
  CHECK(std::abs(apply_map(two, fixed) - fixed) < 1e-14);

  CHECK_THROWS_AS(apply_map(two, -0.1), std::domain_error);
  CHECK_THROWS_AS(apply_map(two, 1.5), std::domain_error);
  CHECK_THROWS_AS(apply_map(two, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(apply_map(two, 1e-301), std::domain_error);

  SUBCASE("fractional part to a few ulp") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    for (int p : {1, 2, 5, 17}) {
      const MapParam param(p);
      for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        const long double q = static_cast<long double>(p) / x;
        const long double exact = q - std::floor(q);
        const double got = apply_map(param, x);
        CHECK(got >= 0.0);
        CHECK(got < 1.0);
        const double ulp = std::nextafter(static_cast<double>(q), HUGE_VAL) - static_cast<double>(q);
        CHECK(std::abs(static_cast<long double>(got) - exact) <= 4.0L * ulp);
      }
    }
  }
}

TEST_CASE("digits") {
  const auto d2 = digits(MapParam(2), std::sqrt(3.0) - 1.0, 3);
  CHECK(d2.digits == std::vector<std::int64_t>{2, 2, 2});
  const auto d1 = digits(MapParam(1), (std::sqrt(5.0) - 1.0) / 2.0, 3);
  CHECK(d1.digits == std::vector<std::int64_t>{1, 1, 1});
  const auto d3 = digits(MapParam(3), 1.0, 1);
  CHECK(d3.digits == std::vector<std::int64_t>{3});

  // 2/0.5 = 4 exactly, so the orbit stops at 0 after one digit.
  const auto stop = digits(MapParam(2), 0.5, 5);
  CHECK(stop.digits == std::vector<std::int64_t>{4});

  CHECK_THROWS_AS(digits(MapParam(2), 0.0, 3), std::domain_error);
  CHECK_THROWS_AS(digits(MapParam(2), 1.2, 3), std::domain_error);

  SUBCASE("every digit is at least p") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1e-3, 1.0);
    for (int p : {1, 3, 8}) {
      for (int i = 0; i < 200; ++i) {
        for (auto a : digits(MapParam(p), u(rng), 20).digits) CHECK(a >= p);
      }
    }
  }

  SUBCASE("reconstruction error shrinks with more digits") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 1.0);
    for (int p : {1, 2, 6}) {
      const MapParam param(p);
      for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        double previous = 1.0;
        for (std::size_t n = 2; n <= 26; n += 4) {
          const double err = std::abs(from_digits(digits(param, x, n)) - x);
          CHECK(err <= previous + 1e-15);
          previous = err;
        }
        CHECK(previous < 1e-8);
      }
    }
  }
}

TEST_CASE("stationary measure") {
  const MapParam two(2);
  CHECK(stationary_cdf(two, 0.0) == 0.0);
  CHECK(stationary_cdf(two, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(stationary_cdf(two, 0.5) ==
        doctest::Approx(std::log(1.25) / std::log(1.5)).epsilon(1e-14));
  CHECK(stationary_cdf(two, 0.5) == doctest::Approx(0.5503397132).epsilon(1e-9));

  CHECK(stationary_density(MapParam(1), 0.0) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-14));
  CHECK(stationary_density(two, 1.0) ==
        doctest::Approx(1.0 / (3.0 * std::log(1.5))).epsilon(1e-14));
  CHECK(stationary_density(two, 1.0) == doctest::Approx(0.8221011541).epsilon(1e-9));

  CHECK_THROWS_AS(stationary_cdf(two, 1.01), std::domain_error);
  CHECK_THROWS_AS(stationary_density(two, -0.01), std::domain_error);

  SUBCASE("cdf is the antiderivative of the density") {
    for (int p : {1, 2, 7, 30}) {
      const MapParam param(p);
      const double h = 1e-6;
      double worst = 0.0;
      double previous = -1.0;
      for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double lo = std::max(0.0, x - h);
        const double hi = std::min(1.0, x + h);
        const double fd = (stationary_cdf(param, hi) - stationary_cdf(param, lo)) / (hi - lo);
        worst = std::max(worst, std::abs(fd - stationary_density(param, x)));
        const double v = stationary_cdf(param, x);
        CHECK(v > previous);
        previous = v;
      }
      CHECK(worst <= 1e-6);
    }
  }

  SUBCASE("density integrates to one") {
    for (int p : {1, 4, 25}) {
      const MapParam param(p);
      // Composite Simpson, 2000 panels.
      const int n = 2000;
      double acc = stationary_density(param, 0.0) + stationary_density(param, 1.0);
      for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * stationary_density(param, i / double(n));
      CHECK(acc / (3.0 * n) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("hurwitz_zeta") {
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(std::abs(hurwitz_zeta(2, MapParam(1)) - zeta2) < 1e-14);
  CHECK(std::abs(hurwitz_zeta(2, MapParam(1)) - brute_zeta(2, 1, 100'000'000)) < 1e-14);
  CHECK(std::abs(hurwitz_zeta(3, MapParam(1)) - 1.2020569031595942854) < 1e-14);
  CHECK(std::abs(hurwitz_zeta(3, MapParam(1)) - brute_zeta(3, 1, 10'000'000)) < 1e-14);
  CHECK(std::abs(hurwitz_zeta(2, MapParam(2)) - (zeta2 - 1.0)) < 1e-14);
  for (int p : {3, 10, 50}) {
    CHECK(std::abs(hurwitz_zeta(2, MapParam(p)) - brute_zeta(2, p, 10'000'000)) < 1e-14);
    CHECK(std::abs(hurwitz_zeta(3, MapParam(p)) - brute_zeta(3, p, 1'000'000)) < 1e-14);
  }
  CHECK_THROWS_AS(hurwitz_zeta(4, MapParam(1)), std::invalid_argument);
}

TEST_CASE("kuzmin_rate") {
  CHECK(kuzmin_rate(MapParam(1)) == doctest::Approx(0.7591797394709621).epsilon(1e-13));
  CHECK(kuzmin_rate(MapParam(2)) == doctest::Approx(0.3265870915803014).epsilon(1e-13));
  CHECK(kuzmin_rate_bound(MapParam(2)) == doctest::Approx(0.34375).epsilon(1e-15));
  for (int p = 2; p <= 50; ++p) {
    const MapParam param(p);
    CHECK(kuzmin_rate(param) < kuzmin_rate_bound(param));
    CHECK(kuzmin_rate(param) > 0.0);
  }
}
