#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "asym/rng.hpp"
#include "asym/stats.hpp"
#include "oracles.hpp"

using namespace asym;

TEST_CASE("sample moments") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  REQUIRE(mean_of(x) == Catch::Approx(3.0));
  REQUIRE(variance_of(x) == Catch::Approx(2.5));  // unbiased
  REQUIRE_THROWS_AS(variance_of(std::vector<double>{1.0}), std::domain_error);
}

TEST_CASE("standard normal cdf reference points") {
  REQUIRE(normal_cdf(0.0) == Catch::Approx(0.5).epsilon(1e-15));
  REQUIRE(normal_cdf(1.959963984540054) == Catch::Approx(0.975).epsilon(1e-12));
  REQUIRE(normal_cdf(-1.959963984540054) == Catch::Approx(0.025).epsilon(1e-10));
}

TEST_CASE("regularized incomplete beta sanity") {
  REQUIRE(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  REQUIRE(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) = x
  REQUIRE(regularized_incomplete_beta(1.0, 1.0, 0.37) == Catch::Approx(0.37).epsilon(1e-12));
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  const double v = regularized_incomplete_beta(2.5, 4.0, 0.3);
  const double w = regularized_incomplete_beta(4.0, 2.5, 0.7);
  REQUIRE(v == Catch::Approx(1.0 - w).epsilon(1e-12));
}

TEST_CASE("student t two-sided p, closed-form cases") {
  // nu = 1 is Cauchy: P(|T| > 1) = 1/2
  REQUIRE(student_t_two_sided_p(1.0, 1.0) == Catch::Approx(0.5).epsilon(1e-12));
  REQUIRE(student_t_two_sided_p(0.0, 7.0) == Catch::Approx(1.0).epsilon(1e-12));
  // nu = 2: P(|T| > t) = 1 - t/sqrt(2 + t^2)
  const double t = 1.7;
  REQUIRE(student_t_two_sided_p(t, 2.0) ==
          Catch::Approx(1.0 - t / std::sqrt(2.0 + t * t)).epsilon(1e-12));
  REQUIRE(student_t_two_sided_p(INFINITY, 5.0) == 0.0);
}

TEST_CASE("student t p-values agree with density quadrature") {
  Stream rng(313);
  for (int i = 0; i < 40; ++i) {
    const double t = rng.uniform(-6.0, 6.0);
    const double nu = rng.uniform(1.0, 80.0);
    const double p = student_t_two_sided_p(t, nu);
    const double ref = oracle::t_two_sided_p(t, nu);
    REQUIRE(p == Catch::Approx(ref).margin(1e-10));
  }
}

TEST_CASE("welch test, hand-computed example") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b{2.0, 3.0, 4.0, 5.0, 6.0};
  const WelchResult r = welch_t(a, b);
  REQUIRE(r.t == Catch::Approx(-1.0).epsilon(1e-14));
  REQUIRE(r.df == Catch::Approx(8.0).epsilon(1e-14));
  REQUIRE(r.p == Catch::Approx(oracle::t_two_sided_p(-1.0, 8.0)).margin(1e-10));
}

TEST_CASE("welch on random unequal-variance samples") {
  Stream rng(828);
  for (int i = 0; i < 30; ++i) {
    const int na = 4 + static_cast<int>(rng.uniform(0.0, 20.0));
    const int nb = 4 + static_cast<int>(rng.uniform(0.0, 20.0));
    std::vector<double> a, b;
    for (int k = 0; k < na; ++k) a.push_back(rng.normal(0.0, 1.0));
    for (int k = 0; k < nb; ++k) b.push_back(rng.normal(0.3, 2.0));
    const WelchResult r = welch_t(a, b);

    // recompute ingredients independently
    const double ma = mean_of(a), mb = mean_of(b);
    const double qa = variance_of(a) / na, qb = variance_of(b) / nb;
    REQUIRE(r.t == Catch::Approx((ma - mb) / std::sqrt(qa + qb)).epsilon(1e-12));
    const double df = (qa + qb) * (qa + qb) /
                      (qa * qa / (na - 1) + qb * qb / (nb - 1));
    REQUIRE(r.df == Catch::Approx(df).epsilon(1e-12));
    REQUIRE(r.p == Catch::Approx(oracle::t_two_sided_p(r.t, r.df)).margin(1e-9));
    REQUIRE(r.p >= 0.0);
    REQUIRE(r.p <= 1.0);
  }
}

TEST_CASE("welch degenerate zero-variance branches") {
  const std::vector<double> a{2.0, 2.0, 2.0};
  const std::vector<double> b{2.0, 2.0};
  const WelchResult same = welch_t(a, b);
  REQUIRE(same.t == 0.0);
  REQUIRE(same.p == 1.0);

  const std::vector<double> c{3.0, 3.0, 3.0};
  const WelchResult diff = welch_t(c, b);
  REQUIRE(std::isinf(diff.t));
  REQUIRE(diff.t > 0.0);
  REQUIRE(diff.p == 0.0);

  REQUIRE_THROWS_AS(welch_t(std::vector<double>{1.0}, b), std::domain_error);
}

TEST_CASE("mann-kendall on a strict trend") {
  std::vector<double> up;
  for (int i = 0; i < 10; ++i) up.push_back(0.1 * i);
  const MannKendallResult r = mann_kendall(up);
  REQUIRE(r.s == 45);
  REQUIRE(r.var_s == Catch::Approx(125.0));  // 10*9*25/18
  REQUIRE(r.z == Catch::Approx(44.0 / std::sqrt(125.0)).epsilon(1e-13));
  REQUIRE(r.p == Catch::Approx(8.30307e-05).margin(2e-9));
  REQUIRE(r.p < 0.05);

  std::vector<double> down(up.rbegin(), up.rend());
  const MannKendallResult rd = mann_kendall(down);
  REQUIRE(rd.s == -45);
  REQUIRE(rd.z == Catch::Approx(-r.z).epsilon(1e-13));
  REQUIRE(rd.p == Catch::Approx(r.p).epsilon(1e-12));
}

TEST_CASE("mann-kendall tie correction, hand-computed") {
  // {1, 2, 2, 3}: S = 5; one tie group of 2 -> correction 2*1*9 = 18
  // var = (4*3*13 - 18)/18 = 138/18
  const std::vector<double> x{1.0, 2.0, 2.0, 3.0};
  const MannKendallResult r = mann_kendall(x);
  REQUIRE(r.s == 5);
  REQUIRE(r.var_s == Catch::Approx(138.0 / 18.0).epsilon(1e-14));
  REQUIRE(r.z == Catch::Approx(4.0 / std::sqrt(138.0 / 18.0)).epsilon(1e-13));
}

TEST_CASE("mann-kendall degenerate and invalid inputs") {
  const std::vector<double> flat{2.0, 2.0, 2.0, 2.0, 2.0};
  const MannKendallResult r = mann_kendall(flat);
  REQUIRE(r.s == 0);
  REQUIRE(r.z == 0.0);
  REQUIRE(r.p == 1.0);
  REQUIRE_THROWS_AS(mann_kendall(std::vector<double>{1.0, 2.0}), std::domain_error);
}
