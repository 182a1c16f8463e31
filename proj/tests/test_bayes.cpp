#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "asym/bayes.hpp"
#include "asym/rng.hpp"
#include "oracles.hpp"

using namespace asym;

TEST_CASE("conjugate update, hand-computed case") {
  // prior N(1, 4), observation 3 with noise variance 2:
  // posterior precision 1/4 + 1/2 = 3/4, mean (1/4*1 + 1/2*3)/(3/4) = 7/3.
  const GaussianBelief post = normal_posterior({1.0, 4.0}, 3.0, {2.0});
  REQUIRE(post.mean == Catch::Approx(7.0 / 3.0).epsilon(1e-14));
  REQUIRE(post.variance == Catch::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("conjugate update agrees with numerical integration") {
  Stream rng(1001);
  for (int i = 0; i < 100; ++i) {
    const double mu0 = rng.uniform(-2.0, 2.0);
    const double v0 = rng.uniform(0.05, 3.0);
    const double vn = rng.uniform(0.05, 3.0);
    const double s = mu0 + rng.normal(0.0, std::sqrt(v0 + vn));
    const GaussianBelief post = normal_posterior({mu0, v0}, s, {vn});
    const oracle::MeanVar ref = oracle::grid_posterior(mu0, v0, s, vn);
    REQUIRE(post.mean == Catch::Approx(ref.mean).margin(1e-6));
    REQUIRE(post.variance == Catch::Approx(ref.variance).margin(1e-6));
  }
}

TEST_CASE("signal batches collapse to the closed-form variance") {
  const double v0 = 0.0921, vn = 0.0025;
  Stream rng(55);
  GaussianBelief b{0.57, v0};
  std::vector<double> signals;
  for (int t = 1; t <= 25; ++t) {
    signals.push_back(rng.normal(0.6, 0.05));
    b = normal_posterior(b, signals.back(), {vn});
    const double expect = v0 * vn / (vn + t * v0);
    REQUIRE(b.variance == Catch::Approx(expect).epsilon(1e-12));
  }
  // fold over the batch in one call reproduces the same belief
  const GaussianBelief folded = sequential_posterior({0.57, v0}, signals, {vn});
  REQUIRE(folded.mean == Catch::Approx(b.mean).epsilon(1e-13));
  REQUIRE(folded.variance == Catch::Approx(b.variance).epsilon(1e-13));
}

TEST_CASE("posterior variance shrinks and is monotone in prior precision") {
  // posterior variance strictly below both prior and noise variance
  for (double v0 : {0.01, 0.1, 1.0, 10.0}) {
    const GaussianBelief post = normal_posterior({0.0, v0}, 0.4, {0.5});
    REQUIRE(post.variance < v0);
    REQUIRE(post.variance < 0.5);
  }
  // adding a signal never increases variance along a sequence
  GaussianBelief b{0.0, 2.0};
  for (int i = 0; i < 30; ++i) {
    const GaussianBelief nb = normal_posterior(b, 0.3, {0.7});
    REQUIRE(nb.variance < b.variance);
    b = nb;
  }
}

TEST_CASE("perfect channel pins the belief") {
  const GaussianBelief post = normal_posterior({0.0, 1.0}, 0.73, {0.0});
  REQUIRE(post.mean == 0.73);
  REQUIRE(post.variance == kDegenerateVariance);
  // further noisy updates barely move a pinned belief
  const GaussianBelief post2 = normal_posterior(post, 5.0, {1.0});
  REQUIRE(post2.mean == Catch::Approx(0.73).margin(1e-12));
}

TEST_CASE("belief and channel validation") {
  REQUIRE_THROWS_AS(normal_posterior({0.0, -1.0}, 0.0, {1.0}), std::domain_error);
  REQUIRE_THROWS_AS(normal_posterior({0.0, 1.0}, 0.0, {-0.5}), std::domain_error);
  REQUIRE_THROWS_AS(normal_posterior({0.0, 1.0}, NAN, {1.0}), std::domain_error);
}

TEST_CASE("discrete type classification") {
  const std::vector<double> priors{0.3, 0.2, 0.5};
  const std::vector<double> anchors{1.0, 0.6, 0.3};
  const SignalChannel chan{0.01 * 0.01};

  SECTION("sharp signals pick the right anchor") {
    REQUIRE(classify_type(1.0, priors, anchors, chan).map_index() == 0);
    REQUIRE(classify_type(0.61, priors, anchors, chan).map_index() == 1);
    REQUIRE(classify_type(0.29, priors, anchors, chan).map_index() == 2);
  }

  SECTION("probabilities normalize and respond to the prior") {
    const TypePosterior tp = classify_type(0.45, priors, anchors, {0.09});
    double sum = 0.0;
    for (double p : tp.probs) {
      REQUIRE(p >= 0.0);
      sum += p;
    }
    REQUIRE(sum == Catch::Approx(1.0).epsilon(1e-12));
  }

  SECTION("zero-prior anchors are never selected") {
    const std::vector<double> pz{0.0, 0.5, 0.5};
    const TypePosterior tp = classify_type(1.2, pz, anchors, chan);
    REQUIRE(tp.probs[0] == 0.0);
    REQUIRE(tp.map_index() == 1);
  }

  SECTION("noiseless channel snaps to the nearest positive-prior anchor") {
    const TypePosterior tp = classify_type(0.77, priors, anchors, {0.0});
    REQUIRE(tp.probs[1] == 1.0);  // 0.77 is nearer 0.6 than 1.0
    const std::vector<double> pz{0.5, 0.0, 0.5};
    REQUIRE(classify_type(0.77, pz, anchors, {0.0}).probs[0] == 1.0);
  }

  SECTION("extreme signals stay finite in the log domain") {
    const TypePosterior tp = classify_type(250.0, priors, anchors, chan);
    REQUIRE(tp.map_index() == 0);
    for (double p : tp.probs) REQUIRE(std::isfinite(p));
  }

  SECTION("bad inputs throw") {
    REQUIRE_THROWS_AS(classify_type(0.5, std::vector<double>{0.0, 0.0},
                                    std::vector<double>{0.1, 0.2}, chan),
                      std::domain_error);
    REQUIRE_THROWS_AS(classify_type(0.5, std::vector<double>{1.0},
                                    std::vector<double>{0.1, 0.2}, chan),
                      std::domain_error);
  }
}

TEST_CASE("pair updates agree with 2-D numerical integration") {
  Stream rng(77);
  for (int i = 0; i < 20; ++i) {
    PairBelief prior;
    prior.mean1 = rng.uniform(0.0, 1.0);
    prior.mean2 = rng.uniform(0.0, 1.0);
    prior.var1 = rng.uniform(0.05, 0.5);
    prior.var2 = rng.uniform(0.05, 0.5);
    const double rho = rng.uniform(-0.85, 0.85);
    prior.cov = rho * std::sqrt(prior.var1 * prior.var2);
    const double vn = rng.uniform(0.05, 0.5);
    const double s1 = prior.mean1 + rng.normal(0.0, std::sqrt(prior.var1 + vn));
    const double s2 = prior.mean2 + rng.normal(0.0, std::sqrt(prior.var2 + vn));

    PairBelief post = pair_posterior(prior, s1, {vn});
    post = pair_posterior_agent2(post, s2, {vn});
    const oracle::PairMoments ref = oracle::grid_pair_posterior(
        prior.mean1, prior.mean2, prior.var1, prior.var2, prior.cov, s1, s2, vn);

    REQUIRE(post.mean1 == Catch::Approx(ref.mean1).margin(2e-4));
    REQUIRE(post.mean2 == Catch::Approx(ref.mean2).margin(2e-4));
    REQUIRE(post.var1 == Catch::Approx(ref.var1).margin(2e-4));
    REQUIRE(post.var2 == Catch::Approx(ref.var2).margin(2e-4));
    REQUIRE(post.cov == Catch::Approx(ref.cov).margin(2e-4));
    REQUIRE(post.positive_definite());
  }
}

TEST_CASE("one agent's signal moves the partner through the covariance") {
  PairBelief prior;
  prior.mean1 = prior.mean2 = 0.5;
  prior.var1 = prior.var2 = 0.2;
  prior.cov = 0.1;
  const PairBelief post = pair_posterior(prior, 0.9, {0.05});
  REQUIRE(post.mean1 > 0.5);
  REQUIRE(post.mean2 > 0.5);          // positive correlation drags it up
  REQUIRE(post.mean2 - 0.5 < post.mean1 - 0.5);
  REQUIRE(post.var1 < prior.var1);
  REQUIRE(post.var2 < prior.var2);    // partner learns too
  REQUIRE(std::abs(post.rho()) < 1.0);

  // zero covariance: partner untouched
  prior.cov = 0.0;
  const PairBelief post0 = pair_posterior(prior, 0.9, {0.05});
  REQUIRE(post0.mean2 == 0.5);
  REQUIRE(post0.var2 == 0.2);
  const GaussianBelief scalar = normal_posterior({0.5, 0.2}, 0.9, {0.05});
  REQUIRE(post0.mean1 == Catch::Approx(scalar.mean).epsilon(1e-14));
  REQUIRE(post0.var1 == Catch::Approx(scalar.variance).epsilon(1e-14));
}
