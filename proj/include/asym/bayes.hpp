#pragma once

// Conjugate Gaussian belief updates and discrete type classification.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asym {

// Posterior variance floor used when a channel is noiseless: the belief
// degenerates to a point mass at the signal; 1e-300 keeps downstream
// precision arithmetic finite.
inline constexpr double kDegenerateVariance = 1e-300;

struct GaussianBelief {
  double mean = 0.0;
  double variance = 1.0;  // > 0
};

struct SignalChannel {
  double noise_variance = 0.0;  // >= 0; 0 means a perfect channel
};

inline void check_belief(const GaussianBelief& b, const char* who) {
  if (!(b.variance > 0.0) || !std::isfinite(b.mean) || !std::isfinite(b.variance))
    throw std::domain_error(std::string(who) + ": prior variance must be finite and > 0");
}

inline void check_channel(const SignalChannel& c, const char* who) {
  if (!(c.noise_variance >= 0.0) || !std::isfinite(c.noise_variance))
    throw std::domain_error(std::string(who) + ": noise variance must be finite and >= 0");
}

// Precision-weighted update of a normal prior with one normal signal:
//   var1  = (1/var0 + 1/noise)^-1
//   mean1 = var1 * (mean0/var0 + s/noise)
// A perfect channel pins the belief at the signal.
inline GaussianBelief normal_posterior(const GaussianBelief& prior, double signal,
                                       const SignalChannel& channel) {
  check_belief(prior, "normal_posterior");
  check_channel(channel, "normal_posterior");
  if (!std::isfinite(signal)) throw std::domain_error("normal_posterior: signal not finite");
  if (channel.noise_variance == 0.0)
    return GaussianBelief{signal, kDegenerateVariance};
  const double prior_prec = 1.0 / prior.variance;
  const double sig_prec = 1.0 / channel.noise_variance;
  const double var1 = 1.0 / (prior_prec + sig_prec);
  return GaussianBelief{var1 * (prior.mean * prior_prec + signal * sig_prec),
                        std::max(var1, kDegenerateVariance)};
}

// Left fold of normal_posterior over a signal batch; empty batch returns
// the prior unchanged.
inline GaussianBelief sequential_posterior(GaussianBelief prior,
                                           std::span<const double> signals,
                                           const SignalChannel& channel) {
  for (double s : signals) prior = normal_posterior(prior, s, channel);
  return prior;
}

// Posterior over a finite set of type anchors, log-domain Bayes:
//   log p_k = log prior_k - (s - theta_k)^2 / (2 sigma^2)   (+ shared const)
struct TypePosterior {
  std::vector<double> probs;  // aligned with the anchor list, sums to 1

  std::size_t map_index() const {
    // Ties resolve to the first (lowest-index) anchor.
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.size(); ++k)
      if (probs[k] > probs[best]) best = k;
    return best;
  }
};

inline TypePosterior classify_type(double signal, std::span<const double> priors,
                                   std::span<const double> anchors,
                                   const SignalChannel& channel) {
  if (priors.size() != anchors.size() || anchors.empty())
    throw std::domain_error("classify_type: priors/anchors size mismatch");
  check_channel(channel, "classify_type");
  if (!std::isfinite(signal)) throw std::domain_error("classify_type: signal not finite");
  double prior_sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw std::domain_error("classify_type: negative prior");
    prior_sum += p;
  }
  if (!(prior_sum > 0.0)) throw std::domain_error("classify_type: all-zero priors");

  const std::size_t n = anchors.size();
  TypePosterior out;
  out.probs.resize(n);

  if (channel.noise_variance == 0.0) {
    // Perfect channel: point mass on the nearest anchor with positive prior.
    std::size_t best = n;
    double best_d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (priors[k] <= 0.0) continue;
      const double d = std::abs(signal - anchors[k]);
      if (best == n || d < best_d) { best = k; best_d = d; }
    }
    out.probs[best] = 1.0;
    return out;
  }

  std::vector<double> logw(n, -INFINITY);
  double logmax = -INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    if (priors[k] <= 0.0) continue;
    const double d = signal - anchors[k];
    logw[k] = std::log(priors[k]) - d * d / (2.0 * channel.noise_variance);
    logmax = std::max(logmax, logw[k]);
  }
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.probs[k] = std::isfinite(logw[k]) ? std::exp(logw[k] - logmax) : 0.0;
    z += out.probs[k];
  }
  for (double& p : out.probs) p /= z;
  return out;
}

// ---------------------------------------------------------------------------
// Two correlated agents.

struct PairBelief {
  double mean1 = 0.0, mean2 = 0.0;
  double var1 = 1.0, var2 = 1.0;  // > 0
  double cov = 0.0;               // |cov| < sqrt(var1*var2)

  double rho() const { return cov / std::sqrt(var1 * var2); }

  bool positive_definite() const {
    return var1 > 0.0 && var2 > 0.0 && cov * cov < var1 * var2;
  }
};

// Condition the joint Gaussian on a noisy signal of agent 1's type:
// scalar Kalman step with gain K = (var1, cov) / (var1 + noise).
// Agent 2's marginal tightens iff the pair is correlated.
inline PairBelief pair_posterior(const PairBelief& prior, double signal_agent1,
                                 const SignalChannel& channel) {
  if (!prior.positive_definite())
    throw std::domain_error("pair_posterior: covariance must be positive definite");
  check_channel(channel, "pair_posterior");
  if (!std::isfinite(signal_agent1))
    throw std::domain_error("pair_posterior: signal not finite");

  const double s_var = prior.var1 + channel.noise_variance;  // innovation variance
  const double k1 = prior.var1 / s_var;
  const double k2 = prior.cov / s_var;
  const double innov = signal_agent1 - prior.mean1;

  PairBelief post;
  post.mean1 = prior.mean1 + k1 * innov;
  post.mean2 = prior.mean2 + k2 * innov;
  post.var1 = std::max(prior.var1 - k1 * prior.var1, kDegenerateVariance);
  post.var2 = std::max(prior.var2 - k2 * prior.cov, kDegenerateVariance);
  post.cov = prior.cov - k1 * prior.cov;
  return post;
}

// Same update driven by a signal of agent 2's type.
inline PairBelief pair_posterior_agent2(const PairBelief& prior, double signal_agent2,
                                        const SignalChannel& channel) {
  PairBelief swapped{prior.mean2, prior.mean1, prior.var2, prior.var1, prior.cov};
  PairBelief post = pair_posterior(swapped, signal_agent2, channel);
  return PairBelief{post.mean2, post.mean1, post.var2, post.var1, post.cov};
}

}  // namespace asym
