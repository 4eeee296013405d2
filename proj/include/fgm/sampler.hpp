#ifndef FGM_SAMPLER_HPP
#define FGM_SAMPLER_HPP

/*
 * Perfect sampling of Majorana strings x from the characteristic distribution
 *
 *   pi(x) = det[Gamma|_x] / det[1 + Gamma],
 *
 * a determinantal point process over 2L bits. The sampler walks the chain
 * rule pi(x) = pi(x_1) pi(x_2 | x_1) ..., where every marginal is itself a
 * determinant ratio:
 *
 *   pi(x_1 ... x_mu) = det[(1_{[mu+1, 2L]} + Gamma)|_(x_1...x_mu, 1...1)]
 *                      / det[1 + Gamma],
 *
 * i.e. keep the rows/columns of the 1-bits of the prefix plus everything past
 * position mu, and add 1 on the diagonal only past position mu. Determinants
 * are recomputed from scratch with pivoted LU at every step (O(L^3) each,
 * O(L^4) per sample); there is no incremental update path.
 *
 * Both one-step conditionals are computed and checked against summing to 1;
 * deviations beyond 1e-6 abort with the offending step, and negative ratios
 * beyond -1e-8 are treated as numerical failures rather than clamped away.
 * The recorded log-probability is the telescoped difference
 * log det[Gamma|_x] - log det[1 + Gamma] of the final and initial marginals.
 */

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fgm/error.hpp"
#include "fgm/gaussian.hpp"
#include "fgm/linalg.hpp"
#include "fgm/parallel.hpp"
#include "fgm/rng.hpp"

namespace fgm {

struct MajoranaSample {
  BitString x;
  double log_prob = 0.0;  // natural log of pi(x), <= 0
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  long num_samples = 1;
  int workers = 1;
};

// Per-step record kept by the traced sampler: the raw conditional ratios for
// both branch values and the renormalized probability actually drawn from.
struct SamplerStep {
  double p0 = 0.0;
  double p1 = 0.0;
  double chosen = 0.0;  // renormalized conditional of the drawn bit
  int bit = 0;
};

namespace detail {

// det[(1_{[prefix_len+1, 2L]} + Gamma)|_(ones, 1...1)] for a prefix whose
// 1-bits are `ones` (ascending, all < prefix_len). `scratch` is reused.
inline SignedLogDet marginal_log_det(const Eigen::MatrixXd& gamma, const std::vector<int>& ones,
                                     int prefix_len, Eigen::MatrixXd& scratch,
                                     std::vector<int>& keep) {
  const int n = static_cast<int>(gamma.rows());
  keep.clear();
  keep.insert(keep.end(), ones.begin(), ones.end());
  for (int i = prefix_len; i < n; ++i) keep.push_back(i);
  const int m = static_cast<int>(keep.size());
  if (m == 0) return {1, 0.0};  // empty restriction, det = 1
  auto block = scratch.topLeftCorner(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) block(r, c) = gamma(keep[r], keep[c]);
  for (int r = 0; r < m; ++r)
    if (keep[r] >= prefix_len) block(r, r) += 1.0;
  return lu_log_det_inplace(block);
}

// Conditional ratio det_branch / det_prefix, clamped into [0, 1]. Negative
// values beyond tolerance are a numerical failure, not a rounding artifact.
inline double conditional_ratio(const SignedLogDet& num, const SignedLogDet& den, int step) {
  if (num.sign == 0) return 0.0;
  const double r = std::exp(num.log_abs - den.log_abs);
  if (num.sign < 0) {
    if (r > 1e-8)
      throw numerical_error("sampler: negative conditional probability " + std::to_string(-r),
                            step);
    return 0.0;
  }
  return std::min(r, 1.0);
}

}  // namespace detail

// pi(x_1 ... x_mu) marginalized over the remaining bits; exactly 1 for the
// empty prefix.
inline double marginal_probability(const CovarianceMatrix& state, const BitString& prefix) {
  const int n = 2 * state.modes();
  if (static_cast<int>(prefix.size()) > n)
    throw input_error("marginal_probability: prefix longer than 2L");
  if (prefix.empty()) return 1.0;
  std::vector<int> ones;
  for (int i = 0; i < static_cast<int>(prefix.size()); ++i)
    if (prefix[i]) ones.push_back(i);
  Eigen::MatrixXd scratch(n, n);
  std::vector<int> keep;
  const SignedLogDet num = detail::marginal_log_det(state.matrix(), ones,
                                                    static_cast<int>(prefix.size()), scratch, keep);
  const SignedLogDet den = log_characteristic_norm(state);
  if (num.sign <= 0) return 0.0;
  return std::min(std::exp(num.log_abs - den.log_abs), 1.0);
}

inline MajoranaSample sample_one_traced(const CovarianceMatrix& state, RandomStream& rng,
                                        std::vector<SamplerStep>* trace) {
  const int n = 2 * state.modes();
  const Eigen::MatrixXd& gamma = state.matrix();
  const SignedLogDet norm = log_characteristic_norm(state);

  Eigen::MatrixXd scratch(n, n);
  std::vector<int> keep;
  std::vector<int> ones;
  ones.reserve(n);
  BitString x(n, 0);
  if (trace) {
    trace->clear();
    trace->reserve(n);
  }

  SignedLogDet prev = norm;  // marginal of the empty prefix times the norm
  for (int mu = 0; mu < n; ++mu) {
    const SignedLogDet d0 = detail::marginal_log_det(gamma, ones, mu + 1, scratch, keep);
    ones.push_back(mu);
    const SignedLogDet d1 = detail::marginal_log_det(gamma, ones, mu + 1, scratch, keep);
    ones.pop_back();

    double p0 = detail::conditional_ratio(d0, prev, mu);
    double p1 = detail::conditional_ratio(d1, prev, mu);
    double sum = p0 + p1;
    if (std::abs(sum - 1.0) > 1e-6)
      throw numerical_error("sampler: conditionals sum to " + std::to_string(sum), mu);
    if (std::abs(sum - 1.0) < 1e-8) {
      // Refine the smaller value by complement; the larger determinant is
      // the better-conditioned of the two.
      if (p1 >= p0)
        p0 = 1.0 - p1;
      else
        p1 = 1.0 - p0;
      sum = 1.0;
    }
    const double q1 = p1 / sum;

    int bit;
    if (q1 >= 1.0)
      bit = 1;  // forced, no draw
    else if (q1 <= 0.0)
      bit = 0;
    else
      bit = rng.uniform() < q1 ? 1 : 0;

    if (bit) {
      ones.push_back(mu);
      x[mu] = 1;
      prev = d1;
    } else {
      prev = d0;
    }
    if (trace) trace->push_back({p0, p1, bit ? q1 : 1.0 - q1, bit});
  }

  // prev now holds det[Gamma|_x]; the chain telescopes to a single ratio.
  if (prev.sign <= 0) throw numerical_error("sampler: vanishing final probability");
  MajoranaSample out;
  out.x = std::move(x);
  out.log_prob = std::min(prev.log_abs - norm.log_abs, 0.0);
  return out;
}

inline MajoranaSample sample_one(const CovarianceMatrix& state, RandomStream& rng) {
  return sample_one_traced(state, rng, nullptr);
}

// cfg.num_samples independent samples; sample i is drawn from the substream
// (seed, i), so the batch is a pure function of (state, seed) and identical
// for every worker count.
inline std::vector<MajoranaSample> sample_batch(const CovarianceMatrix& state,
                                                const SamplerConfig& cfg) {
  if (cfg.num_samples < 1) throw input_error("sample_batch: num_samples must be >= 1");
  if (cfg.workers < 1) throw input_error("sample_batch: workers must be >= 1");
  std::vector<MajoranaSample> out(cfg.num_samples);
  parallel_for(cfg.num_samples, cfg.workers, [&](long i) {
    RandomStream rng = RandomStream::substream(cfg.seed, static_cast<std::uint64_t>(i));
    try {
      out[i] = sample_one(state, rng);
    } catch (const numerical_error& e) {
      throw numerical_error("sample " + std::to_string(i) + ": " + e.what(), e.step());
    }
  });
  return out;
}

}  // namespace fgm

#endif
