#ifndef FGM_MAGIC_HPP
#define FGM_MAGIC_HPP

/*
 * Stabilizer Renyi entropies from Majorana samples, and exact small-system
 * references.
 *
 * With D = 2^L and samples x^(i) ~ pi, the identity and parity strings
 * (all-zeros / all-ones) are discarded; over the retained batch of size
 * n_used the estimators are
 *
 *   alpha != 1:  Qt = mean pi^(alpha-1)          (log-sum-exp, max shift)
 *                Mt_alpha = log(Qt)/(1-alpha) - log D
 *                Q  = 2/D^alpha + (D-2)/D * Qt
 *                M_alpha  = log(Q)/(1-alpha) - log D
 *   alpha == 1:  Qt = mean(-log pi)              (shift by the first value)
 *                Mt_1 = Qt - log D
 *                M_1  = (D-2)/D * Qt + (2/D) log D - log D
 *
 * The standard error is the delta-method error of the filtered estimate:
 * std(pi^(alpha-1)) / (sqrt(n) |1-alpha| Qt) for alpha != 1, and the plain
 * standard error of -log pi at alpha = 1.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fgm/error.hpp"
#include "fgm/gaussian.hpp"
#include "fgm/sampler.hpp"

namespace fgm {

struct SreEstimate {
  double alpha = 0.0;
  double m_alpha = 0.0;
  double m_alpha_filtered = 0.0;
  double stderr_filtered = 0.0;
  long n_used = 0;
  long n_total = 0;
  bool parity_filtered = true;  // false when the state is mixed
};

struct SreExact {
  double m_alpha = 0.0;
  double m_alpha_filtered = 0.0;
};

struct ParticipationResult {
  double alpha = 0.0;
  double s_alpha = 0.0;
  double ipr = 0.0;
};

namespace detail {

inline bool all_equal_to(const BitString& x, std::uint8_t v) {
  for (auto b : x)
    if (b != v) return false;
  return true;
}

}  // namespace detail

inline SreEstimate sre_estimate(const std::vector<MajoranaSample>& samples, double alpha, int L,
                                bool filter_parity = true) {
  if (alpha <= 0.0) throw input_error("sre_estimate: alpha must be > 0");
  if (L < 1) throw input_error("sre_estimate: L must be >= 1");

  std::vector<double> log_pi;
  log_pi.reserve(samples.size());
  for (const auto& s : samples) {
    if (detail::all_equal_to(s.x, 0)) continue;
    if (filter_parity && detail::all_equal_to(s.x, 1)) continue;
    log_pi.push_back(s.log_prob);
  }
  const long n = static_cast<long>(log_pi.size());
  if (n == 0) throw insufficient_samples("sre_estimate: no samples left after filtering");

  const double l_log2 = static_cast<double>(L) * std::log(2.0);  // log D
  const double dim = std::pow(2.0, static_cast<double>(L));

  SreEstimate est;
  est.alpha = alpha;
  est.n_used = n;
  est.n_total = static_cast<long>(samples.size());
  est.parity_filtered = filter_parity;

  if (alpha == 1.0) {
    // Shannon limit: average of -log pi, centered on the first value so a
    // constant batch gives the exact mean with zero variance.
    const double ref = -log_pi[0];
    double acc = 0.0;
    for (double lp : log_pi) acc += (-lp) - ref;
    const double mean = ref + acc / static_cast<double>(n);
    double var = 0.0;
    for (double lp : log_pi) {
      const double d = (-lp) - mean;
      var += d * d;
    }
    var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
    est.m_alpha_filtered = mean - l_log2;
    est.stderr_filtered = std::sqrt(var / static_cast<double>(n));
    est.m_alpha = (1.0 - 2.0 / dim) * mean + (2.0 / dim) * l_log2 - l_log2;
    return est;
  }

  // log of mean(pi^(alpha-1)) and of the second moment, max-shifted.
  double wmax = -std::numeric_limits<double>::infinity();
  for (double lp : log_pi) wmax = std::max(wmax, (alpha - 1.0) * lp);
  double s1 = 0.0, s2 = 0.0;
  for (double lp : log_pi) {
    const double w = (alpha - 1.0) * lp;
    s1 += std::exp(w - wmax);
    s2 += std::exp(2.0 * (w - wmax));
  }
  const double log_n = std::log(static_cast<double>(n));
  const double log_qt = wmax + (std::log(s1) - log_n);
  // second/first-moment ratio m2/m1^2; the max shift cancels exactly
  const double ratio = (s2 / s1) * (static_cast<double>(n) / s1);
  const double var_rel = n > 1 ? std::max(ratio - 1.0, 0.0) * static_cast<double>(n) /
                                     static_cast<double>(n - 1)
                               : 0.0;

  est.m_alpha_filtered = log_qt / (1.0 - alpha) - l_log2;
  est.stderr_filtered =
      std::sqrt(var_rel / static_cast<double>(n)) / std::abs(1.0 - alpha);

  // restore identity + parity for the unfiltered value, in log form
  const double a1 = log_qt + std::log1p(-2.0 / dim);
  const double a2 = std::log(2.0) - alpha * l_log2;
  const double hi = std::max(a1, a2);
  const double log_q = hi + std::log(std::exp(a1 - hi) + std::exp(a2 - hi));
  est.m_alpha = log_q / (1.0 - alpha) - l_log2;
  return est;
}

// Exact SREs by enumeration of all 4^L Majorana strings (L <= 10). Asserts
// the distribution normalizes before reporting. The filtered value removes
// the all-zeros and all-ones strings and rescales by D/(D-2).
inline SreExact sre_exact(const CovarianceMatrix& state, double alpha) {
  const int L = state.modes();
  if (L > 10) throw input_error("sre_exact: enumeration limited to L <= 10");
  if (alpha <= 0.0) throw input_error("sre_exact: alpha must be > 0");
  const double log_norm = log_characteristic_norm(state).log_abs;
  const std::uint64_t total = 1ULL << (2 * L);
  const double dim = std::pow(2.0, static_cast<double>(L));

  BitString x(2 * L, 0);
  double sum_pi = 0.0, sum_pow = 0.0, shannon = 0.0;
  double pi_identity = 0.0, pi_parity = 0.0;
  double sum_pow_filtered = 0.0, shannon_filtered = 0.0;
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int b = 0; b < 2 * L; ++b) x[b] = (m >> b) & 1ULL;
    const double lp = characteristic_log_probability(state, x, log_norm);
    if (lp == -std::numeric_limits<double>::infinity()) continue;
    const double p = std::exp(lp);
    sum_pi += p;
    sum_pow += std::pow(p, alpha);
    shannon -= p * lp;
    if (m == 0)
      pi_identity = p;
    else if (m == total - 1)
      pi_parity = p;
    else {
      sum_pow_filtered += std::pow(p, alpha);
      shannon_filtered -= p * lp;
    }
  }
  if (std::abs(sum_pi - 1.0) > 1e-8)
    throw numerical_error("sre_exact: characteristic distribution sums to " +
                          std::to_string(sum_pi));

  const double l_log2 = static_cast<double>(L) * std::log(2.0);
  const double rescale = dim / (dim - 2.0);  // pi -> pi_tilde
  SreExact out;
  if (alpha == 1.0) {
    out.m_alpha = shannon - l_log2;
    // -sum pi_t log pi_t over the filtered support, minus log(D-2)
    const double st = rescale * (shannon_filtered - (1.0 - pi_identity - pi_parity) * std::log(rescale));
    out.m_alpha_filtered = st - std::log(dim - 2.0);
  } else {
    out.m_alpha = std::log(sum_pow) / (1.0 - alpha) - l_log2;
    out.m_alpha_filtered =
        std::log(sum_pow_filtered * std::pow(rescale, alpha)) / (1.0 - alpha) -
        std::log(dim - 2.0);
  }
  return out;
}

// |<z|psi>|^2 = |det of the occupied-row restriction of V|^2; exactly zero
// off the N-particle sector.
inline double participation_probability(const OrbitalMatrix& orbitals,
                                        const std::vector<std::uint8_t>& z) {
  if (static_cast<int>(z.size()) != orbitals.L)
    throw input_error("participation_probability: occupation length must be L");
  int filled = 0;
  for (auto b : z) filled += (b != 0);
  if (filled != orbitals.N) return 0.0;
  if (orbitals.N == 0) return 1.0;
  Eigen::MatrixXcd sub(orbitals.N, orbitals.N);
  int r = 0;
  for (int i = 0; i < orbitals.L; ++i)
    if (z[i]) sub.row(r++) = orbitals.V.row(i);
  const PhasedLogDet d = log_det(sub);
  return d.zero ? 0.0 : std::exp(2.0 * d.log_abs);
}

// Exact participation entropies over the fixed-N sector, by enumerating the
// C(L, N) occupations (other sectors carry no weight).
inline ParticipationResult pre_exact(const OrbitalMatrix& orbitals, double alpha) {
  const int L = orbitals.L, N = orbitals.N;
  if (L > 24) throw input_error("pre_exact: sector enumeration limited to L <= 24");
  if (alpha <= 0.0) throw input_error("pre_exact: alpha must be > 0");

  std::vector<std::uint8_t> z(L, 0);
  std::vector<int> pos(N);
  for (int i = 0; i < N; ++i) pos[i] = i;
  double ipr = 0.0, shannon = 0.0;
  bool more = true;
  while (more) {
    std::fill(z.begin(), z.end(), 0);
    for (int p : pos) z[p] = 1;
    const double prob = participation_probability(orbitals, z);
    if (prob > 0.0) {
      ipr += std::pow(prob, alpha);
      shannon -= prob * std::log(prob);
    }
    if (N == 0) break;
    // next combination
    int i = N - 1;
    while (i >= 0 && pos[i] == L - N + i) --i;
    if (i < 0) {
      more = false;
    } else {
      ++pos[i];
      for (int j = i + 1; j < N; ++j) pos[j] = pos[j - 1] + 1;
    }
  }

  ParticipationResult out;
  out.alpha = alpha;
  out.ipr = ipr;
  out.s_alpha = (alpha == 1.0) ? shannon : std::log(ipr) / (1.0 - alpha);
  return out;
}

}  // namespace fgm

#endif
