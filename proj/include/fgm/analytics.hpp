#ifndef FGM_ANALYTICS_HPP
#define FGM_ANALYTICS_HPP

/*
 * Closed-form ensemble averages for number-conserving Gaussian states.
 *
 * Exact average IPR over the Haar isometry ensemble:
 *
 *   E[I_alpha] = C(L, N) * prod_{j=0}^{alpha-1} (j+N)! (j+L-N)! / (j! (j+L)!)
 *
 * evaluated by log-gamma accumulation (integer alpha >= 1). The annealed
 * participation entropy is log E[I_alpha] / (1 - alpha), and its large-L
 * expansion at fixed filling n = N/L is
 *
 *   L * h(n) - (1+alpha)/2 * log L + c(n; alpha),
 *   c(n; alpha) = -log(2 pi)/2 + log G(alpha+1)/(alpha-1)
 *                 - (1+alpha)/2 * log(n (1-n)),
 *
 * with h the binary entropy and G the Barnes G-function at integer argument,
 * G(m) = prod_{k=1}^{m-2} k!, so log G(alpha+1) = sum_{k=1}^{alpha-1} log k!.
 */

#include <cmath>
#include <numbers>

#include "fgm/error.hpp"

namespace fgm {

struct EnsembleSpec {
  int L = 0;
  int N = 0;
  int alpha = 1;

  double filling() const { return static_cast<double>(N) / static_cast<double>(L); }
};

inline double log_barnes_g(int m) {
  // log G(m) for integer m >= 1; G(1) = G(2) = G(3) = 1, G(4) = 2, ...
  if (m < 1) throw input_error("log_barnes_g: integer argument must be >= 1");
  double s = 0.0;
  for (int k = 1; k <= m - 2; ++k) s += std::lgamma(static_cast<double>(k) + 1.0);
  return s;
}

inline double log_avg_ipr_exact(const EnsembleSpec& spec) {
  const int L = spec.L, alpha = spec.alpha;
  if (L < 1 || spec.N < 0 || spec.N > L) throw input_error("avg_ipr_exact: need 0 <= N <= L");
  if (alpha < 1) throw input_error("avg_ipr_exact: integer alpha >= 1 required");
  if (alpha == 1 || spec.N == 0 || spec.N == L) return 0.0;  // normalization / single config
  const int N = std::min(spec.N, L - spec.N);  // particle-hole symmetric, exactly
  auto lg = [](int k) { return std::lgamma(static_cast<double>(k) + 1.0); };  // log k!
  double s = lg(L) - lg(N) - lg(L - N);  // log C(L, N)
  for (int j = 0; j < alpha; ++j) s += lg(j + N) + lg(j + L - N) - lg(j) - lg(j + L);
  return s;
}

inline double avg_ipr_exact(const EnsembleSpec& spec) { return std::exp(log_avg_ipr_exact(spec)); }

// Annealed average participation entropy, log E[I_alpha] / (1 - alpha).
inline double avg_pre_annealed(const EnsembleSpec& spec) {
  if (spec.alpha < 2) throw input_error("avg_pre_annealed: integer alpha >= 2 required");
  return log_avg_ipr_exact(spec) / (1.0 - static_cast<double>(spec.alpha));
}

inline double avg_pre_asymptotic(const EnsembleSpec& spec) {
  const double n = spec.filling();
  if (!(n > 0.0 && n < 1.0)) throw input_error("avg_pre_asymptotic: filling must be in (0, 1)");
  if (spec.alpha < 2) throw input_error("avg_pre_asymptotic: integer alpha >= 2 required");
  const double a = static_cast<double>(spec.alpha);
  const double L = static_cast<double>(spec.L);
  const double h = -n * std::log(n) - (1.0 - n) * std::log(1.0 - n);
  const double c = -0.5 * std::log(2.0 * std::numbers::pi) + log_barnes_g(spec.alpha + 1) / (a - 1.0) -
                   0.5 * (1.0 + a) * std::log(n * (1.0 - n));
  return L * h - 0.5 * (1.0 + a) * std::log(L) + c;
}

// Leading extensive term of the operator entropies for generic Haar states.
inline double haar_leading_reference(int L) {
  if (L < 1) throw input_error("haar_leading_reference: L must be >= 1");
  return static_cast<double>(L) * std::log(2.0);
}

}  // namespace fgm

#endif
