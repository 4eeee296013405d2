#ifndef FGM_TEST_HELPERS_HPP
#define FGM_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "fgm/gaussian.hpp"

namespace fgm_test {

// Exact characteristic distribution by full enumeration, indexed by the
// integer whose bit b is x_{b+1}.
inline std::vector<double> enumerate_pi(const fgm::CovarianceMatrix& state) {
  const int L = state.modes();
  const double log_norm = fgm::log_characteristic_norm(state).log_abs;
  std::vector<double> pi(1ULL << (2 * L), 0.0);
  fgm::BitString x(2 * L, 0);
  for (std::uint64_t m = 0; m < pi.size(); ++m) {
    for (int b = 0; b < 2 * L; ++b) x[b] = (m >> b) & 1ULL;
    const double lp = fgm::characteristic_log_probability(state, x, log_norm);
    pi[m] = std::isinf(lp) ? 0.0 : std::exp(lp);
  }
  return pi;
}

inline std::uint64_t index_of(const fgm::BitString& x) {
  std::uint64_t m = 0;
  for (std::size_t b = 0; b < x.size(); ++b)
    if (x[b]) m |= 1ULL << b;
  return m;
}

}  // namespace fgm_test

#endif
