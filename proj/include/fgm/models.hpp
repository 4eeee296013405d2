#ifndef FGM_MODELS_HPP
#define FGM_MODELS_HPP

/*
 * State factories and sweep drivers.
 *
 * Random ensembles: Gamma = O Gamma_0 O^T with O Haar on O(2L), and the
 * number-conserving variant built from the first N columns of a Haar unitary.
 *
 * 2D p-wave superconductor on an ell x ell periodic lattice (L = ell^2 modes),
 * momentum grid k = 2 pi m / ell:
 *
 *   eps_k   = -(mu - 4t) - 2t (cos kx + cos ky)
 *   Delta_k = 2 i Delta (sin kx + i sin ky)
 *   E_k     = sqrt(eps_k^2 + |Delta_k|^2)
 *
 * Ground-state correlators per momentum: n_k = (1 - eps_k/E_k)/2 and pair
 * amplitude <c_k c_-k> = Delta_k / (2 E_k); exactly degenerate modes
 * (E_k below tolerance) are left unoccupied, which makes parameter sweeps
 * deterministic at gapless points. Real-space G and F follow by inverse
 * Fourier transform and Gamma by the standard block assembly. The exact
 * ground-state energy -1/2 sum E_k + 1/2 sum eps_k is exposed for tests.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fgm/error.hpp"
#include "fgm/gaussian.hpp"
#include "fgm/magic.hpp"
#include "fgm/parallel.hpp"
#include "fgm/rng.hpp"
#include "fgm/sampler.hpp"

namespace fgm {

inline CovarianceMatrix random_gaussian(int L, RandomStream& rng) {
  if (L < 1) throw input_error("random_gaussian: L must be >= 1");
  return rotate(vacuum_covariance(L), haar_orthogonal(2 * L, rng));
}

inline CovarianceMatrix random_gaussian_fixed_n(int L, int N, RandomStream& rng) {
  if (L < 1 || N < 0 || N > L) throw input_error("random_gaussian_fixed_n: need 0 <= N <= L");
  if (N == 0) return vacuum_covariance(L);
  const Eigen::MatrixXcd u = haar_unitary(L, rng);
  return from_orbitals(OrbitalMatrix(L, u.leftCols(N)));
}

struct Kitaev2DParams {
  int ell = 2;        // sites per side
  double t = 1.0;     // hopping, sets the energy scale
  double mu = 0.0;    // chemical potential, units of t
  double delta = 0.0; // pairing amplitude, units of t

  void validate() const {
    if (ell < 2) throw input_error("Kitaev2DParams: ell must be >= 2");
    if (!(t > 0.0)) throw input_error("Kitaev2DParams: t must be > 0");
  }
};

struct DispersionPoint {
  double kx = 0.0, ky = 0.0;
  double eps = 0.0;
  std::complex<double> delta_k{0.0, 0.0};
  double energy = 0.0;  // sqrt(eps^2 + |delta_k|^2)
};

inline std::vector<DispersionPoint> kitaev2d_dispersion(const Kitaev2DParams& p) {
  p.validate();
  std::vector<DispersionPoint> out;
  out.reserve(static_cast<std::size_t>(p.ell) * p.ell);
  for (int my = 0; my < p.ell; ++my) {
    for (int mx = 0; mx < p.ell; ++mx) {
      DispersionPoint d;
      d.kx = 2.0 * std::numbers::pi * mx / p.ell;
      d.ky = 2.0 * std::numbers::pi * my / p.ell;
      d.eps = -(p.mu - 4.0 * p.t) - 2.0 * p.t * (std::cos(d.kx) + std::cos(d.ky));
      d.delta_k = std::complex<double>(0.0, 2.0 * p.delta) *
                  std::complex<double>(std::sin(d.kx), std::sin(d.ky));
      d.energy = std::hypot(d.eps, std::abs(d.delta_k));
      out.push_back(d);
    }
  }
  return out;
}

inline double kitaev2d_ground_energy(const Kitaev2DParams& p) {
  double sum_e = 0.0, sum_eps = 0.0;
  for (const auto& d : kitaev2d_dispersion(p)) {
    sum_e += d.energy;
    sum_eps += d.eps;
  }
  return -0.5 * sum_e + 0.5 * sum_eps;
}

inline CovarianceMatrix kitaev2d_ground_state(const Kitaev2DParams& p) {
  p.validate();
  const int ell = p.ell;
  const int sites = ell * ell;  // site r = x + ell*y
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(sites, sites);
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(sites, sites);
  constexpr double kDegenerate = 1e-12;

  for (const auto& d : kitaev2d_dispersion(p)) {
    double n_k = 0.0;
    std::complex<double> f_k{0.0, 0.0};
    if (d.energy < kDegenerate) {
      n_k = 0.0;  // degenerate point: mode left unoccupied
    } else {
      n_k = 0.5 * (1.0 - d.eps / d.energy);
      f_k = d.delta_k / (2.0 * d.energy);
    }
    if (n_k == 0.0 && f_k == std::complex<double>(0.0, 0.0)) continue;
    for (int r = 0; r < sites; ++r) {
      const int rx = r % ell, ry = r / ell;
      for (int s = 0; s < sites; ++s) {
        const int sx = s % ell, sy = s / ell;
        const double arg = d.kx * (sx - rx) + d.ky * (sy - ry);
        // G_{rs} = (1/sites) sum_k e^{ik (s - r)} n_k ; F uses e^{ik (r - s)}
        const std::complex<double> ph(std::cos(arg), std::sin(arg));
        G(r, s) += n_k * ph / static_cast<double>(sites);
        F(r, s) += f_k * std::conj(ph) / static_cast<double>(sites);
      }
    }
  }
  return covariance_from_correlations(G, F);
}

// One row of a parameter sweep. Fields that do not apply to the model stay
// empty (blank columns in CSV).
struct SweepRecord {
  std::string model;          // "random", "fixed-n", "kitaev2d"
  int size = 0;               // L, or ell for the lattice model
  std::optional<int> particles;
  std::optional<double> t, mu, delta;
  double alpha = 0.0;
  double m_filtered_mean = 0.0;
  double m_filtered_stderr = 0.0;
  long realizations = 0;
  long samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Ensemble mean and standard error across per-realization estimates; a single
// realization falls back to its own sampling error.
inline void aggregate(const std::vector<double>& values, const std::vector<double>& errors,
                      double& mean, double& err) {
  const long r = static_cast<long>(values.size());
  double acc = 0.0;
  for (double v : values) acc += v;
  mean = acc / static_cast<double>(r);
  if (r == 1) {
    err = errors[0];
    return;
  }
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  err = std::sqrt(var / static_cast<double>(r - 1) / static_cast<double>(r));
}

struct RealizationEstimates {
  std::vector<double> m;    // one entry per alpha
  std::vector<double> err;
};

}  // namespace detail

// Random-ensemble sweep: for each L draw `realizations` Haar states, sample
// each once and estimate every alpha from the shared batch.
inline std::vector<SweepRecord> sweep_random(const std::vector<int>& l_values,
                                             const std::vector<double>& alphas, long realizations,
                                             long samples_per_state, std::uint64_t seed,
                                             int workers = 1) {
  if (realizations < 1 || samples_per_state < 1)
    throw input_error("sweep_random: counts must be >= 1");
  std::vector<SweepRecord> records;
  for (std::size_t li = 0; li < l_values.size(); ++li) {
    const int L = l_values[li];
    std::vector<detail::RealizationEstimates> per_real(realizations);
    parallel_for(realizations, workers, [&](long r) {
      RandomStream state_rng(mix_seed(seed, 2 * (li * realizations + r)));
      const CovarianceMatrix state = random_gaussian(L, state_rng);
      SamplerConfig cfg{mix_seed(seed, 2 * (li * realizations + r) + 1), samples_per_state, 1};
      const auto batch = sample_batch(state, cfg);
      for (double a : alphas) {
        const SreEstimate est = sre_estimate(batch, a, L);
        per_real[r].m.push_back(est.m_alpha_filtered);
        per_real[r].err.push_back(est.stderr_filtered);
      }
    });
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      std::vector<double> vals(realizations), errs(realizations);
      for (long r = 0; r < realizations; ++r) {
        vals[r] = per_real[r].m[ai];
        errs[r] = per_real[r].err[ai];
      }
      SweepRecord rec;
      rec.model = "random";
      rec.size = L;
      rec.alpha = alphas[ai];
      detail::aggregate(vals, errs, rec.m_filtered_mean, rec.m_filtered_stderr);
      rec.realizations = realizations;
      rec.samples = samples_per_state;
      rec.seed = seed;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

// Fixed-N sweep at a single L over a list of particle numbers.
inline std::vector<SweepRecord> sweep_fixed_n(int L, const std::vector<int>& n_values,
                                              const std::vector<double>& alphas, long realizations,
                                              long samples_per_state, std::uint64_t seed,
                                              int workers = 1) {
  if (realizations < 1 || samples_per_state < 1)
    throw input_error("sweep_fixed_n: counts must be >= 1");
  std::vector<SweepRecord> records;
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const int N = n_values[ni];
    std::vector<detail::RealizationEstimates> per_real(realizations);
    parallel_for(realizations, workers, [&](long r) {
      RandomStream state_rng(mix_seed(seed, 2 * (ni * realizations + r)));
      const CovarianceMatrix state = random_gaussian_fixed_n(L, N, state_rng);
      SamplerConfig cfg{mix_seed(seed, 2 * (ni * realizations + r) + 1), samples_per_state, 1};
      const auto batch = sample_batch(state, cfg);
      for (double a : alphas) {
        const SreEstimate est = sre_estimate(batch, a, L);
        per_real[r].m.push_back(est.m_alpha_filtered);
        per_real[r].err.push_back(est.stderr_filtered);
      }
    });
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      std::vector<double> vals(realizations), errs(realizations);
      for (long r = 0; r < realizations; ++r) {
        vals[r] = per_real[r].m[ai];
        errs[r] = per_real[r].err[ai];
      }
      SweepRecord rec;
      rec.model = "fixed-n";
      rec.size = L;
      rec.particles = N;
      rec.alpha = alphas[ai];
      detail::aggregate(vals, errs, rec.m_filtered_mean, rec.m_filtered_stderr);
      rec.realizations = realizations;
      rec.samples = samples_per_state;
      rec.seed = seed;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

// Chemical-potential sweep of the lattice model. The ground state per point
// is deterministic, so one realization per point; records carry the magic
// density M_alpha / ell^2 and its sampling error.
inline std::vector<SweepRecord> sweep_kitaev(const std::vector<Kitaev2DParams>& grid,
                                             const std::vector<double>& alphas,
                                             long samples_per_state, std::uint64_t seed,
                                             int workers = 1) {
  if (samples_per_state < 1) throw input_error("sweep_kitaev: samples must be >= 1");
  std::vector<std::vector<SweepRecord>> per_point(grid.size());
  parallel_for(static_cast<long>(grid.size()), workers, [&](long g) {
    const Kitaev2DParams& p = grid[g];
    const CovarianceMatrix state = kitaev2d_ground_state(p);
    const int L = p.ell * p.ell;
    SamplerConfig cfg{mix_seed(seed, static_cast<std::uint64_t>(g)), samples_per_state, 1};
    const auto batch = sample_batch(state, cfg);
    const double density = 1.0 / static_cast<double>(L);
    for (double a : alphas) {
      const SreEstimate est = sre_estimate(batch, a, L);
      SweepRecord rec;
      rec.model = "kitaev2d";
      rec.size = p.ell;
      rec.t = p.t;
      rec.mu = p.mu;
      rec.delta = p.delta;
      rec.alpha = a;
      rec.m_filtered_mean = est.m_alpha_filtered * density;
      rec.m_filtered_stderr = est.stderr_filtered * density;
      rec.realizations = 1;
      rec.samples = samples_per_state;
      rec.seed = seed;
      per_point[g].push_back(std::move(rec));
    }
  });
  std::vector<SweepRecord> records;
  for (auto& v : per_point)
    for (auto& r : v) records.push_back(std::move(r));
  return records;
}

}  // namespace fgm

#endif
