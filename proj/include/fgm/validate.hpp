#ifndef FGM_VALIDATE_HPP
#define FGM_VALIDATE_HPP

/*
 * Self-check suite behind the `validate` CLI subcommand: cross-checks the
 * Pfaffian/determinant production path against the dense statevector
 * reference and exercises the distribution/sampler invariants at small L.
 */

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fgm/gaussian.hpp"
#include "fgm/linalg.hpp"
#include "fgm/magic.hpp"
#include "fgm/models.hpp"
#include "fgm/oracle.hpp"
#include "fgm/sampler.hpp"

namespace fgm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace validate_detail {

inline Eigen::MatrixXd random_skew(int n, RandomStream& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 2.0 * rng.uniform() - 1.0;
  return a - a.transpose().eval();
}

}  // namespace validate_detail

inline std::vector<CheckResult> run_validation(int max_modes, std::uint64_t seed) {
  if (max_modes < 2) throw input_error("run_validation: max_modes must be >= 2");
  std::vector<CheckResult> results;
  RandomStream rng(seed);

  // Pfaffian^2 = det on random skew matrices; odd dimensions give exact 0.
  {
    double worst = 0.0;
    bool odd_ok = true;
    for (int n = 2; n <= 12; n += 2) {
      Eigen::MatrixXd a = validate_detail::random_skew(n, rng);
      const SignedLogDet pf = pfaffian(a);
      const SignedLogDet det = log_det(a);
      worst = std::max(worst, std::abs(2.0 * pf.log_abs - det.log_abs));
      Eigen::MatrixXd b = validate_detail::random_skew(n + 1, rng);
      odd_ok = odd_ok && (pfaffian(b).sign == 0);
    }
    results.push_back({"pfaffian squared equals determinant", worst < 1e-10 && odd_ok,
                       "max log-domain deviation " + format_double(worst)});
  }

  // Haar factories produce orthogonal / unitary matrices.
  {
    const Eigen::MatrixXd o = haar_orthogonal(32, rng);
    const Eigen::MatrixXcd u = haar_unitary(32, rng);
    const double res_o =
        (o * o.transpose() - Eigen::MatrixXd::Identity(32, 32)).cwiseAbs().maxCoeff();
    const double res_u =
        (u * u.adjoint() - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff();
    results.push_back({"haar samples are orthogonal/unitary", res_o < 1e-12 && res_u < 1e-12,
                       "residuals " + format_double(res_o) + ", " + format_double(res_u)});
  }

  // Characteristic distribution vs the dense oracle, entrywise, plus the
  // Majorana <-> Pauli relabeling and the exact entropies.
  {
    double worst_pi = 0.0, worst_sre = 0.0;
    bool bijection_ok = true;
    for (int L = 2; L <= std::min(max_modes, 5); ++L) {
      const Eigen::MatrixXd o = haar_orthogonal(2 * L, rng, /*force_special=*/true);
      const CovarianceMatrix state = rotate(vacuum_covariance(L), o);
      const DenseState dense = statevector_from_rotation(o, L);
      const std::vector<double> oracle_pi = majorana_characteristic_distribution(dense);
      const std::vector<double> pauli_pi = exact_characteristic_distribution(dense);
      const double log_norm = log_characteristic_norm(state).log_abs;
      BitString x(2 * L, 0);
      for (std::uint64_t m = 0; m < oracle_pi.size(); ++m) {
        for (int b = 0; b < 2 * L; ++b) x[b] = (m >> b) & 1ULL;
        const double lp = characteristic_log_probability(state, x, log_norm);
        const double pi = std::isinf(lp) ? 0.0 : std::exp(lp);
        worst_pi = std::max(worst_pi, std::abs(pi - oracle_pi[m]));
        const std::uint64_t p = pauli_index_of_majorana(L, m);
        bijection_ok = bijection_ok && std::abs(oracle_pi[m] - pauli_pi[p]) < 1e-12;
      }
      for (double alpha : {1.0, 2.0, 3.0}) {
        const SreExact exact = sre_exact(state, alpha);
        const SreExact ref = oracle_sre(dense, alpha);
        worst_sre = std::max(worst_sre, std::abs(exact.m_alpha - ref.m_alpha));
        worst_sre = std::max(worst_sre, std::abs(exact.m_alpha_filtered - ref.m_alpha_filtered));
      }
    }
    results.push_back({"pfaffian distribution matches dense oracle",
                       worst_pi < 1e-10 && bijection_ok,
                       "max entrywise deviation " + format_double(worst_pi)});
    results.push_back({"exact SREs match oracle entropies", worst_sre < 1e-10,
                       "max deviation " + format_double(worst_sre)});
  }

  // Slater construction vs dense two-point functions.
  {
    double worst = 0.0;
    for (int L = 2; L <= 3; ++L) {
      for (int N = 0; N <= L; ++N) {
        const Eigen::MatrixXcd u = haar_unitary(L, rng);
        const OrbitalMatrix orbitals(L, u.leftCols(N));
        const CovarianceMatrix state = from_orbitals(orbitals);
        const DenseState dense = statevector_from_orbitals(orbitals);
        worst = std::max(worst,
                         (state.matrix() - covariance_from_state(dense)).cwiseAbs().maxCoeff());
      }
    }
    results.push_back({"orbital construction matches dense two-point functions", worst < 1e-8,
                       "max covariance deviation " + format_double(worst)});
  }

  // Sampler invariants on random pure states: chain rule telescopes to the
  // full-string marginal, adjacent marginals are consistent, weights even.
  {
    double worst_chain = 0.0, worst_marg = 0.0;
    bool even_ok = true;
    for (int L = 2; L <= std::min(max_modes, 5); ++L) {
      const CovarianceMatrix state = random_gaussian(L, rng);
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<SamplerStep> trace;
        const MajoranaSample s = sample_one_traced(state, rng, &trace);
        even_ok = even_ok && (weight(s.x) % 2 == 0);
        double chain = 1.0;
        BitString prefix;
        for (int mu = 0; mu < 2 * L; ++mu) {
          const double before = marginal_probability(state, prefix);
          prefix.push_back(0);
          const double p0 = marginal_probability(state, prefix);
          prefix.back() = 1;
          const double p1 = marginal_probability(state, prefix);
          worst_marg = std::max(worst_marg, std::abs(p0 + p1 - before));
          prefix.back() = s.x[mu];
          chain *= s.x[mu] ? trace[mu].p1 : trace[mu].p0;
        }
        const double full = marginal_probability(state, s.x);
        worst_chain = std::max(worst_chain, std::abs(chain - full) / full);
      }
    }
    results.push_back({"chain rule telescopes to full-string marginal", worst_chain < 1e-8,
                       "max relative deviation " + format_double(worst_chain)});
    results.push_back({"marginals are exchange-consistent", worst_marg < 1e-8,
                       "max deviation " + format_double(worst_marg)});
    results.push_back(
        {"pure-state samples have even weight", even_ok, even_ok ? "all even" : "odd weight seen"});
  }

  // Number conservation of the fixed-N ensemble: Tr<c^dag c> from Gamma.
  {
    double worst = 0.0;
    for (int N = 0; N <= 6; N += 2) {
      const CovarianceMatrix state = random_gaussian_fixed_n(6, N, rng);
      double total = 0.0;
      for (int i = 0; i < 6; ++i) total += 0.5 * (1.0 - state.matrix()(2 * i, 2 * i + 1));
      worst = std::max(worst, std::abs(total - N));
    }
    results.push_back({"fixed-N states conserve particle number", worst < 1e-8,
                       "max deviation " + format_double(worst)});
  }

  return results;
}

inline std::string format_validation(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results)
    out << (r.pass ? "[ OK ] " : "[FAIL] ") << r.name << " -- " << r.detail << '\n';
  int passed = 0;
  for (const auto& r : results) passed += r.pass;
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace fgm

#endif
