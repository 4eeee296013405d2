#ifndef FGM_ORACLE_HPP
#define FGM_ORACLE_HPP

/*
 * Brute-force 2^L statevector reference, deliberately independent of the
 * covariance/Pfaffian code path: Majorana operators act through their
 * explicit Jordan-Wigner strings (gamma_{2i-1} = Z..Z X_i, gamma_{2i} =
 * Z..Z Y_i) on dense amplitude vectors, Gaussian rotations through a Givens
 * decomposition applied as exp(theta/2 gamma_mu gamma_nu), and Slater states
 * through row-restricted determinants. Everything here is O(4^L) or worse and
 * exists solely to validate the production path at small L.
 *
 * Pauli bookkeeping uses the canonical form i^q X^a Z^c (bitmasks a, c over
 * sites); products compose as (q, a, c)(q', a', c') =
 * (q + q' + 2 popcount(c & a'), a ^ a', c ^ c').
 */

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "fgm/error.hpp"
#include "fgm/gaussian.hpp"
#include "fgm/linalg.hpp"
#include "fgm/magic.hpp"

namespace fgm {

struct DenseState {
  int L = 0;
  Eigen::VectorXcd amps;  // 2^L amplitudes, unit norm

  void check_norm() const {
    if (std::abs(amps.norm() - 1.0) > 1e-10)
      throw numerical_error("DenseState: amplitudes are not normalized");
  }
};

namespace oracle_detail {

// Canonical Pauli word i^q X^a Z^c.
struct PauliWord {
  int q = 0;  // phase exponent mod 4
  std::uint64_t a = 0;
  std::uint64_t c = 0;
};

inline PauliWord majorana_word(int mu) {
  // 0-based: mu = 2s -> X_s with Z string below, mu = 2s+1 -> Y_s = i X_s Z_s.
  const int s = mu / 2;
  const std::uint64_t site = 1ULL << s;
  const std::uint64_t below = site - 1;
  if (mu % 2 == 0) return {0, site, below};
  return {1, site, below | site};
}

inline PauliWord multiply(const PauliWord& p, const PauliWord& r) {
  PauliWord out;
  out.q = (p.q + r.q + 2 * (std::popcount(p.c & r.a) & 1)) % 4;
  out.a = p.a ^ r.a;
  out.c = p.c ^ r.c;
  return out;
}

// <psi| i^q X^a Z^c |psi>
inline std::complex<double> expectation(const DenseState& state, const PauliWord& w) {
  const std::int64_t dim = state.amps.size();
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(static_cast<std::uint64_t>(b) & w.c) & 1) ? -1.0 : 1.0;
    acc += std::conj(state.amps(static_cast<std::int64_t>(static_cast<std::uint64_t>(b) ^ w.a))) *
           sign * state.amps(b);
  }
  static const std::complex<double> iq[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return iq[w.q] * acc;
}

}  // namespace oracle_detail

// psi -> gamma_mu psi, in place (mu is 0-based).
inline void apply_majorana(int mu, Eigen::VectorXcd& psi) {
  const int s = mu / 2;
  const std::uint64_t flip = 1ULL << s;
  const std::uint64_t zmask = flip - 1;
  const std::int64_t dim = psi.size();
  Eigen::VectorXcd out(dim);
  const bool ytype = (mu % 2 != 0);
  for (std::int64_t b = 0; b < dim; ++b) {
    const std::uint64_t ub = static_cast<std::uint64_t>(b);
    std::complex<double> amp = psi(b);
    if (std::popcount(ub & zmask) & 1) amp = -amp;
    if (ytype) amp *= (ub & flip) ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
    out(static_cast<std::int64_t>(ub ^ flip)) = amp;
  }
  psi.swap(out);
}

// <psi| gamma^x |psi> with gamma^x = gamma_1^{x_1} ... gamma_{2L}^{x_{2L}}.
inline std::complex<double> majorana_monomial_expectation(const DenseState& state,
                                                          const BitString& x) {
  if (static_cast<int>(x.size()) != 2 * state.L)
    throw input_error("majorana_monomial_expectation: string length must be 2L");
  oracle_detail::PauliWord w;  // identity
  for (int mu = 0; mu < 2 * state.L; ++mu)
    if (x[mu]) w = oracle_detail::multiply(w, oracle_detail::majorana_word(mu));
  return oracle_detail::expectation(state, w);
}

// Gaussian rotation applied to the vacuum: O in SO(2L) is decomposed into
// plane rotations and each factor acts as cos(t/2) + sin(t/2) gamma_mu gamma_nu.
inline DenseState statevector_from_rotation(const Eigen::MatrixXd& o, int L) {
  if (L < 1 || L > 12) throw input_error("statevector_from_rotation: need 1 <= L <= 12");
  const Eigen::Index n = 2 * L;
  if (o.rows() != n || o.cols() != n)
    throw input_error("statevector_from_rotation: rotation must be 2L x 2L");
  if ((o * o.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw input_error("statevector_from_rotation: matrix is not orthogonal");
  if (log_det(o).sign < 0)
    throw input_error("statevector_from_rotation: det = -1 is not a Gaussian rotation");

  // Givens sweep R_K ... R_1 O = 1; record (mu, nu, theta) of each R_k.
  struct Plane {
    int mu, nu;
    double theta;
  };
  std::vector<Plane> planes;
  Eigen::MatrixXd m = o;
  for (Eigen::Index j = 0; j < n - 1; ++j) {
    for (Eigen::Index i = n - 1; i > j; --i) {
      const double a = m(i - 1, j), b = m(i, j);
      if (b == 0.0) continue;
      const double theta = std::atan2(b, a);
      const double ct = std::cos(theta), st = std::sin(theta);
      const Eigen::RowVectorXd top = m.row(i - 1);
      m.row(i - 1) = ct * top + st * m.row(i);
      m.row(i) = -st * top + ct * m.row(i).eval();
      planes.push_back({static_cast<int>(i - 1), static_cast<int>(i), theta});
    }
  }
  if (m.diagonal().minCoeff() < 0.5)
    throw numerical_error("statevector_from_rotation: Givens sweep did not reach identity");

  DenseState state;
  state.L = L;
  state.amps = Eigen::VectorXcd::Zero(1LL << L);
  state.amps(0) = 1.0;
  // O = R_1^T ... R_K^T, so the last recorded plane acts first; R^T rotates
  // by -theta, and exp(-theta/2 gamma gamma) implements it.
  for (auto it = planes.rbegin(); it != planes.rend(); ++it) {
    const double half = -0.5 * it->theta;
    Eigen::VectorXcd tmp = state.amps;
    apply_majorana(it->nu, tmp);
    apply_majorana(it->mu, tmp);
    state.amps = std::cos(half) * state.amps + std::sin(half) * tmp;
  }
  state.check_norm();
  return state;
}

// Slater state: amplitude on each N-particle occupation z equals the
// determinant of the occupied-row restriction of V; with creation operators
// ordered by ascending site the Jordan-Wigner signs all come out +1.
inline DenseState statevector_from_orbitals(const OrbitalMatrix& orbitals) {
  const int L = orbitals.L, N = orbitals.N;
  if (L > 20) throw input_error("statevector_from_orbitals: need L <= 20");
  DenseState state;
  state.L = L;
  state.amps = Eigen::VectorXcd::Zero(1LL << L);
  if (N == 0) {
    state.amps(0) = 1.0;
    return state;
  }
  std::vector<int> pos(N);
  for (int i = 0; i < N; ++i) pos[i] = i;
  Eigen::MatrixXcd sub(N, N);
  while (true) {
    std::uint64_t idx = 0;
    for (int r = 0; r < N; ++r) {
      idx |= 1ULL << pos[r];
      sub.row(r) = orbitals.V.row(pos[r]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sub);
    state.amps(static_cast<std::int64_t>(idx)) = lu.determinant();
    int i = N - 1;
    while (i >= 0 && pos[i] == L - N + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < N; ++j) pos[j] = pos[j - 1] + 1;
  }
  state.check_norm();
  return state;
}

// Characteristic distribution over the 4^L Pauli strings, indexed by base-4
// site codes (0 I, 1 X, 2 Y, 3 Z); pi(P) = <P>^2 / D.
inline std::vector<double> exact_characteristic_distribution(const DenseState& state) {
  const int L = state.L;
  if (L > 7) throw input_error("exact_characteristic_distribution: need L <= 7");
  const std::uint64_t total = 1ULL << (2 * L);
  const double dim = static_cast<double>(1ULL << L);
  std::vector<double> pi(total);
  double sum = 0.0;
  for (std::uint64_t p = 0; p < total; ++p) {
    oracle_detail::PauliWord w;
    for (int s = 0; s < L; ++s) {
      const int code = (p >> (2 * s)) & 3ULL;
      const std::uint64_t site = 1ULL << s;
      if (code == 1) w.a |= site;
      if (code == 2) {
        w.a |= site;
        w.c |= site;
        w.q = (w.q + 1) % 4;  // Y = i X Z
      }
      if (code == 3) w.c |= site;
    }
    const std::complex<double> val = oracle_detail::expectation(state, w);
    pi[p] = std::norm(val) / dim;
    sum += pi[p];
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw numerical_error("exact_characteristic_distribution: sums to " + std::to_string(sum));
  return pi;
}

// Same distribution indexed by Majorana strings x in {0,1}^{2L} (bit b of the
// index is x_{b+1}); entrywise comparable with the Pfaffian-based pi.
inline std::vector<double> majorana_characteristic_distribution(const DenseState& state) {
  const int L = state.L;
  if (L > 7) throw input_error("majorana_characteristic_distribution: need L <= 7");
  const std::uint64_t total = 1ULL << (2 * L);
  const double dim = static_cast<double>(1ULL << L);
  std::vector<double> pi(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    oracle_detail::PauliWord w;
    for (int mu = 0; mu < 2 * L; ++mu)
      if ((m >> mu) & 1ULL) w = oracle_detail::multiply(w, oracle_detail::majorana_word(mu));
    pi[m] = std::norm(oracle_detail::expectation(state, w)) / dim;
  }
  return pi;
}

// The Pauli index whose string equals gamma^x up to phase; authenticates the
// Majorana <-> Pauli bijection.
inline std::uint64_t pauli_index_of_majorana(int L, std::uint64_t x) {
  oracle_detail::PauliWord w;
  for (int mu = 0; mu < 2 * L; ++mu)
    if ((x >> mu) & 1ULL) w = oracle_detail::multiply(w, oracle_detail::majorana_word(mu));
  std::uint64_t p = 0;
  for (int s = 0; s < L; ++s) {
    const bool xa = (w.a >> s) & 1ULL, zc = (w.c >> s) & 1ULL;
    const std::uint64_t code = xa ? (zc ? 2 : 1) : (zc ? 3 : 0);
    p |= code << (2 * s);
  }
  return p;
}

// Two-point covariance reconstructed from dense expectations,
// Gamma_{mu nu} = -i <gamma_mu gamma_nu> off the diagonal.
inline Eigen::MatrixXd covariance_from_state(const DenseState& state) {
  const int n = 2 * state.L;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  BitString x(n, 0);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      x.assign(n, 0);
      x[mu] = 1;
      x[nu] = 1;
      const std::complex<double> v = majorana_monomial_expectation(state, x);
      const std::complex<double> g = std::complex<double>(0, -1) * v;
      gamma(mu, nu) = g.real();
      gamma(nu, mu) = -g.real();
    }
  }
  return gamma;
}

// Renyi entropy of the enumerated distribution minus log D (and the filtered
// variant), for direct comparison with sre_exact.
inline SreExact oracle_sre(const DenseState& state, double alpha) {
  const std::vector<double> pi = majorana_characteristic_distribution(state);
  const double dim = static_cast<double>(1ULL << state.L);
  const double l_log2 = static_cast<double>(state.L) * std::log(2.0);
  double sum_pow = 0.0, shannon = 0.0, sum_pow_f = 0.0, shannon_f = 0.0;
  for (std::size_t m = 0; m < pi.size(); ++m) {
    const double p = pi[m];
    if (p <= 0.0) continue;
    sum_pow += std::pow(p, alpha);
    shannon -= p * std::log(p);
    if (m != 0 && m != pi.size() - 1) {
      sum_pow_f += std::pow(p, alpha);
      shannon_f -= p * std::log(p);
    }
  }
  const double rescale = dim / (dim - 2.0);
  SreExact out;
  if (alpha == 1.0) {
    out.m_alpha = shannon - l_log2;
    const double kept = 1.0 - pi.front() - pi.back();
    out.m_alpha_filtered =
        rescale * (shannon_f - kept * std::log(rescale)) - std::log(dim - 2.0);
  } else {
    out.m_alpha = std::log(sum_pow) / (1.0 - alpha) - l_log2;
    out.m_alpha_filtered =
        std::log(sum_pow_f * std::pow(rescale, alpha)) / (1.0 - alpha) - std::log(dim - 2.0);
  }
  return out;
}

}  // namespace fgm

#endif
