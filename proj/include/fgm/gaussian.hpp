#ifndef FGM_GAUSSIAN_HPP
#define FGM_GAUSSIAN_HPP

/*
 * Covariance-matrix representation of fermionic Gaussian states.
 *
 * Conventions (fixed project-wide):
 *   gamma_{2i-1} = c_i + c_i^dag,  gamma_{2i} = i (c_i^dag - c_i)
 * so the vacuum covariance matrix is the block-diagonal sum of
 * [[0, 1], [-1, 0]] and under Jordan-Wigner gamma_{2i-1} maps to
 * Z...Z X_i, gamma_{2i} to Z...Z Y_i.
 *
 * Expectation values of Majorana monomials gamma^x reduce to Pfaffians of the
 * restriction of Gamma to the rows/columns selected by x, with phase i^{|x|/2}
 * tracked separately so squared magnitudes are plain determinants.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "fgm/error.hpp"
#include "fgm/linalg.hpp"

namespace fgm {

using BitString = std::vector<std::uint8_t>;

inline int weight(const BitString& x) {
  int w = 0;
  for (auto b : x) w += (b != 0);
  return w;
}

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

class CovarianceMatrix {
 public:
  static constexpr double kSpectralTol = 1e-8;
  static constexpr double kPurityTol = 1e-8;

  explicit CovarianceMatrix(Eigen::MatrixXd gamma) : gamma_(std::move(gamma)) {
    if (gamma_.rows() != gamma_.cols() || gamma_.rows() < 2 || gamma_.rows() % 2 != 0)
      throw input_error("CovarianceMatrix: gamma must be square of even dimension 2L");
    if (!gamma_.allFinite()) throw input_error("CovarianceMatrix: non-finite entries");
    if (max_asymmetry(gamma_) > kSkewTolerance)
      throw input_error("CovarianceMatrix: gamma is not skew-symmetric within tolerance");
    gamma_ = 0.5 * (gamma_ - gamma_.transpose().eval());  // machine-skew
    modes_ = static_cast<int>(gamma_.rows() / 2);
    const Eigen::VectorXd nu = skew_spectrum(gamma_);
    if (nu.size() > 0 && nu(0) > 1.0 + kSpectralTol)
      throw input_error("CovarianceMatrix: spectral bound violated (nu > 1)");
    const Eigen::Index n = gamma_.rows();
    pure_ = (gamma_ * gamma_ + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < kPurityTol;
  }

  int modes() const { return modes_; }
  const Eigen::MatrixXd& matrix() const { return gamma_; }
  bool is_pure() const { return pure_; }

 private:
  Eigen::MatrixXd gamma_;
  int modes_ = 0;
  bool pure_ = false;
};

inline Eigen::MatrixXd vacuum_gamma(int L) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (int i = 0; i < L; ++i) {
    g(2 * i, 2 * i + 1) = 1.0;
    g(2 * i + 1, 2 * i) = -1.0;
  }
  return g;
}

inline CovarianceMatrix vacuum_covariance(int L) {
  if (L < 1) throw input_error("vacuum_covariance: L must be >= 1");
  return CovarianceMatrix(vacuum_gamma(L));
}

inline CovarianceMatrix rotate(const CovarianceMatrix& state, const Eigen::MatrixXd& o) {
  const Eigen::Index n = state.matrix().rows();
  if (o.rows() != n || o.cols() != n)
    throw input_error("rotate: rotation must be 2L x 2L");
  const double res =
      (o * o.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (res > 1e-10) throw input_error("rotate: matrix is not orthogonal");
  Eigen::MatrixXd g = o * state.matrix() * o.transpose();
  return CovarianceMatrix(std::move(g));
}

struct OrbitalMatrix {
  int L = 0;
  int N = 0;
  Eigen::MatrixXcd V;  // L x N, isometric columns

  OrbitalMatrix(int modes, Eigen::MatrixXcd v) : L(modes), N(static_cast<int>(v.cols())), V(std::move(v)) {
    if (L < 1 || V.rows() != L || N < 0 || N > L)
      throw input_error("OrbitalMatrix: V must be L x N with 0 <= N <= L");
    if (N > 0) {
      const double res =
          (V.adjoint() * V - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
      if (res > 1e-10) throw input_error("OrbitalMatrix: columns are not orthonormal");
    }
  }
};

// Gamma from the fermionic correlators G_{ij} = <c_i^dag c_j> (Hermitian) and
// F_{ij} = <c_i c_j> (antisymmetric). These are the per-block components of
// -i (2 Omega^* C Omega^T - 1) with Omega^(i) = (1/sqrt 2) [[1, 1], [-i, i]],
// expanded so the assembly is exact for exact correlators:
//   Gamma_{2i-1,2j-1} = 2 Im(F + G)_{ij}
//   Gamma_{2i,  2j  } = 2 Im(G - F)_{ij}
//   Gamma_{2i-1,2j  } = delta_ij - 2 Re(G + F)_{ij}
//   Gamma_{2i,  2j-1} = -delta_ij + 2 Re(G - F)_{ij}
inline CovarianceMatrix covariance_from_correlations(const Eigen::MatrixXcd& G,
                                                     const Eigen::MatrixXcd& F) {
  const Eigen::Index L = G.rows();
  if (G.cols() != L || F.rows() != L || F.cols() != L)
    throw input_error("covariance_from_correlations: G and F must be L x L");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      const double gr = G(i, j).real(), gi = G(i, j).imag();
      const double fr = F(i, j).real(), fi = F(i, j).imag();
      const double d = (i == j) ? 1.0 : 0.0;
      g(2 * i, 2 * j) = 2.0 * (fi + gi);
      g(2 * i + 1, 2 * j + 1) = 2.0 * (gi - fi);
      g(2 * i, 2 * j + 1) = d - 2.0 * (gr + fr);
      g(2 * i + 1, 2 * j) = -d + 2.0 * (gr - fr);
    }
  }
  return CovarianceMatrix(std::move(g));
}

// Slater state |psi> = prod_k (sum_i V_{ik} c_i^dag) |0>:
// <c_i^dag c_j> = conj(V V^dag)_{ij}, no pairing.
inline CovarianceMatrix from_orbitals(const OrbitalMatrix& orbitals) {
  const int L = orbitals.L;
  Eigen::MatrixXcd G;
  if (orbitals.N == 0) {
    G = Eigen::MatrixXcd::Zero(L, L);
  } else {
    G = (orbitals.V * orbitals.V.adjoint()).conjugate();
  }
  return covariance_from_correlations(G, Eigen::MatrixXcd::Zero(L, L));
}

// Tr(rho gamma^x) = i^{|x|/2} Pf[Gamma|_x]; the i-power is reported as a
// phase class so the squared magnitude Pf^2 = det[Gamma|_x] stays real.
struct WickValue {
  SignedLogDet pf;  // sign 0 encodes an exactly vanishing expectation
  int i_power = 0;  // (|x|/2) mod 4

  bool is_zero() const { return pf.sign == 0; }
  // log of Tr(rho gamma^x)^2 in magnitude; -inf when zero
  double squared_log() const {
    return is_zero() ? -std::numeric_limits<double>::infinity() : 2.0 * pf.log_abs;
  }
  double squared() const { return is_zero() ? 0.0 : std::exp(2.0 * pf.log_abs); }
};

inline WickValue wick_expectation(const CovarianceMatrix& state, const BitString& x) {
  const int L = state.modes();
  if (static_cast<int>(x.size()) != 2 * L)
    throw input_error("wick_expectation: string length must be 2L");
  const int w = weight(x);
  if (w % 2 != 0) return {{0, 0.0}, 0};
  if (w == 0) return {{1, 0.0}, 0};
  Eigen::MatrixXd sub(w, w);
  std::vector<int> idx;
  idx.reserve(w);
  for (int i = 0; i < 2 * L; ++i)
    if (x[i]) idx.push_back(i);
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c) sub(r, c) = state.matrix()(idx[r], idx[c]);
  return {pfaffian_inplace(sub), (w / 2) % 4};
}

// log det(1 + Gamma); the normalization of the characteristic distribution.
inline SignedLogDet log_characteristic_norm(const CovarianceMatrix& state) {
  const Eigen::Index n = state.matrix().rows();
  Eigen::MatrixXd work = state.matrix();
  work.diagonal().array() += 1.0;
  SignedLogDet d = lu_log_det_inplace(work);
  if (d.sign <= 0) throw numerical_error("log_characteristic_norm: det(1 + Gamma) <= 0");
  (void)n;
  return d;
}

// pi(x) = det[Gamma|_x] / det[1 + Gamma], in log form (-inf for zero weight).
inline double characteristic_log_probability(const CovarianceMatrix& state, const BitString& x,
                                             double log_norm) {
  const WickValue v = wick_expectation(state, x);
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  return v.squared_log() - log_norm;
}

inline double characteristic_log_probability(const CovarianceMatrix& state, const BitString& x) {
  return characteristic_log_probability(state, x, log_characteristic_norm(state).log_abs);
}

// Tr rho^2 = det(1 + Gamma) / 2^L.
inline double purity(const CovarianceMatrix& state) {
  const double l2 = std::log(2.0);
  return std::exp(log_characteristic_norm(state).log_abs -
                  static_cast<double>(state.modes()) * l2);
}

// Entanglement entropy of the first l modes: sum_j h((1 + nu_j)/2) over the
// skew spectrum of the restricted covariance matrix, natural log.
inline double entanglement_entropy(const CovarianceMatrix& state, int l) {
  const int L = state.modes();
  if (l < 1 || l > L) throw input_error("entanglement_entropy: region size out of range");
  const Eigen::MatrixXd sub = state.matrix().topLeftCorner(2 * l, 2 * l);
  const Eigen::VectorXd nu = skew_spectrum(sub);
  double s = 0.0;
  for (Eigen::Index j = 0; j < nu.size(); ++j) {
    const double v = std::min(nu(j), 1.0);  // clip roundoff above 1
    s += binary_entropy(0.5 * (1.0 + v));
  }
  return s;
}

// <P> for the parity operator P = (-i)^L gamma_1 ... gamma_{2L}; the phases
// cancel and the value is just Pf(Gamma). Unit magnitude for pure states.
inline double parity_expectation(const CovarianceMatrix& state) {
  Eigen::MatrixXd work = state.matrix();
  const SignedLogDet pf = pfaffian_inplace(work);
  return pf.value();
}

}  // namespace fgm

#endif
