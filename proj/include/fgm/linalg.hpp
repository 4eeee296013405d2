#ifndef FGM_LINALG_HPP
#define FGM_LINALG_HPP

/*
 * Dense numerical kernels shared by the whole library:
 *
 *   - determinants and Pfaffians carried as (sign, log|value|) pairs, so that
 *     quantities like det(1 + Gamma) = 2^L never leave the representable range
 *     and probability ratios stay accurate at any system size;
 *   - Haar-random orthogonal / unitary matrices (QR of a Ginibre matrix with
 *     the R-diagonal sign/phase correction);
 *   - the spectrum {nu_j} of a real skew-symmetric matrix (eigenvalues come in
 *     pairs +- i nu_j), via Householder reduction to tridiagonal form.
 *
 * The log magnitudes are accumulated as sign * m * 2^e with m in [1, 2), and
 * only converted to log(m) + e*log(2) at the end. Besides being more accurate
 * than summing per-factor logs, this makes determinants that are exact powers
 * of two come out bit-identical to L * std::log(2.0), which the stabilizer
 * zero tests rely on.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "fgm/error.hpp"
#include "fgm/rng.hpp"

namespace fgm {

struct SignedLogDet {
  int sign = 1;          // +1, -1, or 0 (exactly singular)
  double log_abs = 0.0;  // meaningful only when sign != 0

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// |det| of a complex matrix in log form, plus the unit-modulus phase.
struct PhasedLogDet {
  std::complex<double> phase{1.0, 0.0};
  double log_abs = 0.0;
  bool zero = false;
};

// Running product sign * m * 2^e with m kept in [1, 2).
class ScaledProduct {
 public:
  void multiply(double f) {
    if (f == 0.0) {
      zero_ = true;
      return;
    }
    if (f < 0.0) {
      sign_ = -sign_;
      f = -f;
    }
    int k;
    m_ = 2.0 * std::frexp(m_ * f, &k);  // frexp mantissa is in [0.5, 1)
    e_ += k - 1;
  }

  void negate() { sign_ = -sign_; }
  bool zero() const { return zero_; }

  SignedLogDet log() const {
    if (zero_) return {0, 0.0};
    return {sign_, std::log(m_) + static_cast<double>(e_) * std::log(2.0)};
  }

 private:
  double m_ = 1.0;
  long e_ = 0;
  int sign_ = 1;
  bool zero_ = false;
};

// LU with partial pivoting, in place; returns the determinant in log form.
// An exactly zero pivot column short-circuits to sign 0.
inline SignedLogDet lu_log_det_inplace(Eigen::Ref<Eigen::MatrixXd> a) {
  const Eigen::Index n = a.rows();
  ScaledProduct det;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p;
    a.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    if (a(p, k) == 0.0) return {0, 0.0};
    if (p != k) {
      a.row(p).swap(a.row(k));
      det.negate();
    }
    det.multiply(a(k, k));
    const Eigen::Index m = n - k - 1;
    if (m > 0) {
      a.col(k).tail(m) /= a(k, k);
      a.bottomRightCorner(m, m).noalias() -= a.col(k).tail(m) * a.row(k).tail(m);
    }
  }
  return det.log();
}

inline SignedLogDet log_det(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw input_error("log_det: matrix must be square");
  if (!m.allFinite()) throw input_error("log_det: non-finite entries");
  Eigen::MatrixXd work = m;
  return lu_log_det_inplace(work);
}

// Complex pivoted LU; tracks |det| in log form and the phase separately.
inline PhasedLogDet log_det(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw input_error("log_det: matrix must be square");
  if (!m.allFinite()) throw input_error("log_det: non-finite entries");
  Eigen::MatrixXcd a = m;
  const Eigen::Index n = a.rows();
  ScaledProduct mag;
  std::complex<double> phase{1.0, 0.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p;
    a.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    const double apk = std::abs(a(p, k));
    if (apk == 0.0) return {{1.0, 0.0}, 0.0, true};
    if (p != k) {
      a.row(p).swap(a.row(k));
      phase = -phase;
    }
    mag.multiply(std::abs(a(k, k)));
    phase *= a(k, k) / std::abs(a(k, k));
    const Eigen::Index r = n - k - 1;
    if (r > 0) {
      a.col(k).tail(r) /= a(k, k);
      a.bottomRightCorner(r, r).noalias() -= a.col(k).tail(r) * a.row(k).tail(r);
    }
  }
  return {phase, mag.log().log_abs, false};
}

inline double max_asymmetry(const Eigen::MatrixXd& a) {
  return (a + a.transpose()).cwiseAbs().maxCoeff();
}

constexpr double kSkewTolerance = 1e-10;

// Pfaffian via Parlett-Reid reduction with partial pivoting, in place.
// Congruence transforms M A M^T with unit-triangular M leave the Pfaffian
// invariant; each row/column transposition flips its sign. The reduced form
// is skew tridiagonal and Pf = prod of the (2k, 2k+1) entries.
inline SignedLogDet pfaffian_inplace(Eigen::Ref<Eigen::MatrixXd> a) {
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) return {0, 0.0};
  if (n == 0) return {1, 0.0};
  ScaledProduct pf;
  Eigen::VectorXd mult(n);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index p;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&p);
    p += k + 1;
    if (a(p, k) == 0.0) return {0, 0.0};
    if (p != k + 1) {
      a.row(p).swap(a.row(k + 1));
      a.col(p).swap(a.col(k + 1));
      pf.negate();
    }
    pf.multiply(a(k, k + 1));
    const Eigen::Index r = n - k - 2;  // rows/cols below the pivot pair
    if (r > 0) {
      auto m = mult.head(r);
      m = a.col(k).tail(r) / a(k + 1, k);
      // rows k+2.., then columns k+2.., restricted to the trailing block
      a.block(k + 2, k + 1, r, r + 1).noalias() -= m * a.row(k + 1).segment(k + 1, r + 1);
      a.block(k + 1, k + 2, r + 1, r).noalias() -= a.col(k + 1).segment(k + 1, r + 1) * m.transpose();
    }
  }
  return pf.log();
}

inline SignedLogDet pfaffian(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw input_error("pfaffian: matrix must be square");
  if (!a.allFinite()) throw input_error("pfaffian: non-finite entries");
  if (a.rows() % 2 != 0) return {0, 0.0};
  if (a.rows() == 0) return {1, 0.0};
  if (max_asymmetry(a) > kSkewTolerance)
    throw input_error("pfaffian: matrix is not skew-symmetric within tolerance");
  Eigen::MatrixXd work = a;
  return pfaffian_inplace(work);
}

// Haar measure on O(n). With force_special the sample is pushed into SO(n)
// by flipping one column when det = -1.
inline Eigen::MatrixXd haar_orthogonal(int n, RandomStream& rng, bool force_special = false) {
  if (n < 1) throw input_error("haar_orthogonal: n must be >= 1");
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd rdiag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j)
    if (rdiag(j) < 0.0) q.col(j) = -q.col(j);
  if (force_special && log_det(q).sign < 0) q.col(n - 1) = -q.col(n - 1);
  return q;
}

inline Eigen::MatrixXcd haar_unitary(int n, RandomStream& rng) {
  if (n < 1) throw input_error("haar_unitary: n must be >= 1");
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::VectorXcd rdiag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(rdiag(j));
    if (mag > 0.0) q.col(j) *= std::conj(rdiag(j)) / mag;
  }
  return q;
}

// Nonnegative values nu_j (descending) such that the eigenvalues of the real
// skew-symmetric input are +- i nu_j. Householder similarity reduces A to
// skew tridiagonal form; the tridiagonal with zero diagonal and the same
// off-diagonal magnitudes, read as symmetric, has spectrum {+-nu_j}.
inline Eigen::VectorXd skew_spectrum(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw input_error("skew_spectrum: matrix must be square");
  if (a.rows() % 2 != 0) throw input_error("skew_spectrum: dimension must be even");
  if (max_asymmetry(a) > kSkewTolerance)
    throw input_error("skew_spectrum: matrix is not skew-symmetric within tolerance");
  const Eigen::Index n = a.rows();
  const Eigen::Index m = n / 2;
  Eigen::MatrixXd b = 0.5 * (a - a.transpose().eval());

  // Householder reduction; H B H with H = I - tau v v^T keeps B skew, and
  // B <- B + tau v u^T - tau u v^T with u = B v (v^T B v = 0 by skewness).
  Eigen::VectorXd sub(n - 1);
  Eigen::VectorXd v(n), u(n);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index r = n - k - 1;
    auto x = b.col(k).segment(k + 1, r);
    const double xnorm = x.norm();
    if (xnorm == 0.0) {
      sub(k) = 0.0;
      continue;
    }
    double alpha = (x(0) >= 0.0) ? -xnorm : xnorm;
    auto vk = v.head(r);
    vk = x;
    vk(0) -= alpha;
    const double vnorm2 = vk.squaredNorm();
    if (vnorm2 > 0.0) {
      const double tau = 2.0 / vnorm2;
      auto blk = b.block(k + 1, k + 1, r, r);
      auto uk = u.head(r);
      uk.noalias() = blk * vk;
      blk.noalias() += tau * (vk * uk.transpose() - uk * vk.transpose());
      b(k + 1, k) = alpha;
      b(k, k + 1) = -alpha;
      b.col(k).segment(k + 2, r - 1).setZero();
      b.row(k).segment(k + 2, r - 1).setZero();
    }
    sub(k) = b(k + 1, k);
  }
  if (n >= 2) sub(n - 2) = b(n - 1, n - 2);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending, symmetric about 0

  Eigen::VectorXd nu(m);
  for (Eigen::Index j = 0; j < m; ++j) nu(j) = std::max(evals(n - 1 - j), 0.0);
  return nu;  // descending
}

}  // namespace fgm

#endif
