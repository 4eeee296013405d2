#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fgm/gaussian.hpp"
#include "fgm/models.hpp"

using namespace fgm;

TEST_CASE("vacuum covariance") {
  const CovarianceMatrix vac1 = vacuum_covariance(1);
  Eigen::MatrixXd block(2, 2);
  block << 0, 1, -1, 0;
  CHECK((vac1.matrix() - block).cwiseAbs().maxCoeff() == 0.0);

  const CovarianceMatrix vac3 = vacuum_covariance(3);
  const Eigen::MatrixXd g = vac3.matrix();
  CHECK((g * g + Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(vac3.is_pure());
  for (int L = 1; L <= 8; ++L) CHECK(purity(vacuum_covariance(L)) == 1.0);
}

TEST_CASE("covariance constructor validation") {
  Eigen::MatrixXd asym = vacuum_gamma(2);
  asym(0, 1) += 1e-6;
  CHECK_THROWS_AS(CovarianceMatrix(asym), input_error);

  Eigen::MatrixXd toobig(2, 2);
  toobig << 0, 1.5, -1.5, 0;  // nu = 1.5 violates the spectral bound
  CHECK_THROWS_AS(CovarianceMatrix(toobig), input_error);

  CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Zero(3, 3)), input_error);
}

TEST_CASE("rotate preserves structure") {
  const CovarianceMatrix vac = vacuum_covariance(4);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(8, 8);
  CHECK((rotate(vac, id).matrix() - vac.matrix()).cwiseAbs().maxCoeff() == 0.0);

  // planar rotation between the two Majoranas of modes 1 and 2
  Eigen::MatrixXd o = id;
  const double th = 0.7;
  o(1, 1) = std::cos(th);
  o(1, 2) = std::sin(th);
  o(2, 1) = -std::sin(th);
  o(2, 2) = std::cos(th);
  const CovarianceMatrix rotated = rotate(vac, o);
  const Eigen::VectorXd nu = skew_spectrum(rotated.matrix());
  for (int j = 0; j < 4; ++j) CHECK(nu(j) == Catch::Approx(1.0).margin(1e-12));

  RandomStream rng(2);
  const Eigen::MatrixXd haar = haar_orthogonal(8, rng);
  const CovarianceMatrix random = rotate(vac, haar);
  const Eigen::MatrixXd g = random.matrix();
  CHECK((g * g + Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(random.is_pure());
  CHECK(purity(random) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("rotate input validation") {
  const CovarianceMatrix vac = vacuum_covariance(2);
  CHECK_THROWS_AS(rotate(vac, Eigen::MatrixXd::Identity(6, 6)), input_error);
  CHECK_THROWS_AS(rotate(vac, 2.0 * Eigen::MatrixXd::Identity(4, 4)), input_error);
}

TEST_CASE("orbital construction limits") {
  const CovarianceMatrix empty = from_orbitals(OrbitalMatrix(3, Eigen::MatrixXcd::Zero(3, 0)));
  CHECK((empty.matrix() - vacuum_gamma(3)).cwiseAbs().maxCoeff() == 0.0);

  const CovarianceMatrix full = from_orbitals(OrbitalMatrix(3, Eigen::MatrixXcd::Identity(3, 3)));
  CHECK((full.matrix() + vacuum_gamma(3)).cwiseAbs().maxCoeff() == 0.0);

  // single occupied orbital (1,0,0): first block negated
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(3, 1);
  v(0, 0) = 1.0;
  Eigen::MatrixXd expected = vacuum_gamma(3);
  expected(0, 1) = -1.0;
  expected(1, 0) = 1.0;
  const CovarianceMatrix one = from_orbitals(OrbitalMatrix(3, v));
  CHECK((one.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXcd notiso = Eigen::MatrixXcd::Ones(3, 2);
  CHECK_THROWS_AS(OrbitalMatrix(3, notiso), input_error);
}

TEST_CASE("wick expectation basics") {
  const CovarianceMatrix vac = vacuum_covariance(3);
  const WickValue one = wick_expectation(vac, BitString(6, 0));
  CHECK(one.pf.sign == 1);
  CHECK(one.pf.log_abs == 0.0);

  BitString pair(6, 0);
  pair[0] = pair[1] = 1;
  const WickValue w = wick_expectation(vac, pair);
  CHECK(w.pf.sign == 1);
  CHECK(w.pf.log_abs == 0.0);
  CHECK(w.i_power == 1);

  BitString odd(6, 0);
  odd[2] = 1;
  CHECK(wick_expectation(vac, odd).is_zero());
  CHECK_THROWS_AS(wick_expectation(vac, BitString(4, 0)), input_error);
}

TEST_CASE("characteristic distribution normalizes, pure and mixed") {
  RandomStream rng(19);
  for (int L : {2, 3}) {
    // mixed state: lambda-scaled vacuum blocks
    Eigen::MatrixXd g = 0.6 * vacuum_gamma(L);
    for (const CovarianceMatrix& state :
         {random_gaussian(L, rng), CovarianceMatrix(g)}) {
      const double log_norm = log_characteristic_norm(state).log_abs;
      double total = 0.0;
      BitString x(2 * L, 0);
      for (std::uint64_t m = 0; m < (1ULL << (2 * L)); ++m) {
        for (int b = 0; b < 2 * L; ++b) x[b] = (m >> b) & 1ULL;
        const double lp = characteristic_log_probability(state, x, log_norm);
        if (!std::isinf(lp)) total += std::exp(lp);
      }
      CHECK(total == Catch::Approx(1.0).margin(1e-8));
    }
  }
}

TEST_CASE("purity values") {
  CHECK(purity(CovarianceMatrix(Eigen::MatrixXd::Zero(4, 4))) ==
        Catch::Approx(0.25).margin(1e-12));  // maximally mixed, 2^-L
  Eigen::MatrixXd half(2, 2);
  half << 0, 0.5, -0.5, 0;
  CHECK(purity(CovarianceMatrix(half)) == Catch::Approx(0.625).margin(1e-12));
}

TEST_CASE("entanglement entropy") {
  const CovarianceMatrix vac = vacuum_covariance(4);
  for (int l = 1; l <= 4; ++l) CHECK(entanglement_entropy(vac, l) < 1e-12);

  // two-mode paired state (|00> + |11>)/sqrt 2: G = diag(1/2), F_12 = -1/2
  Eigen::MatrixXcd G = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(2, 2);
  F(0, 1) = -0.5;
  F(1, 0) = 0.5;
  const CovarianceMatrix bell = covariance_from_correlations(G, F);
  CHECK(bell.is_pure());
  CHECK(entanglement_entropy(bell, 1) == Catch::Approx(std::log(2.0)).margin(1e-12));

  // complementarity: for a pure state the first l modes carry the same
  // entropy as the remaining L - l; expose the suffix by reversing the
  // mode order with an orthogonal permutation.
  RandomStream rng(5);
  const int L = 6;
  const CovarianceMatrix state = random_gaussian(L, rng);
  Eigen::MatrixXd reverse = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (int i = 0; i < L; ++i) {
    reverse(2 * (L - 1 - i), 2 * i) = 1.0;
    reverse(2 * (L - 1 - i) + 1, 2 * i + 1) = 1.0;
  }
  const CovarianceMatrix reversed = rotate(state, reverse);
  for (int l = 1; l <= 5; ++l)
    CHECK(std::abs(entanglement_entropy(state, l) - entanglement_entropy(reversed, L - l)) < 1e-8);
  CHECK_THROWS_AS(entanglement_entropy(state, 0), input_error);
  CHECK_THROWS_AS(entanglement_entropy(state, 7), input_error);
}

TEST_CASE("parity expectation") {
  CHECK(parity_expectation(vacuum_covariance(3)) == 1.0);
  for (int L : {2, 3, 4, 5}) {
    const CovarianceMatrix occ =
        from_orbitals(OrbitalMatrix(L, Eigen::MatrixXcd::Identity(L, L)));
    CHECK(parity_expectation(occ) == Catch::Approx(L % 2 == 0 ? 1.0 : -1.0).margin(1e-12));
  }
  RandomStream rng(13);
  const CovarianceMatrix state = random_gaussian(4, rng);
  CHECK(std::abs(std::abs(parity_expectation(state)) - 1.0) < 1e-8);
}
