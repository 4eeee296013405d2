#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fgm/magic.hpp"
#include "fgm/models.hpp"
#include "test_helpers.hpp"

using namespace fgm;

TEST_CASE("stabilizer states estimate to exactly zero") {
  for (int L : {2, 6, 24}) {
    const CovarianceMatrix vac = vacuum_covariance(L);
    const auto batch = sample_batch(vac, {5, 500, 1});
    for (double alpha : {1.0, 2.0, 3.0}) {
      const SreEstimate est = sre_estimate(batch, alpha, L);
      CHECK(est.m_alpha_filtered == 0.0);
      CHECK(est.stderr_filtered == 0.0);
      CHECK(est.n_used <= est.n_total);
    }
  }
}

TEST_CASE("estimator matches exact enumeration within 3 sigma") {
  RandomStream rng(101);
  const int L = 4;
  const CovarianceMatrix state = random_gaussian(L, rng);
  const auto batch = sample_batch(state, {2024, 50000, 1});
  for (double alpha : {1.0, 2.0}) {
    const SreEstimate est = sre_estimate(batch, alpha, L);
    const SreExact exact = sre_exact(state, alpha);
    CHECK(std::abs(est.m_alpha_filtered - exact.m_alpha_filtered) < 3.0 * est.stderr_filtered);
    CHECK(est.stderr_filtered > 0.0);
  }
}

TEST_CASE("estimator rejects empty batches") {
  const CovarianceMatrix vac = vacuum_covariance(2);
  std::vector<MajoranaSample> identity_only{{BitString(4, 0), -2.0 * std::log(2.0)}};
  CHECK_THROWS_AS(sre_estimate(identity_only, 2.0, 2), insufficient_samples);
  CHECK_THROWS_AS(sre_estimate({}, 2.0, 2), insufficient_samples);
  CHECK_THROWS_AS(sre_estimate(sample_batch(vac, {1, 10, 1}), 0.0, 2), input_error);
}

TEST_CASE("mixed-state estimation keeps the parity string") {
  std::vector<MajoranaSample> batch{{BitString(4, 1), std::log(0.25)},
                                    {BitString{1, 1, 0, 0}, std::log(0.25)}};
  const SreEstimate keep = sre_estimate(batch, 2.0, 2, /*filter_parity=*/false);
  CHECK(keep.n_used == 2);
  CHECK_FALSE(keep.parity_filtered);
  const SreEstimate drop = sre_estimate(batch, 2.0, 2);
  CHECK(drop.n_used == 1);
}

TEST_CASE("exact SREs of stabilizer states vanish") {
  for (double alpha : {1.0, 2.0, 3.0}) {
    const SreExact vac = sre_exact(vacuum_covariance(3), alpha);
    CHECK(std::abs(vac.m_alpha) < 1e-12);
    CHECK(std::abs(vac.m_alpha_filtered) < 1e-12);
    const SreExact occ =
        sre_exact(from_orbitals(OrbitalMatrix(3, Eigen::MatrixXcd::Identity(3, 3))), alpha);
    CHECK(std::abs(occ.m_alpha) < 1e-12);
    CHECK(std::abs(occ.m_alpha_filtered) < 1e-12);
  }
}

TEST_CASE("filtered and unfiltered exact SREs obey the removal identity") {
  // exp((1-a)(Mt + log D)) is the filtered moment Q-tilde; restoring the two
  // removed strings gives Q = 2/D^a + (D-2)/D * Q-tilde and hence M.
  RandomStream rng(311);
  for (int L : {3, 4}) {
    const CovarianceMatrix state = random_gaussian(L, rng);
    const double dim = std::pow(2.0, L);
    for (double alpha : {2.0, 3.0, 1.7}) {
      const SreExact e = sre_exact(state, alpha);
      const double lhs =
          std::exp((1.0 - alpha) * (e.m_alpha_filtered + std::log(dim))) * (dim - 2.0) / dim +
          2.0 / std::pow(dim, alpha);
      const double rhs = std::exp((1.0 - alpha) * (e.m_alpha + std::log(dim)));
      CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact SRE is independent of alpha on the vacuum") {
  for (double alpha : {1.0, 1.5, 2.0, 3.0, 4.0})
    CHECK(std::abs(sre_exact(vacuum_covariance(4), alpha).m_alpha) < 1e-12);
}

TEST_CASE("participation probabilities") {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(4, 2);
  const OrbitalMatrix orbitals(4, v);
  CHECK(participation_probability(orbitals, {1, 1, 0, 0}) == 1.0);
  CHECK(participation_probability(orbitals, {1, 0, 1, 0}) == 0.0);
  CHECK(participation_probability(orbitals, {1, 1, 1, 0}) == 0.0);  // wrong sector
  CHECK_THROWS_AS(participation_probability(orbitals, {1, 1, 0}), input_error);

  RandomStream rng(7);
  const OrbitalMatrix random(4, haar_unitary(4, rng).leftCols(2));
  double total = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::vector<std::uint8_t> z(4, 0);
      z[a] = z[b] = 1;
      total += participation_probability(random, z);
    }
  CHECK(total == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("exact participation entropies") {
  const OrbitalMatrix empty(4, Eigen::MatrixXcd::Zero(4, 0));
  ParticipationResult r = pre_exact(empty, 2.0);
  CHECK(r.ipr == 1.0);
  CHECK(r.s_alpha == 0.0);

  const OrbitalMatrix fock(4, Eigen::MatrixXcd::Identity(4, 2));
  r = pre_exact(fock, 2.0);
  CHECK(r.ipr == Catch::Approx(1.0).margin(1e-14));

  RandomStream rng(23);
  double mean = 0.0, m2 = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const OrbitalMatrix o(4, haar_unitary(4, rng).leftCols(2));
    const double v = pre_exact(o, 2.0).ipr;
    mean += v;
    m2 += v * v;
  }
  mean /= draws;
  const double se = std::sqrt((m2 / draws - mean * mean) / draws);
  CHECK(std::abs(mean - 0.3) < 3.0 * se);  // closed-form ensemble average
}

TEST_CASE("shannon limit is continuous at alpha = 1") {
  RandomStream rng(41);
  const CovarianceMatrix state = random_gaussian(3, rng);
  const double at1 = sre_exact(state, 1.0).m_alpha;
  const double near1 = sre_exact(state, 1.0 + 1e-6).m_alpha;
  CHECK(std::abs(at1 - near1) < 1e-4);
}
