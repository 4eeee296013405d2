#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fgm/analytics.hpp"

using namespace fgm;

TEST_CASE("average IPR closed form") {
  for (int L : {3, 5, 9})
    for (int N = 0; N <= L; ++N) CHECK(avg_ipr_exact({L, N, 1}) == 1.0);
  CHECK(avg_ipr_exact({6, 0, 3}) == 1.0);
  CHECK(avg_ipr_exact({6, 6, 3}) == 1.0);
  CHECK(avg_ipr_exact({4, 2, 2}) == Catch::Approx(0.3).margin(1e-14));
  // alpha = 2 telescopes to (N+1)! (L-N+1)! / (L+1)!
  auto ref = [](int L, int N) {
    return std::exp(std::lgamma(N + 2.0) + std::lgamma(L - N + 2.0) - std::lgamma(L + 2.0));
  };
  for (int L : {5, 12, 40})
    for (int N : {1, L / 2, L - 1})
      CHECK(avg_ipr_exact({L, N, 2}) == Catch::Approx(ref(L, N)).epsilon(1e-12));
}

TEST_CASE("average IPR is monotone in alpha and particle-hole symmetric") {
  for (int L : {6, 9}) {
    for (int N = 1; N < L; ++N) {
      double prev = avg_ipr_exact({L, N, 1});
      for (int alpha = 2; alpha <= 5; ++alpha) {
        const double cur = avg_ipr_exact({L, N, alpha});
        CHECK(cur < prev);
        CHECK(cur > 0.0);
        prev = cur;
      }
      for (int alpha = 1; alpha <= 4; ++alpha)
        CHECK(log_avg_ipr_exact({L, N, alpha}) == log_avg_ipr_exact({L, L - N, alpha}));
    }
  }
  CHECK_THROWS_AS(avg_ipr_exact({4, 5, 2}), input_error);
  CHECK_THROWS_AS(avg_ipr_exact({4, 2, 0}), input_error);
}

TEST_CASE("barnes g at integer arguments") {
  CHECK(log_barnes_g(1) == 0.0);
  CHECK(log_barnes_g(2) == 0.0);
  CHECK(log_barnes_g(3) == 0.0);
  CHECK(log_barnes_g(4) == Catch::Approx(std::log(2.0)));
  CHECK(log_barnes_g(5) == Catch::Approx(std::log(12.0)));
}

TEST_CASE("asymptotic participation entropy constant at half filling") {
  // c(1/2; 2) = -log(2 pi)/2 + 3 log 2 evaluated through the full formula
  const int L = 64;
  const double got = avg_pre_asymptotic({L, L / 2, 2});
  const double c = -0.5 * std::log(2.0 * std::numbers::pi) + 3.0 * std::log(2.0);
  const double expect = L * std::log(2.0) - 1.5 * std::log(static_cast<double>(L)) + c;
  CHECK(got == Catch::Approx(expect).margin(1e-12));
}

TEST_CASE("asymptotic matches the annealed value increasingly well") {
  double prev_gap = 1e9;
  for (int L : {50, 100, 200, 400}) {
    const EnsembleSpec spec{L, L / 2, 2};
    const double gap = std::abs(avg_pre_annealed(spec) - avg_pre_asymptotic(spec));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.05);

  // off half filling as well
  prev_gap = 1e9;
  for (int L : {64, 128, 256}) {
    const EnsembleSpec spec{L, L / 4, 3};
    const double gap = std::abs(avg_pre_annealed(spec) - avg_pre_asymptotic(spec));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("asymptotic input validation") {
  CHECK_THROWS_AS(avg_pre_asymptotic({10, 0, 2}), input_error);
  CHECK_THROWS_AS(avg_pre_asymptotic({10, 10, 2}), input_error);
  CHECK_THROWS_AS(avg_pre_asymptotic({10, 5, 1}), input_error);
}

TEST_CASE("haar reference line") {
  CHECK(haar_leading_reference(1) == Catch::Approx(std::log(2.0)));
  CHECK(haar_leading_reference(100) == Catch::Approx(100.0 * std::log(2.0)));
  CHECK_THROWS_AS(haar_leading_reference(0), input_error);
}
