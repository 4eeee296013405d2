#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fgm/models.hpp"
#include "fgm/serialize.hpp"

using namespace fgm;

TEST_CASE("covariance json round trip") {
  RandomStream rng(3);
  const CovarianceMatrix state = random_gaussian(3, rng);
  const nlohmann::json j = covariance_to_json(state);
  CHECK(j.at("L") == 3);
  const CovarianceMatrix back = covariance_from_json(j);
  CHECK((back.matrix() - state.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.is_pure() == state.is_pure());
}

TEST_CASE("covariance loader refuses invalid data") {
  nlohmann::json j = covariance_to_json(vacuum_covariance(2));
  j["gamma"][1] = 2.0;  // breaks skew symmetry
  CHECK_THROWS_AS(covariance_from_json(j), input_error);

  nlohmann::json spectral = covariance_to_json(vacuum_covariance(1));
  spectral["gamma"] = std::vector<double>{0.0, 1.5, -1.5, 0.0};  // nu = 1.5
  CHECK_THROWS_AS(covariance_from_json(spectral), input_error);

  nlohmann::json truncated{{"L", 2}, {"gamma", std::vector<double>(7, 0.0)}};
  CHECK_THROWS_AS(covariance_from_json(truncated), input_error);
  CHECK_THROWS_AS(covariance_from_json(nlohmann::json{{"L", 2}}), input_error);
}

TEST_CASE("sample batch serialization") {
  const CovarianceMatrix vac = vacuum_covariance(2);
  const auto batch = sample_batch(vac, {9, 3, 1});
  const std::string csv = samples_to_csv(batch);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "sample_index,x,log_prob");
  std::getline(lines, line);
  CHECK(line.substr(0, 2) == "0,");
  CHECK(line.find(',') != std::string::npos);
  int rows = 1;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);

  const nlohmann::json arr = samples_to_json(batch);
  REQUIRE(arr.size() == 3);
  CHECK(arr[0].at("x").get<std::string>().size() == 4);
  CHECK(arr[2].at("sample_index") == 2);
}

TEST_CASE("estimate json carries the full record") {
  const CovarianceMatrix vac = vacuum_covariance(3);
  const SreEstimate est = sre_estimate(sample_batch(vac, {4, 50, 1}), 2.0, 3);
  const nlohmann::json j = estimate_to_json(est, 3, 4);
  for (const char* key :
       {"alpha", "m_alpha", "m_alpha_filtered", "stderr", "n_used", "n_total", "L", "seed"})
    CHECK(j.contains(key));
  CHECK(j.at("m_alpha_filtered") == 0.0);
  CHECK(j.at("seed") == 4);
}

TEST_CASE("sweep csv format") {
  auto records = sweep_kitaev({{2, 1.0, -1.0, 0.0}}, {1.0}, 50, 5);
  const auto random_records = sweep_random({3}, {2.0}, 2, 50, 5);
  records.insert(records.end(), random_records.begin(), random_records.end());
  const std::string csv = sweep_to_csv(records);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "model,L_or_ell,N_or_blank,t,mu,delta,alpha,m_filtered_mean,m_filtered_stderr,"
        "realizations,samples,seed");
  std::string kitaev_row, random_row;
  std::getline(lines, kitaev_row);
  std::getline(lines, random_row);
  CHECK(kitaev_row.substr(0, 11) == "kitaev2d,2,");
  CHECK(kitaev_row.find(",-1,") != std::string::npos);   // mu column
  CHECK(random_row.substr(0, 12) == "random,3,,,,");     // N, t, mu, delta blank
  CHECK(random_row.find(",2,50,5") != std::string::npos);

  // identical inputs serialize to identical bytes
  const auto again = sweep_random({3}, {2.0}, 2, 50, 5);
  std::vector<SweepRecord> repeat(records.begin(), records.begin() + 1);
  repeat.insert(repeat.end(), again.begin(), again.end());
  CHECK(sweep_to_csv(repeat) == csv);

  const nlohmann::json j = sweep_to_json(records);
  REQUIRE(j.size() == records.size());
  CHECK(j[0].at("model") == "kitaev2d");
  CHECK(j[0].at("N_or_blank").is_null());
  CHECK(j[1].at("t").is_null());
}

TEST_CASE("doubles serialize losslessly") {
  for (double v : {0.3, -1.0 / 3.0, 1e-17, 123456.789012345678, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}
