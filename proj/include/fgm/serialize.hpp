#ifndef FGM_SERIALIZE_HPP
#define FGM_SERIALIZE_HPP

/*
 * File formats.
 *
 *   covariance JSON      {"L": int, "gamma": [2L*2L reals, row-major]}
 *   sample batch CSV     sample_index, x (0/1 string of length 2L), log_prob
 *   estimate JSON        {alpha, m_alpha, m_alpha_filtered, stderr,
 *                         n_used, n_total, L, seed}
 *   sweep CSV            model, L_or_ell, N_or_blank, t, mu, delta, alpha,
 *                         m_filtered_mean, m_filtered_stderr, realizations,
 *                         samples, seed
 *
 * Doubles are printed with %.17g so equal values serialize to equal bytes.
 * The covariance loader re-runs the full constructor validation and refuses
 * anything that is not skew-symmetric or violates the spectral bound.
 */

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgm/gaussian.hpp"
#include "fgm/magic.hpp"
#include "fgm/models.hpp"
#include "fgm/sampler.hpp"

namespace fgm {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json covariance_to_json(const CovarianceMatrix& state) {
  const Eigen::MatrixXd& g = state.matrix();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(g.size()));
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) flat.push_back(g(r, c));
  return nlohmann::json{{"L", state.modes()}, {"gamma", flat}};
}

inline CovarianceMatrix covariance_from_json(const nlohmann::json& j) {
  if (!j.contains("L") || !j.contains("gamma"))
    throw input_error("covariance_from_json: missing \"L\" or \"gamma\"");
  const int L = j.at("L").get<int>();
  const auto flat = j.at("gamma").get<std::vector<double>>();
  if (L < 1 || flat.size() != static_cast<std::size_t>(4 * L * L))
    throw input_error("covariance_from_json: gamma must hold 2L*2L reals");
  Eigen::MatrixXd g(2 * L, 2 * L);
  for (int r = 0; r < 2 * L; ++r)
    for (int c = 0; c < 2 * L; ++c) g(r, c) = flat[static_cast<std::size_t>(r) * 2 * L + c];
  return CovarianceMatrix(std::move(g));  // validates skew symmetry + spectral bound
}

inline std::string bit_string(const BitString& x) {
  std::string s(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) s[i] = '1';
  return s;
}

inline std::string samples_to_csv(const std::vector<MajoranaSample>& batch) {
  std::ostringstream out;
  out << "sample_index,x,log_prob\n";
  for (std::size_t i = 0; i < batch.size(); ++i)
    out << i << ',' << bit_string(batch[i].x) << ',' << format_double(batch[i].log_prob) << '\n';
  return out.str();
}

inline nlohmann::json samples_to_json(const std::vector<MajoranaSample>& batch) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < batch.size(); ++i)
    arr.push_back({{"sample_index", i}, {"x", bit_string(batch[i].x)}, {"log_prob", batch[i].log_prob}});
  return arr;
}

inline nlohmann::json estimate_to_json(const SreEstimate& est, int L, std::uint64_t seed) {
  return nlohmann::json{{"alpha", est.alpha},
                        {"m_alpha", est.m_alpha},
                        {"m_alpha_filtered", est.m_alpha_filtered},
                        {"stderr", est.stderr_filtered},
                        {"n_used", est.n_used},
                        {"n_total", est.n_total},
                        {"L", L},
                        {"seed", seed}};
}

inline const char* kSweepCsvHeader =
    "model,L_or_ell,N_or_blank,t,mu,delta,alpha,m_filtered_mean,m_filtered_stderr,"
    "realizations,samples,seed";

inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.model << ',' << r.size << ',';
    if (r.particles) out << *r.particles;
    out << ',';
    if (r.t) out << format_double(*r.t);
    out << ',';
    if (r.mu) out << format_double(*r.mu);
    out << ',';
    if (r.delta) out << format_double(*r.delta);
    out << ',' << format_double(r.alpha) << ',' << format_double(r.m_filtered_mean) << ','
        << format_double(r.m_filtered_stderr) << ',' << r.realizations << ',' << r.samples << ','
        << r.seed << '\n';
  }
  return out.str();
}

inline nlohmann::json sweep_to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json row{{"model", r.model},
                       {"L_or_ell", r.size},
                       {"alpha", r.alpha},
                       {"m_filtered_mean", r.m_filtered_mean},
                       {"m_filtered_stderr", r.m_filtered_stderr},
                       {"realizations", r.realizations},
                       {"samples", r.samples},
                       {"seed", r.seed}};
    row["N_or_blank"] = r.particles ? nlohmann::json(*r.particles) : nlohmann::json();
    row["t"] = r.t ? nlohmann::json(*r.t) : nlohmann::json();
    row["mu"] = r.mu ? nlohmann::json(*r.mu) : nlohmann::json();
    row["delta"] = r.delta ? nlohmann::json(*r.delta) : nlohmann::json();
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace fgm

#endif
