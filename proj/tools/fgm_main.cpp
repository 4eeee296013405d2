// fgm: stabilizer Renyi entropies of fermionic Gaussian states.
//
// Subcommands
//   random-sre   filtered-SRE sweep over Haar-random Gaussian states
//   fixed-n      sweep over number-conserving random states, with the exact
//                IPR / participation-entropy columns appended
//   kitaev2d     magic-density sweep of the 2D lattice superconductor over mu
//   ipr-table    closed-form average IPR / participation entropy table
//   validate     run the oracle-equivalence and invariant self-checks
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error. Every stochastic
// output row carries the seed and sample counts that reproduce it; results
// are independent of the worker count.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fgm/analytics.hpp"
#include "fgm/models.hpp"
#include "fgm/serialize.hpp"
#include "fgm/validate.hpp"

namespace {

struct CommonOptions {
  std::uint64_t seed = 0;
  int workers = fgm::default_workers();
  std::string output;  // empty = stdout
  std::string format = "csv";
};

void write_output(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.output);
  if (!file) throw fgm::input_error("cannot open output file: " + opt.output);
  file << text;
}

void emit_sweep(const CommonOptions& opt, const std::vector<fgm::SweepRecord>& records) {
  if (opt.format == "json")
    write_output(opt, fgm::sweep_to_json(records).dump(2) + "\n");
  else
    write_output(opt, fgm::sweep_to_csv(records));
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool stochastic) {
  if (stochastic)
    cmd->add_option("--seed", opt.seed, "random seed (results are reproducible from it)")
        ->required();
  cmd->add_option("--workers", opt.workers, "worker threads (default: FGM_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", opt.output, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana sampling and magic estimation for fermionic Gaussian states"};
  app.require_subcommand(1);

  // random-sre
  CommonOptions random_opt;
  std::vector<int> random_sizes;
  std::vector<double> random_alphas{1.0, 2.0, 3.0};
  long random_realizations = 100, random_samples = 2000;
  auto* random_cmd = app.add_subcommand("random-sre", "filtered SREs of Haar-random states");
  random_cmd->add_option("--L", random_sizes, "system sizes (repeatable)")->required();
  random_cmd->add_option("--alpha", random_alphas, "Renyi indices (repeatable)");
  random_cmd->add_option("--realizations", random_realizations, "states per size")
      ->check(CLI::PositiveNumber);
  random_cmd->add_option("--samples", random_samples, "Majorana samples per state")
      ->check(CLI::PositiveNumber);
  add_common(random_cmd, random_opt, true);

  // fixed-n
  CommonOptions fixed_opt;
  int fixed_L = 0;
  std::vector<int> fixed_N;
  std::vector<double> fixed_alphas{2.0};
  long fixed_realizations = 100, fixed_samples = 2000;
  auto* fixed_cmd = app.add_subcommand("fixed-n", "SREs of number-conserving random states");
  fixed_cmd->add_option("--L", fixed_L, "system size")->required();
  fixed_cmd->add_option("--N", fixed_N, "particle numbers (repeatable)")->required();
  fixed_cmd->add_option("--alpha", fixed_alphas, "Renyi indices (repeatable)");
  fixed_cmd->add_option("--realizations", fixed_realizations, "states per filling")
      ->check(CLI::PositiveNumber);
  fixed_cmd->add_option("--samples", fixed_samples, "Majorana samples per state")
      ->check(CLI::PositiveNumber);
  add_common(fixed_cmd, fixed_opt, true);

  // kitaev2d
  CommonOptions kitaev_opt;
  int kitaev_ell = 4;
  double kitaev_t = 1.0, kitaev_delta = 0.0;
  std::vector<double> kitaev_mu;
  std::vector<double> kitaev_alphas{1.0};
  long kitaev_samples = 2000;
  auto* kitaev_cmd =
      app.add_subcommand("kitaev2d", "magic density of the 2D superconductor ground state");
  kitaev_cmd->add_option("--ell", kitaev_ell, "lattice sites per side")->check(CLI::Range(2, 64));
  kitaev_cmd->add_option("--t", kitaev_t, "hopping energy");
  kitaev_cmd->add_option("--delta", kitaev_delta, "pairing amplitude (units of t)");
  kitaev_cmd->add_option("--mu", kitaev_mu, "chemical potentials (units of t, repeatable)")
      ->required();
  kitaev_cmd->add_option("--alpha", kitaev_alphas, "Renyi indices (repeatable)");
  kitaev_cmd->add_option("--samples", kitaev_samples, "Majorana samples per state")
      ->check(CLI::PositiveNumber);
  add_common(kitaev_cmd, kitaev_opt, true);

  // ipr-table
  CommonOptions ipr_opt;
  std::vector<int> ipr_L, ipr_N;
  std::vector<int> ipr_alphas{2};
  auto* ipr_cmd = app.add_subcommand("ipr-table", "closed-form average IPR / PRE table");
  ipr_cmd->add_option("--L", ipr_L, "system sizes (repeatable)")->required();
  ipr_cmd->add_option("--N", ipr_N, "particle numbers (repeatable)")->required();
  ipr_cmd->add_option("--alpha", ipr_alphas, "integer Renyi indices (repeatable)");
  add_common(ipr_cmd, ipr_opt, false);

  // validate
  CommonOptions validate_opt;
  int validate_modes = 5;
  auto* validate_cmd = app.add_subcommand("validate", "run the self-check suites");
  validate_cmd->add_option("--max-modes", validate_modes, "largest system size checked")
      ->check(CLI::Range(2, 7));
  add_common(validate_cmd, validate_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (random_cmd->parsed()) {
      emit_sweep(random_opt,
                 fgm::sweep_random(random_sizes, random_alphas, random_realizations,
                                   random_samples, random_opt.seed, random_opt.workers));
    } else if (fixed_cmd->parsed()) {
      const auto records = fgm::sweep_fixed_n(fixed_L, fixed_N, fixed_alphas, fixed_realizations,
                                              fixed_samples, fixed_opt.seed, fixed_opt.workers);
      // append the closed-form columns per row
      if (fixed_opt.format == "json") {
        nlohmann::json arr = fgm::sweep_to_json(records);
        for (std::size_t i = 0; i < records.size(); ++i) {
          const fgm::EnsembleSpec spec{fixed_L, *records[i].particles,
                                       static_cast<int>(records[i].alpha)};
          const bool closed = records[i].alpha >= 2 && records[i].alpha == spec.alpha;
          arr[i]["ipr_exact"] =
              closed ? nlohmann::json(fgm::avg_ipr_exact(spec)) : nlohmann::json();
          arr[i]["pre_annealed"] =
              closed ? nlohmann::json(fgm::avg_pre_annealed(spec)) : nlohmann::json();
        }
        write_output(fixed_opt, arr.dump(2) + "\n");
      } else {
        std::ostringstream out;
        out << fgm::kSweepCsvHeader << ",ipr_exact,pre_annealed\n";
        const std::string base = fgm::sweep_to_csv(records);
        std::istringstream lines(base.substr(base.find('\n') + 1));
        std::string line;
        for (std::size_t i = 0; i < records.size(); ++i) {
          std::getline(lines, line);
          out << line << ',';
          const fgm::EnsembleSpec spec{fixed_L, *records[i].particles,
                                       static_cast<int>(records[i].alpha)};
          if (records[i].alpha >= 2 && records[i].alpha == spec.alpha)
            out << fgm::format_double(fgm::avg_ipr_exact(spec)) << ','
                << fgm::format_double(fgm::avg_pre_annealed(spec));
          else
            out << ',';
          out << '\n';
        }
        write_output(fixed_opt, out.str());
      }
    } else if (kitaev_cmd->parsed()) {
      std::vector<fgm::Kitaev2DParams> grid;
      for (double mu : kitaev_mu)
        grid.push_back({kitaev_ell, kitaev_t, mu * kitaev_t, kitaev_delta * kitaev_t});
      emit_sweep(kitaev_opt, fgm::sweep_kitaev(grid, kitaev_alphas, kitaev_samples,
                                               kitaev_opt.seed, kitaev_opt.workers));
    } else if (ipr_cmd->parsed()) {
      std::ostringstream out;
      const bool json = ipr_opt.format == "json";
      nlohmann::json arr = nlohmann::json::array();
      if (!json) out << "L,N,alpha,ipr_exact,pre_annealed,pre_asymptotic\n";
      for (int L : ipr_L) {
        for (int N : ipr_N) {
          if (N > L) continue;
          for (int alpha : ipr_alphas) {
            const fgm::EnsembleSpec spec{L, N, alpha};
            const double ipr = fgm::avg_ipr_exact(spec);
            const bool has_pre = alpha >= 2;
            const bool has_asy = has_pre && N > 0 && N < L;
            if (json) {
              nlohmann::json row{{"L", L}, {"N", N}, {"alpha", alpha}, {"ipr_exact", ipr}};
              row["pre_annealed"] =
                  has_pre ? nlohmann::json(fgm::avg_pre_annealed(spec)) : nlohmann::json();
              row["pre_asymptotic"] =
                  has_asy ? nlohmann::json(fgm::avg_pre_asymptotic(spec)) : nlohmann::json();
              arr.push_back(std::move(row));
            } else {
              out << L << ',' << N << ',' << alpha << ',' << fgm::format_double(ipr) << ',';
              if (has_pre) out << fgm::format_double(fgm::avg_pre_annealed(spec));
              out << ',';
              if (has_asy) out << fgm::format_double(fgm::avg_pre_asymptotic(spec));
              out << '\n';
            }
          }
        }
      }
      write_output(ipr_opt, json ? arr.dump(2) + "\n" : out.str());
    } else if (validate_cmd->parsed()) {
      const auto results = fgm::run_validation(validate_modes, validate_opt.seed);
      write_output(validate_opt, fgm::format_validation(results));
      return fgm::all_passed(results) ? 0 : 1;
    }
  } catch (const fgm::input_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const fgm::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
