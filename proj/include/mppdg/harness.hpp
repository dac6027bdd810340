#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mppdg/dg_operator.hpp"
#include "mppdg/problem.hpp"

namespace mppdg {

/// One simulation request. Unset optionals fall back to the problem's
/// defaults (order, mesh, final time, TVB parameter) and to the per-degree
/// CFL numbers and penalty.
struct RunConfig {
  std::string problem = "linear-1d";
  ProblemParams params;
  std::optional<int> order;
  std::optional<std::size_t> cells;
  std::optional<double> t_final;
  std::optional<double> cflc;
  std::optional<double> cfld;
  bool p3_time_scaling = false;
  bool mpp = true;
  std::optional<double> tvb;  ///< overrides the problem default
  bool tvb_off = false;       ///< disables TVB even if the problem has a default
  DiffusiveFluxForm flux_form = DiffusiveFluxForm::standard;
  std::optional<double> alpha;
  std::filesystem::path out;  ///< empty: no files written
  std::uint64_t seed = 0;

  /// Checks every override against the module constraints.
  void validate() const;
};

/// Applies one key=value pair (the same keys as the CLI flags, e.g.
/// "order=2", "param=epsilon=1e-4", "mpp=off"). Throws InvalidArgument.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a config file with one key=value per line; '#' starts a comment.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

struct RunResult {
  nlohmann::json report;
  std::vector<double> x_center;  ///< 2D: row-major over cells j*Nx + i
  std::vector<double> y_center;  ///< empty in 1D
  std::vector<double> averages;
};

/// Runs one simulation; writes report.json and solution.csv when config.out is set.
RunResult run_single(const RunConfig& config);

struct ConvergenceRow {
  std::size_t cells = 0;
  double l1 = 0.0;
  std::optional<double> l1_order;
  double linf = 0.0;
  std::optional<double> linf_order;
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 0;
};

struct ConvergenceTable {
  std::string problem;
  int order = 0;
  bool mpp = true;
  std::vector<ConvergenceRow> rows;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// log2(coarse / fine) for doubling meshes.
double observed_order(double coarse, double fine);

/// Runs every mesh (concurrently, see worker_threads()) and assembles the
/// table; writes table.csv and report.json when config.out is set.
ConvergenceTable run_convergence(const RunConfig& config, const std::vector<std::size_t>& meshes);

/// Suite names: porous-1d, bl-1d, bl-2d, rigid, swirl, vortex. Each case is
/// run with and without the MPP limiter. `meshes` overrides the suite's
/// mesh list for suites that sweep meshes.
nlohmann::json run_bounds_suite(const std::string& suite, const std::vector<std::size_t>& meshes = {},
                                const std::filesystem::path& out = {});
std::vector<std::string> bounds_suites();

/// Parallel width from MPPDG_THREADS (0 or unset: hardware concurrency).
std::size_t worker_threads();

/// Schema file names under schemas/.
inline constexpr const char* report_schema_name = "report.schema.json";
inline constexpr const char* convergence_schema_name = "convergence.schema.json";
inline constexpr const char* bounds_schema_name = "bounds.schema.json";

}  // namespace mppdg
