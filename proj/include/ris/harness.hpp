#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ris/ao.hpp"
#include "ris/channel.hpp"

namespace ris {

/// Bad or unknown configuration input (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { tightness, rcg_convergence, ao_convergence, snr_sweep, ablation };
enum class OutputFormat { csv, json };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

/// N_b = 32, N_r = 6 x 6, N_u = 4, L = 6, K = 24, N_cp = 10 at 28 GHz / 1 GHz.
SystemConfig desk_scale_config();
/// N_b = 100, N_r = 13 x 13, N_u = 16, L = 6, K = 24, N_cp = 10.
SystemConfig paper_scale_config();

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::snr_sweep;
  SystemConfig system = desk_scale_config();
  std::vector<double> snr_db_list{0.0, 10.0, 20.0, 30.0};
  int n_angle_sets = 20;
  int n_gain_draws = 200;
  std::uint64_t master_seed = 1;
  std::string output_path;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
  int threads = 1;
  AoOptions ao;

  void validate() const;
};

/// Builds a spec from a flat JSON object. A "preset" key ("desk" or "paper")
/// is applied first; any other unrecognized key throws ConfigError.
ExperimentSpec spec_from_json(const nlohmann::json& doc);
ExperimentSpec load_spec(const std::string& path);

struct ResultRow {
  std::string experiment;
  std::string scheme;
  double snr_db = 0.0;
  int angle_set = 0;
  std::optional<int> iteration;
  std::optional<double> rate_mc;
  std::optional<double> rate_mc_stderr;
  std::optional<double> rate_approx;
  std::optional<double> rate_jensen;
  std::optional<double> objective;
};

// Scheme labels.
namespace scheme {
inline constexpr const char* kStreamUniform = "stream_uniform";  // Q from stream directions, q = 1/(K N_s)
inline constexpr const char* kIsotropic = "isotropic";           // Q = I / (K N_b)
inline constexpr const char* kBoth = "both_optimized";
inline constexpr const char* kQOnly = "q_only";
inline constexpr const char* kThetaOnly = "theta_only";
inline constexpr const char* kNeitherStream = "neither_stream";
inline constexpr const char* kNeitherIsotropic = "neither_isotropic";
inline constexpr const char* kRcg = "rcg";
inline constexpr const char* kAo = "ao";
}  // namespace scheme

std::vector<ResultRow> run_tightness(const ExperimentSpec& spec);
std::vector<ResultRow> run_rcg_convergence(const ExperimentSpec& spec);
std::vector<ResultRow> run_ao_convergence(const ExperimentSpec& spec);
/// snr_sweep emits both_optimized and neither_stream; ablation emits all five
/// optimization schemes.
std::vector<ResultRow> run_ao_sweep(const ExperimentSpec& spec);

/// Dispatches on spec.kind. Rows come back sorted.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

void sort_rows(std::vector<ResultRow>& rows);

inline constexpr const char* kCsvHeader =
    "experiment,scheme,snr_db,angle_set,iteration,rate_mc,rate_mc_stderr,rate_approx,rate_jensen,"
    "objective";

std::string format_csv(const std::vector<ResultRow>& rows);
nlohmann::json to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const nlohmann::json& doc);
/// Writes rows to path (stdout when empty); I/O failures name the path.
void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  OutputFormat format);

struct SchemeSummary {
  std::string experiment;
  std::string scheme;
  double snr_db = 0.0;
  int count = 0;
  double mean_rate_mc = 0.0;
  double stderr_rate_mc = 0.0;  // across angle sets
  double mean_rate_jensen = 0.0;
};

/// Per (experiment, scheme, snr) averages over angle sets of final rows
/// (rows without a Monte-Carlo rate are skipped).
std::vector<SchemeSummary> summarize_schemes(const std::vector<ResultRow>& rows);

struct TightnessSummary {
  double snr_db = 0.0;
  std::string scheme;
  int count = 0;
  double mean_error_approx = 0.0;  // NaN when the scheme has no approximation
  double mean_error_jensen = 0.0;
};

/// Normalized errors against the Monte-Carlo rate averaged over angle sets.
/// Rows with a zero reference rate count as zero error.
std::vector<TightnessSummary> summarize_tightness(const std::vector<ResultRow>& rows);

}  // namespace ris
