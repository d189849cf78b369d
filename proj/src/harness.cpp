#include "ris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "ris/rate.hpp"
#include "ris/rcg.hpp"
#include "ris/spectra.hpp"
#include "ris/waterfill.hpp"

namespace ris {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Enumerations and presets

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::tightness: return "tightness";
    case ExperimentKind::rcg_convergence: return "rcg_convergence";
    case ExperimentKind::ao_convergence: return "ao_convergence";
    case ExperimentKind::snr_sweep: return "snr_sweep";
    case ExperimentKind::ablation: return "ablation";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::tightness, ExperimentKind::rcg_convergence,
                    ExperimentKind::ao_convergence, ExperimentKind::snr_sweep,
                    ExperimentKind::ablation}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

SystemConfig desk_scale_config() { return SystemConfig{}; }

SystemConfig paper_scale_config() {
  SystemConfig c;
  c.n_b = 100;
  c.n_u = 16;
  c.n_r_y = 13;
  c.n_r_z = 13;
  return c;
}

void ExperimentSpec::validate() const {
  try {
    system.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (snr_db_list.empty()) throw ConfigError("snr_db_list must not be empty");
  for (double v : snr_db_list) {
    if (!std::isfinite(v)) throw ConfigError("snr_db_list entries must be finite");
  }
  if (n_angle_sets < 1) throw ConfigError("n_angle_sets must be >= 1");
  if (n_gain_draws < 1) throw ConfigError("n_gain_draws must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (ao.max_outer < 1 || ao.rcg.max_iter < 0) throw ConfigError("iteration limits must be positive");
  if (!(ao.tol > 0.0) || !(ao.rcg.tol_grad > 0.0)) throw ConfigError("tolerances must be positive");
}

// ---------------------------------------------------------------------------
// Config ingestion

namespace {

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

ExperimentSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentSpec spec;
  if (auto it = doc.find("preset"); it != doc.end()) {
    const auto preset = get_as<std::string>(*it, "preset");
    if (preset == "desk") {
      spec.system = desk_scale_config();
    } else if (preset == "paper") {
      spec.system = paper_scale_config();
      spec.n_angle_sets = 100;
      spec.n_gain_draws = 1000;
    } else {
      throw ConfigError("unknown preset '" + preset + "'");
    }
  }

  auto& s = spec.system;
  const std::map<std::string, std::function<void(const json&)>> setters = {
      {"preset", [](const json&) {}},
      {"experiment", [&](const json& v) { spec.kind = parse_experiment_kind(get_as<std::string>(v, "experiment")); }},
      {"n_b", [&](const json& v) { s.n_b = get_as<int>(v, "n_b"); }},
      {"n_u", [&](const json& v) { s.n_u = get_as<int>(v, "n_u"); }},
      {"n_r_y", [&](const json& v) { s.n_r_y = get_as<int>(v, "n_r_y"); }},
      {"n_r_z", [&](const json& v) { s.n_r_z = get_as<int>(v, "n_r_z"); }},
      {"k_sub", [&](const json& v) { s.k_sub = get_as<int>(v, "k_sub"); }},
      {"n_cp", [&](const json& v) { s.n_cp = get_as<int>(v, "n_cp"); }},
      {"f_c", [&](const json& v) { s.f_c = get_as<double>(v, "f_c"); }},
      {"f_s", [&](const json& v) { s.f_s = get_as<double>(v, "f_s"); }},
      {"l_g", [&](const json& v) { s.l_g = get_as<int>(v, "l_g"); }},
      {"l_t", [&](const json& v) { s.l_t = get_as<int>(v, "l_t"); }},
      {"l_h", [&](const json& v) { s.l_h = get_as<int>(v, "l_h"); }},
      {"gain_rate_h", [&](const json& v) { s.gain_rate_h = get_as<double>(v, "gain_rate_h"); }},
      {"gain_rate_g", [&](const json& v) { s.gain_rate_g = get_as<double>(v, "gain_rate_g"); }},
      {"gain_rate_t", [&](const json& v) { s.gain_rate_t = get_as<double>(v, "gain_rate_t"); }},
      {"snr_db_list", [&](const json& v) { spec.snr_db_list = get_as<std::vector<double>>(v, "snr_db_list"); }},
      {"n_angle_sets", [&](const json& v) { spec.n_angle_sets = get_as<int>(v, "n_angle_sets"); }},
      {"n_gain_draws", [&](const json& v) { spec.n_gain_draws = get_as<int>(v, "n_gain_draws"); }},
      {"master_seed", [&](const json& v) { spec.master_seed = get_as<std::uint64_t>(v, "master_seed"); }},
      {"output_path", [&](const json& v) { spec.output_path = get_as<std::string>(v, "output_path"); }},
      {"format", [&](const json& v) { spec.format = parse_output_format(get_as<std::string>(v, "format")); }},
      {"threads", [&](const json& v) { spec.threads = get_as<int>(v, "threads"); }},
      {"ao_tol", [&](const json& v) { spec.ao.tol = get_as<double>(v, "ao_tol"); }},
      {"ao_max_outer", [&](const json& v) { spec.ao.max_outer = get_as<int>(v, "ao_max_outer"); }},
      {"rcg_tol_grad", [&](const json& v) { spec.ao.rcg.tol_grad = get_as<double>(v, "rcg_tol_grad"); }},
      {"rcg_max_iter", [&](const json& v) { spec.ao.rcg.max_iter = get_as<int>(v, "rcg_max_iter"); }},
  };

  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value);
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return spec_from_json(doc);
}

// ---------------------------------------------------------------------------
// Ensemble orchestration

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Statistical CSI and the random RIS phases of one angle realization. Every
/// random quantity hangs off derive_seed(master, angle_set).
struct AngleSet {
  int index = 0;
  std::uint64_t seed = 0;
  ChannelStatistics stats;
  SteeringMatrices steering;
  PhaseVector random_theta;
  std::uint64_t gain_seed = 0;
  std::uint64_t approx_seed = 0;
};

AngleSet make_angle_set(const ExperimentSpec& spec, int index) {
  AngleSet a;
  a.index = index;
  a.seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(index));
  Rng angle_rng = make_stream(derive_seed(a.seed, stream::kAngles));
  a.stats = sample_statistics(angle_rng, spec.system);
  a.steering = steering_matrices(a.stats, spec.system);
  Rng phase_rng = make_stream(derive_seed(a.seed, stream::kPhase));
  a.random_theta = PhaseVector::random(phase_rng, spec.system.n_r());
  a.gain_seed = derive_seed(a.seed, stream::kGains);
  a.approx_seed = derive_seed(a.seed, stream::kApprox);
  return a;
}

/// Runs task(snr_index, angle_set) over the full grid on spec.threads workers
/// and concatenates the rows in grid order.
std::vector<ResultRow> run_grid(
    const ExperimentSpec& spec,
    const std::function<std::vector<ResultRow>(double snr_db, const AngleSet&)>& task) {
  spec.validate();
  const int n_snr = static_cast<int>(spec.snr_db_list.size());
  const int n_tasks = n_snr * spec.n_angle_sets;
  std::vector<std::vector<ResultRow>> results(n_tasks);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= n_tasks) return;
      try {
        const AngleSet a = make_angle_set(spec, t % spec.n_angle_sets);
        results[t] = task(spec.snr_db_list[t / spec.n_angle_sets], a);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_tasks);
      }
    }
  };

  const int n_workers = std::min(spec.threads, std::max(n_tasks, 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  sort_rows(rows);
  return rows;
}

ResultRow make_row(const ExperimentSpec& spec, const char* scheme_label, double snr_db,
                   const AngleSet& a) {
  ResultRow row;
  row.experiment = std::string(to_string(spec.kind));
  row.scheme = scheme_label;
  row.snr_db = snr_db;
  row.angle_set = a.index;
  return row;
}

void set_mc(ResultRow& row, const RateSample& mc) {
  row.rate_mc = mc.value;
  row.rate_mc_stderr = mc.std_err;
}

// sum_k sum_i log2(1 + zeta q) over the direct-link streams only.
double direct_log_sum(const Eigen::MatrixXd& zeta, const Eigen::MatrixXd& q,
                      const StreamRanks& ranks) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < zeta.rows(); ++k) {
    for (int i = ranks.reflect; i < ranks.total(); ++i) acc += std::log2(1.0 + zeta(k, i) * q(k, i));
  }
  return acc;
}

}  // namespace

std::vector<ResultRow> run_tightness(const ExperimentSpec& spec) {
  const auto& cfg = spec.system;
  return run_grid(spec, [&](double snr_db, const AngleSet& a) {
    const double snr = db_to_linear(snr_db);
    const auto analysis = eigen_profile(a.steering, a.random_theta);
    const auto& ranks = analysis.ranks;
    const Eigen::MatrixXd q = uniform_allocation(cfg.k_sub, ranks.total());

    std::vector<ResultRow> rows;
    {
      const auto cov = build_covariances(a.steering, ranks, q);
      ResultRow row = make_row(spec, scheme::kStreamUniform, snr_db, a);
      set_mc(row, mc_ergodic_rate(a.gain_seed, a.stats, a.steering, cov, a.random_theta, snr, cfg,
                                  spec.n_gain_draws));
      row.rate_approx = approx_rate_sampled(a.approx_seed, analysis.profile, ranks, q, a.stats, snr,
                                            cfg, spec.n_gain_draws)
                            .value;
      row.rate_jensen = jensen_rate(analysis.profile, ranks, q, a.stats, snr, cfg);
      rows.push_back(std::move(row));
    }
    {
      const auto cov = isotropic_covariances(cfg.n_b, cfg.k_sub);
      ResultRow row = make_row(spec, scheme::kIsotropic, snr_db, a);
      set_mc(row, mc_ergodic_rate(a.gain_seed, a.stats, a.steering, cov, a.random_theta, snr, cfg,
                                  spec.n_gain_draws));
      row.rate_jensen = jensen_rate_uniform(analysis.profile, ranks, a.stats, snr, cfg);
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

std::vector<ResultRow> run_rcg_convergence(const ExperimentSpec& spec) {
  const auto& cfg = spec.system;
  return run_grid(spec, [&](double snr_db, const AngleSet& a) {
    const double snr = db_to_linear(snr_db);
    const auto analysis = eigen_profile(a.steering, a.random_theta);
    const auto& ranks = analysis.ranks;
    const Eigen::MatrixXd q = uniform_allocation(cfg.k_sub, ranks.total());
    const auto weights = reflection_weights(analysis.profile, ranks, q, a.stats, snr, cfg);
    const auto zeta = compute_zeta(analysis.profile, ranks, a.stats, snr, cfg);
    const double direct = direct_log_sum(zeta, q, ranks);
    const double norm = 1.0 / (cfg.k_sub + cfg.n_cp);

    const auto report = rcg_optimize(a.random_theta, weights, a.steering, spec.ao.rcg);
    std::vector<ResultRow> rows;
    for (std::size_t it = 0; it < report.objective_trace.size(); ++it) {
      ResultRow row = make_row(spec, scheme::kRcg, snr_db, a);
      row.iteration = static_cast<int>(it);
      row.objective = norm * (direct - report.objective_trace[it]);
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

std::vector<ResultRow> run_ao_convergence(const ExperimentSpec& spec) {
  const auto& cfg = spec.system;
  return run_grid(spec, [&](double snr_db, const AngleSet& a) {
    const double snr = db_to_linear(snr_db);
    const auto report =
        alternating_optimize(a.stats, a.steering, snr, cfg, a.random_theta, spec.ao);
    std::vector<ResultRow> rows;
    ResultRow first = make_row(spec, scheme::kAo, snr_db, a);
    first.iteration = 0;
    first.objective = report.initial_objective;
    rows.push_back(std::move(first));
    for (std::size_t it = 0; it < report.objective_trace.size(); ++it) {
      ResultRow row = make_row(spec, scheme::kAo, snr_db, a);
      row.iteration = static_cast<int>(it + 1);
      row.objective = report.objective_trace[it];
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

std::vector<ResultRow> run_ao_sweep(const ExperimentSpec& spec) {
  const auto& cfg = spec.system;
  const bool ablation = spec.kind == ExperimentKind::ablation;
  return run_grid(spec, [&, ablation](double snr_db, const AngleSet& a) {
    const double snr = db_to_linear(snr_db);
    const auto initial = eigen_profile(a.steering, a.random_theta);
    const auto& ranks = initial.ranks;
    const auto isotropic = isotropic_covariances(cfg.n_b, cfg.k_sub);
    auto mc = [&](const std::vector<Eigen::MatrixXcd>& cov, const PhaseVector& theta) {
      return mc_ergodic_rate(a.gain_seed, a.stats, a.steering, cov, theta, snr, cfg,
                             spec.n_gain_draws);
    };
    std::vector<ResultRow> rows;

    {  // both optimized
      const auto report = alternating_optimize(a.stats, a.steering, snr, cfg, a.random_theta, spec.ao);
      ResultRow row = make_row(spec, scheme::kBoth, snr_db, a);
      set_mc(row, mc(build_covariances(a.steering, report.ranks, report.q.q), report.theta));
      const double final_objective =
          report.objective_trace.empty() ? report.initial_objective : report.objective_trace.back();
      row.rate_jensen = final_objective;
      row.objective = final_objective;
      rows.push_back(std::move(row));
    }
    {  // neither: stream directions with uniform power, random theta
      const Eigen::MatrixXd q = uniform_allocation(cfg.k_sub, ranks.total());
      ResultRow row = make_row(spec, scheme::kNeitherStream, snr_db, a);
      set_mc(row, mc(build_covariances(a.steering, ranks, q), a.random_theta));
      row.rate_jensen = jensen_rate(initial.profile, ranks, q, a.stats, snr, cfg);
      rows.push_back(std::move(row));
    }
    if (!ablation) return rows;

    {  // neither: isotropic Q, random theta
      ResultRow row = make_row(spec, scheme::kNeitherIsotropic, snr_db, a);
      set_mc(row, mc(isotropic, a.random_theta));
      row.rate_jensen = jensen_rate_uniform(initial.profile, ranks, a.stats, snr, cfg);
      rows.push_back(std::move(row));
    }
    {  // Q only: water-filling at the random theta
      const auto zeta = compute_zeta(initial.profile, ranks, a.stats, snr, cfg);
      const auto alloc = waterfill(zeta);
      const Eigen::MatrixXd q =
          alloc.allocated ? alloc.q : uniform_allocation(cfg.k_sub, ranks.total());
      ResultRow row = make_row(spec, scheme::kQOnly, snr_db, a);
      set_mc(row, mc(build_covariances(a.steering, ranks, q), a.random_theta));
      row.rate_jensen = jensen_rate(initial.profile, ranks, q, a.stats, snr, cfg);
      row.objective = row.rate_jensen;
      rows.push_back(std::move(row));
    }
    {  // theta only: RCG on the isotropic-Q Jensen form
      const auto weights = isotropic_reflection_weights(initial.profile, ranks, a.stats, snr, cfg);
      const auto report = rcg_optimize(a.random_theta, weights, a.steering, spec.ao.rcg);
      const auto profile = eigen_profile(a.steering, report.theta).profile;
      ResultRow row = make_row(spec, scheme::kThetaOnly, snr_db, a);
      set_mc(row, mc(isotropic, report.theta));
      row.rate_jensen = jensen_rate_uniform(profile, ranks, a.stats, snr, cfg);
      row.objective = row.rate_jensen;
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::tightness: return run_tightness(spec);
    case ExperimentKind::rcg_convergence: return run_rcg_convergence(spec);
    case ExperimentKind::ao_convergence: return run_ao_convergence(spec);
    case ExperimentKind::snr_sweep:
    case ExperimentKind::ablation: return run_ao_sweep(spec);
  }
  throw std::logic_error("unhandled experiment kind");
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    const int ia = a.iteration.value_or(-1), ib = b.iteration.value_or(-1);
    return std::tie(a.experiment, a.snr_db, a.angle_set, a.scheme, ia) <
           std::tie(b.experiment, b.snr_db, b.angle_set, b.scheme, ib);
  });
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

// Value rounded to 12 significant digits so CSV and JSON agree.
json json_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return std::stod(format_number(*v));
}

std::optional<double> optional_number(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.scheme << ',' << format_number(r.snr_db) << ',' << r.angle_set
        << ',' << (r.iteration ? std::to_string(*r.iteration) : std::string()) << ','
        << format_optional(r.rate_mc) << ',' << format_optional(r.rate_mc_stderr) << ','
        << format_optional(r.rate_approx) << ',' << format_optional(r.rate_jensen) << ','
        << format_optional(r.objective) << '\n';
  }
  return out.str();
}

json to_json(const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json obj = json::object();
    obj["experiment"] = r.experiment;
    obj["scheme"] = r.scheme;
    obj["snr_db"] = json_number(r.snr_db);
    obj["angle_set"] = r.angle_set;
    obj["iteration"] = r.iteration ? json(*r.iteration) : json(nullptr);
    obj["rate_mc"] = json_number(r.rate_mc);
    obj["rate_mc_stderr"] = json_number(r.rate_mc_stderr);
    obj["rate_approx"] = json_number(r.rate_approx);
    obj["rate_jensen"] = json_number(r.rate_jensen);
    obj["objective"] = json_number(r.objective);
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::vector<ResultRow> rows_from_json(const json& doc) {
  std::vector<ResultRow> rows;
  for (const auto& obj : doc) {
    ResultRow r;
    r.experiment = obj.at("experiment").get<std::string>();
    r.scheme = obj.at("scheme").get<std::string>();
    r.snr_db = obj.at("snr_db").get<double>();
    r.angle_set = obj.at("angle_set").get<int>();
    if (!obj.at("iteration").is_null()) r.iteration = obj.at("iteration").get<int>();
    r.rate_mc = optional_number(obj, "rate_mc");
    r.rate_mc_stderr = optional_number(obj, "rate_mc_stderr");
    r.rate_approx = optional_number(obj, "rate_approx");
    r.rate_jensen = optional_number(obj, "rate_jensen");
    r.objective = optional_number(obj, "objective");
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& path,
                  OutputFormat format) {
  const std::string text =
      format == OutputFormat::csv ? format_csv(rows) : to_json(rows).dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

// ---------------------------------------------------------------------------
// Summaries

std::vector<SchemeSummary> summarize_schemes(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, double>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) {
    if (r.rate_mc) groups[{r.experiment, r.scheme, r.snr_db}].push_back(&r);
  }
  std::vector<SchemeSummary> out;
  for (const auto& [key, members] : groups) {
    SchemeSummary s;
    std::tie(s.experiment, s.scheme, s.snr_db) = key;
    s.count = static_cast<int>(members.size());
    double sum = 0.0, sum_jen = 0.0;
    for (const auto* r : members) {
      sum += *r->rate_mc;
      sum_jen += r->rate_jensen.value_or(0.0);
    }
    s.mean_rate_mc = sum / s.count;
    s.mean_rate_jensen = sum_jen / s.count;
    double ss = 0.0;
    for (const auto* r : members) ss += std::pow(*r->rate_mc - s.mean_rate_mc, 2);
    s.stderr_rate_mc = s.count > 1 ? std::sqrt(ss / (s.count - 1) / s.count) : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TightnessSummary> summarize_tightness(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<double, std::string>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) {
    if (r.rate_mc && r.rate_jensen) groups[{r.snr_db, r.scheme}].push_back(&r);
  }
  auto error = [](std::optional<double> approx, double reference) {
    if (reference <= 0.0) return 0.0;
    return normalized_error(*approx, reference);
  };
  std::vector<TightnessSummary> out;
  for (const auto& [key, members] : groups) {
    TightnessSummary s;
    std::tie(s.snr_db, s.scheme) = key;
    s.count = static_cast<int>(members.size());
    double e_approx = 0.0, e_jen = 0.0;
    bool has_approx = true;
    for (const auto* r : members) {
      if (!r->rate_approx) has_approx = false;
      if (has_approx) e_approx += error(r->rate_approx, *r->rate_mc);
      e_jen += error(r->rate_jensen, *r->rate_mc);
    }
    s.mean_error_approx = has_approx ? e_approx / s.count : std::nan("");
    s.mean_error_jensen = e_jen / s.count;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ris
