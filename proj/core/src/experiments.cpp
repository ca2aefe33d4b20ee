#include "d2d/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "d2d/config.hpp"
#include "d2d/rng.hpp"
#include "d2d/units.hpp"

namespace d2d {

namespace {

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

nlohmann::json config_json(const SimConfig& c) {
  return nlohmann::json{{"K", c.K},
                        {"cell_side", c.cell_side},
                        {"r", c.r},
                        {"N_files", c.N_files},
                        {"gamma_r", c.gamma_r},
                        {"gamma_c", c.gamma_c},
                        {"v_check_db", c.v_check_db},
                        {"c_s_db", c.c_s_db},
                        {"p_max_dbm", c.p_max_dbm},
                        {"bandwidth_hz", c.bandwidth_hz},
                        {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
                        {"carrier_hz", c.carrier_hz},
                        {"rng_seed", c.rng_seed}};
}

struct Metric {
  const char* name;
  double (*get)(const ExperimentRecord&);
};

constexpr Metric kMetrics[] = {
    {"k_S", [](const ExperimentRecord& r) { return static_cast<double>(r.k_S); }},
    {"k_DB", [](const ExperimentRecord& r) { return static_cast<double>(r.k_DB); }},
    {"k_B", [](const ExperimentRecord& r) { return static_cast<double>(r.k_B); }},
    {"k_D", [](const ExperimentRecord& r) { return static_cast<double>(r.k_D); }},
    {"k_S_plus_k_D", [](const ExperimentRecord& r) { return static_cast<double>(r.k_S + r.k_D); }},
    {"throughput_bps", [](const ExperimentRecord& r) { return r.throughput_bps; }},
    {"min_rate_bps", [](const ExperimentRecord& r) { return r.min_rate_bps; }},
    {"download_time_s", [](const ExperimentRecord& r) { return r.download_time_s; }},
    {"removals_total", [](const ExperimentRecord& r) { return static_cast<double>(r.removals_total); }},
};

}  // namespace

double throughput_bps(std::span<const double> sinrs, double bandwidth_hz) {
  double sum = 0.0;
  for (double v : sinrs) sum += log2p1(v);
  return bandwidth_hz * sum;
}

double download_time_s(const ScheduleResult& result, const Classification& cls,
                       double file_bits, double bs_rate_bps, double bandwidth_hz) {
  // S_B plus the S_DB members that did not get scheduled fall back to the BS
  int bs_served = static_cast<int>(cls.bs_only.size()) +
                  static_cast<int>(cls.d2d_or_bs.size()) - result.k_D;
  double total = bs_served * (file_bits / bs_rate_bps);
  for (double v : result.sinrs) total += file_bits / (bandwidth_hz * log2p1(v));
  return total;
}

RealizationParts run_pipeline(const SimConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  CellTopology topo = generate_topology(cfg, sub_seed(seed, 0));
  ZipfPmf pmf_c = zipf_pmf(cfg.N_files, cfg.gamma_c);
  ZipfPmf pmf_r = zipf_pmf(cfg.N_files, cfg.gamma_r);
  CacheState cache = place_and_request(topo, pmf_c, pmf_r, sub_seed(seed, 1));
  Classification cls = classify(topo, cache, cfg.r);
  SinrTargets targets = uniform_targets(static_cast<int>(cls.links.size()),
                                        db_to_linear(cfg.v_check_db),
                                        db_to_linear(cfg.c_s_db));
  ScheduleResult sched = schedule(cls, topo, targets, dbm_to_watts(cfg.p_max_dbm));
  return RealizationParts{std::move(topo), std::move(cache), std::move(cls),
                          std::move(targets), std::move(sched)};
}

ExperimentRecord run_realization(const SimConfig& cfg, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  RealizationParts parts = run_pipeline(cfg, seed);

  ExperimentRecord rec;
  rec.config = cfg;
  rec.seed = seed;
  rec.k_S = parts.sched.k_S;
  rec.k_DB = parts.sched.k_DB;
  rec.k_B = parts.sched.k_B;
  rec.k_D = parts.sched.k_D;
  rec.throughput_bps = throughput_bps(parts.sched.sinrs, cfg.bandwidth_hz);
  rec.min_rate_bps = parts.sched.k_D > 0 ? cfg.bandwidth_hz * parts.sched.min_rate : 0.0;
  rec.download_time_s =
      download_time_s(parts.sched, parts.cls, kVideoBits, kBsRateBps, cfg.bandwidth_hz);
  rec.removals_total = parts.sched.removals_total;
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

void apply_axis(SimConfig& cfg, const std::string& axis, double value) {
  if (axis == "r") {
    cfg.r = value;
  } else if (axis == "gamma_c") {
    cfg.gamma_c = value;
  } else if (axis == "gamma_r") {
    cfg.gamma_r = value;
  } else if (axis == "K") {
    if (value != std::floor(value) || value < 1)
      throw ConfigError("K", 0, "axis K needs a positive integer value");
    cfg.K = static_cast<int>(value);
  } else if (axis == "c_s_db") {
    cfg.c_s_db = value;
  } else if (axis == "v_check_db") {
    cfg.v_check_db = value;
  } else {
    throw ConfigError(axis, 0,
                      "unknown sweep axis '" + axis +
                          "' (expected r, gamma_c, gamma_r, K, c_s_db or v_check_db)");
  }
  validate(cfg);
}

SweepTable sweep(const SimConfig& cfg_template, const std::string& axis,
                 std::span<const double> values, int seeds_per_point) {
  if (seeds_per_point < 1)
    throw std::invalid_argument("sweep: seeds_per_point must be >= 1");
  SweepTable table;
  table.axis = axis;
  table.values.assign(values.begin(), values.end());
  table.seeds.resize(seeds_per_point);
  for (int j = 0; j < seeds_per_point; ++j)
    table.seeds[j] = sub_seed(cfg_template.rng_seed, static_cast<std::uint64_t>(j));

  for (double value : values) {
    SimConfig cfg = cfg_template;
    apply_axis(cfg, axis, value);
    std::vector<ExperimentRecord> row;
    row.reserve(seeds_per_point);
    for (std::uint64_t s : table.seeds) row.push_back(run_realization(cfg, s));
    table.rows.push_back(std::move(row));
  }
  return table;
}

PointStat point_stat(std::span<const ExperimentRecord> records,
                     double (*metric)(const ExperimentRecord&)) {
  PointStat st;
  std::size_t n = records.size();
  if (n == 0) return st;
  double sum = 0.0;
  for (const auto& r : records) sum += metric(r);
  st.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const auto& r : records) {
      double d = metric(r) - st.mean;
      ss += d * d;
    }
    st.stderr_ = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return st;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out;
  out += "# d2dcache sweep: mean and standard error per axis point over common random seeds\n";
  out += "# units: throughput_bps/min_rate_bps in bits per second, download_time_s in seconds\n";
  out += "#        (download_time_s is the cell total), counts are users/links per realization\n";
  out += "axis,value,seeds";
  for (const Metric& m : kMetrics) {
    out += ',';
    out += m.name;
    out += "_mean,";
    out += m.name;
    out += "_se";
  }
  out += '\n';
  for (std::size_t p = 0; p < table.values.size(); ++p) {
    out += table.axis + "," + fmt9(table.values[p]) + "," + std::to_string(table.seeds.size());
    for (const Metric& m : kMetrics) {
      PointStat st = point_stat(table.rows[p], m.get);
      out += "," + fmt9(st.mean) + "," + fmt9(st.stderr_);
    }
    out += '\n';
  }
  return out;
}

std::string record_jsonl_line(const ExperimentRecord& rec) {
  nlohmann::json j{{"config", config_json(rec.config)},
                   {"seed", rec.seed},
                   {"k_S", rec.k_S},
                   {"k_DB", rec.k_DB},
                   {"k_B", rec.k_B},
                   {"k_D", rec.k_D},
                   {"throughput_bps", rec.throughput_bps},
                   {"min_rate_bps", rec.min_rate_bps},
                   {"download_time_s", rec.download_time_s},
                   {"removals_total", rec.removals_total}};
  return j.dump();
}

std::string sweep_jsonl(const SweepTable& table) {
  std::string out;
  for (std::size_t p = 0; p < table.rows.size(); ++p) {
    for (const ExperimentRecord& rec : table.rows[p]) {
      nlohmann::json j = nlohmann::json::parse(record_jsonl_line(rec));
      j["axis"] = table.axis;
      j["value"] = table.values[p];
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace d2d
