#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d2d/caching.hpp"
#include "d2d/scheduler.hpp"
#include "d2d/sim_config.hpp"

namespace d2d {

// Download-time bookkeeping constants: 30 MB video files, 120 kbps from
// the BS.
inline constexpr double kVideoBits = 2.4e8;
inline constexpr double kBsRateBps = 1.2e5;

// Sum-rate over the scheduled links: bandwidth * sum log2(1 + v_m).
double throughput_bps(std::span<const double> sinrs, double bandwidth_hz);

// Total download time: every BS-served user (S_B plus unscheduled S_DB)
// needs file_bits / bs_rate_bps, every scheduled D2D receiver
// file_bits / (bandwidth * log2(1 + v_m)), self-served users are free.
double download_time_s(const ScheduleResult& result, const Classification& cls,
                       double file_bits, double bs_rate_bps, double bandwidth_hz);

struct ExperimentRecord {
  SimConfig config;
  std::uint64_t seed = 0;  // realization seed (already derived from the master)
  int k_S = 0, k_DB = 0, k_D = 0, k_B = 0;
  double throughput_bps = 0.0;
  double min_rate_bps = 0.0;
  double download_time_s = 0.0;
  int removals_total = 0;
  double runtime_ms = 0.0;  // wall clock; reported but never written to files
};

// Pipeline pieces of one realization, for callers that need the full
// schedule next to the metrics (result files, verification).
struct RealizationParts {
  CellTopology topo;
  CacheState cache;
  Classification cls;
  SinrTargets targets;
  ScheduleResult sched;
};
RealizationParts run_pipeline(const SimConfig& cfg, std::uint64_t seed);

// Full pipeline for one realization: topology -> caching -> classify ->
// schedule -> metrics. Deterministic per (cfg, seed).
ExperimentRecord run_realization(const SimConfig& cfg, std::uint64_t seed);

// Recognized sweep axes: r, gamma_c, gamma_r, K, c_s_db, v_check_db.
// Throws ConfigError on anything else or on out-of-range values.
void apply_axis(SimConfig& cfg, const std::string& axis, double value);

struct SweepTable {
  std::string axis;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;                 // identical for every point (CRN)
  std::vector<std::vector<ExperimentRecord>> rows;  // rows[point][seed index]
};

// Common-random-numbers sweep: the same seed list, derived from
// cfg.rng_seed, is replayed at every axis value.
SweepTable sweep(const SimConfig& cfg_template, const std::string& axis,
                 std::span<const double> values, int seeds_per_point);

// Mean and standard error of an extracted metric at one sweep point.
struct PointStat {
  double mean = 0.0;
  double stderr_ = 0.0;
};
PointStat point_stat(std::span<const ExperimentRecord> records,
                     double (*metric)(const ExperimentRecord&));

// One CSV per sweep (means and standard errors, 9 significant digits)
// plus a JSON-lines file of the raw records. runtime_ms is excluded from
// both so identical (config, seed) runs write identical bytes.
std::string sweep_csv(const SweepTable& table);
std::string sweep_jsonl(const SweepTable& table);
std::string record_jsonl_line(const ExperimentRecord& rec);

}  // namespace d2d
