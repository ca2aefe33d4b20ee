// d2dsim: run, sweep and verify D2D caching-cell scheduling experiments.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2d/config.hpp"
#include "d2d/experiments.hpp"
#include "d2d/rng.hpp"
#include "d2d/scheduler.hpp"
#include "d2d/units.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

d2d::SimConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
  d2d::SimConfig cfg = path.empty() ? d2d::SimConfig{} : d2d::parse_config_file(path);
  for (const std::string& s : sets) d2d::apply_override(cfg, s);
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

json schedule_json(const d2d::RealizationParts& parts) {
  const d2d::ScheduleResult& s = parts.sched;
  json per_color = json::array();
  for (const auto& c : s.per_color) {
    per_color.push_back({{"color", c.color_index},
                         {"initial_size", c.initial_size},
                         {"removed", c.removed},
                         {"survivors", c.survivors}});
  }
  std::vector<int> receivers, transmitters;
  for (int id : s.scheduled) {
    receivers.push_back(parts.cls.links[id].receiver);
    transmitters.push_back(parts.cls.links[id].transmitter);
  }
  return json{{"scheduled", s.scheduled},
              {"receivers", receivers},
              {"transmitters", transmitters},
              {"powers_w", s.powers},
              {"sinrs", s.sinrs},
              {"winner_color", s.winner_color},
              {"per_color", per_color}};
}

int cmd_run(const d2d::SimConfig& cfg, const std::string& out_dir) {
  std::uint64_t seed = d2d::sub_seed(cfg.rng_seed, 0);
  d2d::ExperimentRecord rec = d2d::run_realization(cfg, seed);
  d2d::RealizationParts parts = d2d::run_pipeline(cfg, seed);

  json result{{"config_text", d2d::serialize_config(cfg)},
              {"seed", seed},
              {"record", json::parse(d2d::record_jsonl_line(rec))},
              {"schedule", schedule_json(parts)}};

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "result.json", result.dump(2) + "\n");

  std::cout << d2d::record_jsonl_line(rec) << "\n";
  std::cerr << "run: K=" << rec.config.K << " seed=" << seed << " k_S=" << rec.k_S
            << " k_DB=" << rec.k_DB << " k_D=" << rec.k_D
            << " throughput=" << rec.throughput_bps / 1e6 << " Mbps"
            << " (" << rec.runtime_ms << " ms) -> " << out_dir << "/result.json\n";
  return 0;
}

int cmd_sweep(const d2d::SimConfig& cfg, const std::string& axis,
              const std::vector<double>& values, int seeds, const std::string& out_dir) {
  if (values.empty()) throw d2d::ConfigError(axis, 0, "sweep needs --values");
  d2d::SweepTable table = d2d::sweep(cfg, axis, values, seeds);

  std::filesystem::create_directories(out_dir);
  auto csv_path = std::filesystem::path(out_dir) / ("sweep_" + axis + ".csv");
  auto jsonl_path = std::filesystem::path(out_dir) / ("sweep_" + axis + ".jsonl");
  write_file(csv_path, d2d::sweep_csv(table));
  write_file(jsonl_path, d2d::sweep_jsonl(table));

  std::cout << d2d::sweep_csv(table);
  std::cerr << "sweep: " << values.size() << " points x " << seeds << " seeds -> "
            << csv_path.string() << ", " << jsonl_path.string() << "\n";
  return 0;
}

int cmd_oracle_gap(const d2d::SimConfig& cfg, int seeds, const std::string& out_dir) {
  constexpr int kGuard = 12;  // exhaustive search over 2^k_DB subsets
  std::string csv =
      "# heuristic vs exhaustive-search scheduling on small instances\n"
      "index,seed,k_DB,k_D_heuristic,k_D_optimal,gap\n";
  int optimal_hits = 0;
  long gap_sum = 0;
  int n = 0;
  for (int i = 0; i < seeds; ++i) {
    std::uint64_t seed = d2d::sub_seed(cfg.rng_seed, static_cast<std::uint64_t>(i));
    d2d::RealizationParts parts = d2d::run_pipeline(cfg, seed);
    int k_db = static_cast<int>(parts.cls.links.size());
    if (k_db > kGuard) {
      std::cerr << "oracle-gap: realization " << i << " has k_DB=" << k_db
                << " potential links, exhaustive guard is " << kGuard
                << "; reduce K or r\n";
      return kExitRuntime;
    }
    double p_max_w = d2d::dbm_to_watts(cfg.p_max_dbm);
    d2d::BruteForceResult best =
        d2d::optimal_schedule_bruteforce(parts.cls, parts.topo, parts.targets, p_max_w, kGuard);
    int gap = best.size - parts.sched.k_D;
    csv += std::to_string(i) + "," + std::to_string(seed) + "," + std::to_string(k_db) + "," +
           std::to_string(parts.sched.k_D) + "," + std::to_string(best.size) + "," +
           std::to_string(gap) + "\n";
    gap_sum += gap;
    optimal_hits += gap == 0 ? 1 : 0;
    ++n;
  }
  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "oracle_gap.csv", csv);
  std::cout << "oracle-gap: " << n << " instances, heuristic optimal in " << optimal_hits
            << " (" << 100.0 * optimal_hits / n << "%), mean gap "
            << static_cast<double>(gap_sum) / n << " links\n";
  return 0;
}

// Re-derives the realization from (config, seed) and checks the stored
// schedule against the result invariants. Exits nonzero naming the first
// violated invariant.
int cmd_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open result file '" + path + "'");
  json result = json::parse(in);

  d2d::SimConfig cfg = d2d::parse_config_text(result.at("config_text").get<std::string>());
  std::uint64_t seed = result.at("seed").get<std::uint64_t>();
  d2d::RealizationParts parts = d2d::run_pipeline(cfg, seed);

  const json& sched = result.at("schedule");
  auto scheduled = sched.at("scheduled").get<std::vector<int>>();
  auto powers = sched.at("powers_w").get<std::vector<double>>();
  auto sinrs = sched.at("sinrs").get<std::vector<double>>();

  auto fail = [&](const std::string& invariant) {
    std::cerr << "verify: FAILED: " << invariant << "\n";
    return kExitRuntime;
  };

  const json& rec = result.at("record");
  int k_db = static_cast<int>(parts.cls.links.size());
  if (rec.at("k_S") != static_cast<int>(parts.cls.self_served.size()) ||
      rec.at("k_DB") != k_db || rec.at("k_B") != static_cast<int>(parts.cls.bs_only.size()))
    return fail("classification counts do not match the (config, seed) realization");
  if (rec.at("k_S").get<int>() + rec.at("k_DB").get<int>() + rec.at("k_B").get<int>() != cfg.K)
    return fail("k_S + k_DB + k_B != K");
  if (rec.at("k_D") != static_cast<int>(scheduled.size()))
    return fail("k_D does not match the scheduled link count");
  if (powers.size() != scheduled.size() || sinrs.size() != scheduled.size())
    return fail("powers/sinrs length does not match the scheduled link count");

  for (std::size_t i = 0; i < scheduled.size(); ++i) {
    if (scheduled[i] < 0 || scheduled[i] >= k_db) return fail("scheduled link id out of range");
    for (std::size_t j = i + 1; j < scheduled.size(); ++j) {
      const auto& a = parts.cls.links[scheduled[i]];
      const auto& b = parts.cls.links[scheduled[j]];
      if (a.receiver == b.receiver || a.receiver == b.transmitter ||
          a.transmitter == b.receiver || a.transmitter == b.transmitter)
        return fail("C1 violated: scheduled links share a user");
    }
  }

  double p_max_w = d2d::dbm_to_watts(cfg.p_max_dbm);
  for (double p : powers) {
    if (p < 0.0) return fail("power below 0");
    if (p > p_max_w) return fail("power above p_max");
  }

  std::vector<double> recomputed =
      d2d::group_sinrs(scheduled, parts.cls.links, parts.topo, powers);
  double v_check = d2d::db_to_linear(cfg.v_check_db);
  for (std::size_t i = 0; i < sinrs.size(); ++i) {
    double rel = std::abs(recomputed[i] - sinrs[i]) / sinrs[i];
    if (!(rel <= 1e-9)) return fail("stored SINR does not match the recomputed SINR");
    if (recomputed[i] < v_check * (1.0 - 1e-9)) return fail("SINR below the v_check floor");
  }

  double tp = d2d::throughput_bps(sinrs, cfg.bandwidth_hz);
  double stored_tp = rec.at("throughput_bps").get<double>();
  if (std::abs(tp - stored_tp) > 1e-9 * std::max(1.0, std::abs(stored_tp)))
    return fail("stored throughput does not match the stored SINRs");

  std::cout << "verify: OK (" << scheduled.size() << " scheduled links)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D2D-assisted caching cell: scheduling and power allocation experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", axis, verify_path;
  std::vector<std::string> sets;
  std::vector<double> values;
  int seeds = 200;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key = value lines)");
    cmd->add_option("--set", sets, "override, key=value (repeatable)");
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
  };

  CLI::App* run = app.add_subcommand("run", "run one realization, write result.json");
  add_common(run);

  CLI::App* sw = app.add_subcommand("sweep", "sweep one parameter, write CSV + JSONL");
  add_common(sw);
  sw->add_option("--axis", axis, "parameter: r, gamma_c, gamma_r, K, c_s_db, v_check_db")
      ->required();
  sw->add_option("--values", values, "comma-separated axis values")
      ->required()
      ->delimiter(',');
  sw->add_option("--seeds", seeds, "realizations per point")->capture_default_str();

  CLI::App* og = app.add_subcommand("oracle-gap",
                                    "compare the scheduler against exhaustive search");
  add_common(og);
  int og_seeds = 100;
  og->add_option("--seeds", og_seeds, "instances to compare")->capture_default_str();

  CLI::App* ver = app.add_subcommand("verify", "re-check a stored result.json");
  ver->add_option("file", verify_path, "result file written by run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(load_config(config_path, sets), out_dir);
    if (sw->parsed()) return cmd_sweep(load_config(config_path, sets), axis, values, seeds, out_dir);
    if (og->parsed()) return cmd_oracle_gap(load_config(config_path, sets), og_seeds, out_dir);
    if (ver->parsed()) return cmd_verify(verify_path);
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
