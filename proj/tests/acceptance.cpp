// Acceptance suite: twelve criteria, one pass/fail line each, nonzero
// exit if any fails. Criteria that average over realizations run at a
// fixed master seed with common random numbers across sweep points, and
// mean comparisons use the standard error of the per-seed paired
// differences (the CRN discipline makes that the sharp comparison).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "d2d/experiments.hpp"
#include "d2d/maxmin_alloc.hpp"
#include "d2d/rng.hpp"
#include "d2d/scheduler.hpp"
#include "d2d/units.hpp"

using namespace d2d;

namespace {

constexpr double kPmax = 0.1;
constexpr double kLambda = 0.125;
constexpr double kNoise = 1e-14;

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%2d] %-34s %s  (%s)\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- shared instance machinery ------------------------------------------

struct Group {
  CellTopology topo;
  std::vector<PotentialLink> links;
  std::vector<int> ids;
};

Group make_group(int k, std::uint64_t seed, double cell = 1000.0, double len_lo = 20.0,
                 double len_hi = 150.0) {
  Rng rng(seed);
  std::vector<Point> pos;
  for (int i = 0; i < k; ++i) {
    Point tx{rng.uniform(0, cell), rng.uniform(0, cell)};
    double len = rng.uniform(len_lo, len_hi);
    double ang = rng.uniform(0, 2 * 3.14159265358979323846);
    pos.push_back(tx);
    pos.push_back({tx.x + len * std::cos(ang), tx.y + len * std::sin(ang)});
  }
  CellTopology topo(std::move(pos), kLambda, kNoise);
  Group g{std::move(topo), {}, {}};
  for (int i = 0; i < k; ++i) {
    g.links.push_back({2 * i + 1, 2 * i, g.topo.gain(2 * i, 2 * i + 1)});
    g.ids.push_back(i);
  }
  return g;
}

Group next_feasible_group(int k, std::uint64_t& seed, const SinrTargets& targets,
                          double p_max_w, double margin = 1.0) {
  for (;;) {
    Group g = make_group(k, seed++);
    SinrTargets scaled = targets;
    for (double& v : scaled.v_check) v *= margin;
    scaled.c_s *= margin;
    if (cpc_check(g.ids, g.links, g.topo, scaled, p_max_w).feasible()) return g;
  }
}

// SINR recomputed from the definition, kept separate from group_sinrs.
std::vector<double> sinr_from_definition(const Group& g, const std::vector<double>& p) {
  std::size_t k = g.ids.size();
  std::vector<double> out(k);
  for (std::size_t m = 0; m < k; ++m) {
    double denom = g.topo.noise_w();
    for (std::size_t n = 0; n < k; ++n) {
      if (n == m) continue;
      denom += p[n] * g.topo.gain(g.links[g.ids[n]].transmitter, g.links[g.ids[m]].receiver);
    }
    out[m] = p[m] * g.topo.gain(g.links[g.ids[m]].transmitter, g.links[g.ids[m]].receiver) /
             denom;
  }
  return out;
}

struct Paired {
  double mean = 0.0;
  double se = 0.0;
};

Paired paired_diff(const std::vector<double>& a, const std::vector<double>& b) {
  Paired p;
  std::size_t n = a.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] - b[i];
  p.mean = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = a[i] - b[i] - p.mean;
      ss += d * d;
    }
    p.se = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return p;
}

std::vector<double> metric_per_seed(const std::vector<ExperimentRecord>& recs,
                                    double (*f)(const ExperimentRecord&)) {
  std::vector<double> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(f(r));
  return out;
}

// ---- criteria -------------------------------------------------------------

// CPC exactness: recomputed SINRs equal the targets to 1e-9 relative.
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t seed = 10'000;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    int k = 1 + static_cast<int>(splitmix64(i) % 10);
    SinrTargets targets = uniform_targets(k, 1.0, 1.0);
    Group g = next_feasible_group(k, seed, targets, kPmax);
    PowerSolveOutcome out = cpc_check(g.ids, g.links, g.topo, targets, kPmax);
    if (!out.feasible()) {
      report(1, "CPC exactness", false, "generator produced an infeasible group");
      return;
    }
    std::vector<double> sinr = sinr_from_definition(g, out.power);
    for (int m = 0; m < k; ++m) worst = std::max(worst, std::abs(sinr[m] - 1.0));
  }
  double secs = elapsed_s(t0);
  char detail[120];
  std::snprintf(detail, sizeof(detail), "1000 feasible groups k<=10, max rel err %.2e, %.2f s",
                worst, secs);
  report(1, "CPC exactness", worst <= 1e-9 && secs < 10.0, detail);
}

// Raising any one target by 1% strictly raises every exact-target power.
void criterion_2() {
  std::uint64_t seed = 20'000;
  int checked = 0, violations = 0;
  for (int i = 0; i < 500; ++i) {
    int k = 2 + static_cast<int>(splitmix64(i) % 5);
    SinrTargets targets = uniform_targets(k, 1.0, 0.5);
    Group g = next_feasible_group(k, seed, targets, kPmax, 1.02);
    auto base = solve_exact_powers(g.ids, g.links, g.topo, targets);
    if (!base) {
      ++violations;
      continue;
    }
    for (int m = 0; m < k; ++m) {
      SinrTargets bumped = targets;
      bumped.v_check[m] *= 1.01;
      auto p = solve_exact_powers(g.ids, g.links, g.topo, bumped);
      ++checked;
      if (!p) {
        ++violations;
        continue;
      }
      for (int n = 0; n < k; ++n)
        if (!((*p)[n] > (*base)[n])) ++violations;
    }
  }
  report(2, "Target-monotonicity of powers", violations == 0,
         std::to_string(checked) + " single-target bumps on 500 instances, " +
             std::to_string(violations) + " violations");
}

// Coloring validity plus exact maximum matching for class 1.
int oracle_max_matching(const std::vector<std::pair<int, int>>& edges) {
  std::map<std::pair<int, std::uint64_t>, int> memo;
  auto rec = [&](auto&& self, int i, std::uint64_t used) -> int {
    if (i == static_cast<int>(edges.size())) return 0;
    auto key = std::make_pair(i, used);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best = self(self, i + 1, used);
    std::uint64_t mu = 1ULL << edges[i].first, mv = 1ULL << edges[i].second;
    if (!(used & mu) && !(used & mv)) best = std::max(best, 1 + self(self, i + 1, used | mu | mv));
    memo[key] = best;
    return best;
  };
  return rec(rec, 0, 0);
}

void criterion_3() {
  Rng rng(333);
  int graphs = 0, violations = 0;
  while (graphs < 1000) {
    int nv = 4 + static_cast<int>(rng.next_u64() % 11);  // up to 14 vertices
    int ne = 1 + static_cast<int>(rng.next_u64() % 30);  // up to 30 edges
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < ne; ++i) {
      int u = static_cast<int>(rng.next_u64() % nv);
      int v = static_cast<int>(rng.next_u64() % nv);
      if (u == v) continue;
      auto mm = std::minmax(u, v);
      if (seen.insert(mm).second) pairs.push_back(mm);
    }
    if (pairs.empty()) continue;
    ++graphs;

    LinkGraph g;
    std::set<int> verts;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      g.edges.push_back({static_cast<int>(i), pairs[i].first, pairs[i].second});
      verts.insert(pairs[i].first);
      verts.insert(pairs[i].second);
    }
    g.vertices.assign(verts.begin(), verts.end());

    std::vector<ColorClass> classes = color_edges(g);

    std::map<int, int> degree;
    for (const auto& e : g.edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    int max_deg = 0;
    for (auto [v, d] : degree) max_deg = std::max(max_deg, d);

    std::set<int> covered;
    std::size_t prev = g.edges.size() + 1;
    for (const auto& c : classes) {
      std::set<int> used;
      for (int id : c.link_ids) {
        if (!covered.insert(id).second) ++violations;  // class overlap
        if (!used.insert(g.edges[id].u).second) ++violations;
        if (!used.insert(g.edges[id].v).second) ++violations;
      }
      if (c.link_ids.size() > prev) ++violations;
      prev = c.link_ids.size();
    }
    if (covered.size() != g.edges.size()) ++violations;
    if (static_cast<int>(classes.size()) < max_deg) ++violations;
    if (static_cast<int>(classes[0].link_ids.size()) != oracle_max_matching(pairs))
      ++violations;
  }
  report(3, "Matching/coloring validity", violations == 0,
         "1000 random graphs <=30 edges, " + std::to_string(violations) + " violations");
}

// Binary search against a grid oracle, plus the optimal-profile shape.
void criterion_4() {
  double eps = 1e-3;
  std::uint64_t seed = 40'000;
  int done = 0, grid_misses = 0, shape_misses = 0;
  while (done < 300) {
    int k = 1 + static_cast<int>(splitmix64(done) % 4);
    SinrTargets targets = uniform_targets(k, 1.0, 1.0);
    if (done % 2 == 1 && k >= 2) targets.v_check[0] = 1.4;  // staggered half

    Group g = make_group(k, seed++);
    double g_min = std::numeric_limits<double>::infinity();
    for (const auto& l : g.links) g_min = std::min(g_min, l.direct_gain);
    double p_cap = 6.0 * kNoise / g_min;  // keeps the m = k bracket a few units wide

    PowerSolveOutcome cpc = cpc_check(g.ids, g.links, g.topo, targets, p_cap);
    if (!cpc.feasible()) continue;
    ++done;

    MaxMinResult res =
        binary_search_maxmin(g.ids, g.links, g.topo, targets, p_cap, cpc.power, eps);
    const SinrProfile& prof = res.profile;

    // profile shape from the realized SINRs
    std::vector<double> sinr = sinr_from_definition(g, res.power);
    for (std::size_t pos = 0; pos < prof.permutation.size(); ++pos) {
      double want = pos < static_cast<std::size_t>(prof.m) ? prof.v : prof.tail[pos - prof.m];
      if (std::abs(sinr[prof.permutation[pos]] - want) > 1e-9 * want) ++shape_misses;
    }

    // grid oracle over the same bracket
    std::vector<double> vbar_sorted;
    for (int pos = 0; pos < k; ++pos)
      vbar_sorted.push_back(targets.v_bar(g.ids[prof.permutation[pos]]));
    double lo = vbar_sorted[prof.m - 1];
    double hi;
    if (prof.m < k) {
      hi = vbar_sorted[prof.m];
    } else {
      hi = std::numeric_limits<double>::infinity();
      for (int id : g.ids) {
        const PotentialLink& l = g.links[id];
        hi = std::min(hi, p_cap * g.topo.gain(l.transmitter, l.receiver) / g.topo.noise_w());
      }
    }
    double best = lo;
    for (double v = lo; v <= hi; v += eps / 10.0) {
      SinrProfile p = prof;
      p.v = v;
      auto pw = power_for_profile(p, g.ids, g.links, g.topo, targets);
      bool ok = pw.has_value();
      if (ok)
        for (int n = 0; n < k && ok; ++n)
          if ((*pw)[n] < cpc.power[n] || (*pw)[n] > p_cap) ok = false;
      if (!ok) break;
      best = v;
    }
    if (std::abs(prof.v - best) > 2 * eps) ++grid_misses;
  }
  report(4, "Max-min grid-oracle agreement", grid_misses == 0 && shape_misses == 0,
         "300 groups k<=4: " + std::to_string(grid_misses) + " oracle misses, " +
             std::to_string(shape_misses) + " profile-shape misses");
}

// Scheduler against exhaustive search on small instances.
void criterion_5() {
  SimConfig cfg;
  cfg.K = 70;
  cfg.r = 250.0;
  cfg.c_s_db = 4.0;
  double p_max_w = dbm_to_watts(cfg.p_max_dbm);
  int done = 0, optimal = 0, exceeded = 0;
  long gap_sum = 0;
  std::uint64_t i = 0;
  while (done < 300) {
    RealizationParts parts = run_pipeline(cfg, sub_seed(cfg.rng_seed, i++));
    int k_db = static_cast<int>(parts.cls.links.size());
    if (k_db < 2 || k_db > 8) continue;  // nontrivial small instances
    ++done;
    BruteForceResult best =
        optimal_schedule_bruteforce(parts.cls, parts.topo, parts.targets, p_max_w);
    if (parts.sched.k_D > best.size) ++exceeded;
    gap_sum += best.size - parts.sched.k_D;
    if (parts.sched.k_D == best.size) ++optimal;
  }
  double frac = optimal / 300.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "300 instances 2<=k_DB<=8: optimal %.1f%%, mean gap %.3f, oracle exceeded %d",
                100 * frac, gap_sum / 300.0, exceeded);
  report(5, "Scheduler vs brute force", exceeded == 0 && frac >= 0.60, detail);
}

// Fig. 3 trend: k_S + k_D rises then falls over the r grid.
void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  SimConfig cfg;  // K=100, gamma_r=0.6, gamma_c=1.5, v_T=c_s=0 dB
  std::vector<double> grid{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  SweepTable table = sweep(cfg, "r", grid, 200);

  auto metric = [](const ExperimentRecord& r) { return static_cast<double>(r.k_S + r.k_D); };
  std::size_t argmax = 0;
  double best = -1.0;
  std::vector<std::vector<double>> per_seed;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    per_seed.push_back(metric_per_seed(table.rows[p], metric));
    double mean = 0.0;
    for (double v : per_seed[p]) mean += v;
    mean /= per_seed[p].size();
    if (mean > best) {
      best = mean;
      argmax = p;
    }
  }
  bool interior = argmax > 0 && argmax + 1 < grid.size();
  Paired left = paired_diff(per_seed[argmax], per_seed.front());
  Paired right = paired_diff(per_seed[argmax], per_seed.back());
  bool separated = left.mean >= 2 * left.se && right.mean >= 2 * right.se && left.mean > 0 &&
                   right.mean > 0;
  double secs = elapsed_s(t0);
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "argmax r=%.0f, paired CRN gaps %.2f+-%.2f (left) %.3f+-%.3f (right), %.1f s",
                grid[argmax], left.mean, left.se, right.mean, right.se, secs);
  report(6, "Unimodal k_S+k_D over r", interior && separated && secs < 600.0, detail);
}

// Fig. 4 trend: the argmax-r is non-increasing in K (one grid step slack).
void criterion_7() {
  std::vector<double> grid{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::vector<double> opts;
  for (int K : {100, 200, 300}) {
    SimConfig cfg;
    cfg.K = K;
    SweepTable table = sweep(cfg, "r", grid, 200);
    double best = -1.0;
    double arg = grid[0];
    for (std::size_t p = 0; p < grid.size(); ++p) {
      PointStat st = point_stat(table.rows[p], [](const ExperimentRecord& r) {
        return static_cast<double>(r.k_S + r.k_D);
      });
      if (st.mean > best) {
        best = st.mean;
        arg = grid[p];
      }
    }
    opts.push_back(arg);
  }
  double step = 50.0;
  int violations = 0;
  for (std::size_t i = 1; i < opts.size(); ++i)
    if (opts[i] > opts[i - 1] + step / 2) ++violations;  // strict increase beyond noise
  bool one_step_ok = true;
  for (std::size_t i = 1; i < opts.size(); ++i)
    if (opts[i] > opts[i - 1] + 1.5 * step) one_step_ok = false;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "optimal r: K=100 -> %.0f, K=200 -> %.0f, K=300 -> %.0f",
                opts[0], opts[1], opts[2]);
  report(7, "Optimal r decreasing in K", violations <= 1 && one_step_ok, detail);
}

// Fig. 5 trend: the argmax-gamma_c is non-decreasing in gamma_r.
void criterion_8() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(0.25 * i);
  std::vector<double> opts;
  for (double gr : {0.2, 0.6, 1.0}) {
    SimConfig cfg;
    cfg.gamma_r = gr;
    SweepTable table = sweep(cfg, "gamma_c", grid, 200);
    double best = -1.0;
    double arg = grid[0];
    for (std::size_t p = 0; p < grid.size(); ++p) {
      PointStat st = point_stat(table.rows[p], [](const ExperimentRecord& r) {
        return static_cast<double>(r.k_S + r.k_D);
      });
      if (st.mean > best) {
        best = st.mean;
        arg = grid[p];
      }
    }
    opts.push_back(arg);
  }
  double step = 0.25;
  int violations = 0;
  for (std::size_t i = 1; i < opts.size(); ++i)
    if (opts[i] < opts[i - 1] - step / 2) ++violations;
  bool one_step_ok = true;
  for (std::size_t i = 1; i < opts.size(); ++i)
    if (opts[i] < opts[i - 1] - 1.5 * step) one_step_ok = false;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "optimal gamma_c: gamma_r=0.2 -> %.2f, 0.6 -> %.2f, 1.0 -> %.2f", opts[0],
                opts[1], opts[2]);
  report(8, "Optimal gamma_c increasing in gamma_r", violations <= 1 && one_step_ok, detail);
}

// Fig. 7: max-min allocation vs running every link at its target.
void criterion_9() {
  SimConfig cfg;  // c_s = v_T = 0 dB baseline
  std::vector<double> opt, base;
  double v_bar = db_to_linear(cfg.v_check_db);
  for (int j = 0; j < 200; ++j) {
    ExperimentRecord rec = run_realization(cfg, sub_seed(cfg.rng_seed, j));
    opt.push_back(rec.throughput_bps);
    base.push_back(rec.k_D * cfg.bandwidth_hz * log2p1(v_bar));
  }
  double mean_opt = 0.0, mean_base = 0.0;
  for (std::size_t i = 0; i < opt.size(); ++i) {
    mean_opt += opt[i];
    mean_base += base[i];
  }
  mean_opt /= opt.size();
  mean_base /= base.size();
  Paired diff = paired_diff(opt, base);
  bool pass = mean_opt >= 1.2 * mean_base && diff.mean >= 2 * diff.se;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "mean %.2f vs %.2f Mbps (+%.0f%%), paired gap %.2f+-%.2f Mbps",
                mean_opt / 1e6, mean_base / 1e6, 100 * (mean_opt / mean_base - 1),
                diff.mean / 1e6, diff.se / 1e6);
  report(9, "Max-min vs no-optimization", pass, detail);
}

// Fig. 8: the c_s knob trades scheduled links for throughput.
void criterion_10() {
  SimConfig cfg;
  std::vector<double> grid{0, 1, 2, 3, 4, 5};
  SweepTable table = sweep(cfg, "c_s_db", grid, 200);
  int violations = 0;
  for (std::size_t j = 0; j < table.seeds.size(); ++j) {
    for (std::size_t p = 1; p < grid.size(); ++p)
      if (table.rows[p][j].k_D > table.rows[p - 1][j].k_D) ++violations;
  }
  PointStat tp0 = point_stat(table.rows[0],
                             [](const ExperimentRecord& r) { return r.throughput_bps; });
  PointStat tp5 = point_stat(table.rows[5],
                             [](const ExperimentRecord& r) { return r.throughput_bps; });
  bool pass = violations == 0 && tp5.mean > tp0.mean;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d pointwise k_D violations; throughput %.2f -> %.2f Mbps at 0 -> 5 dB",
                violations, tp0.mean / 1e6, tp5.mean / 1e6);
  report(10, "c_s tradeoff", pass, detail);
}

// Fig. 10: download-time accounting and its trend across K.
void criterion_11() {
  // the 30 MB / 120 kbps single-BS-user case is exactly 2000 s
  Classification cls;
  cls.bs_only = {0};
  ScheduleResult empty;
  bool unit_ok = download_time_s(empty, cls, kVideoBits, kBsRateBps, 1e6) == 2000.0;

  std::vector<double> users, served, per_user;
  for (int K : {100, 200, 300}) {
    SimConfig cfg;
    cfg.K = K;
    double sum_served = 0.0, sum_time = 0.0;
    for (int j = 0; j < 200; ++j) {
      ExperimentRecord rec = run_realization(cfg, sub_seed(cfg.rng_seed, j));
      sum_served += rec.k_S + rec.k_D;
      sum_time += rec.download_time_s / K;
    }
    users.push_back(K);
    served.push_back(sum_served / 200.0);
    per_user.push_back(sum_time / 200.0);
  }
  bool trend = true;
  for (std::size_t i = 1; i < served.size(); ++i) {
    if (!(served[i] > served[i - 1])) trend = false;       // k_S + k_D grows with K
    if (!(per_user[i] < per_user[i - 1])) trend = false;   // per-user time falls
  }
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "unit case %s; k_S+k_D %.1f/%.1f/%.1f, per-user time %.1f/%.1f/%.1f s",
                unit_ok ? "2000 s" : "WRONG", served[0], served[1], served[2], per_user[0],
                per_user[1], per_user[2]);
  report(11, "Download-time accounting", unit_ok && trend, detail);
}

// End-to-end speed and determinism.
void criterion_12() {
  SimConfig cfg;
  auto t0 = std::chrono::steady_clock::now();
  ExperimentRecord rec = run_realization(cfg, sub_seed(cfg.rng_seed, 0));
  double secs = elapsed_s(t0);

  ExperimentRecord again = run_realization(cfg, sub_seed(cfg.rng_seed, 0));
  bool identical = record_jsonl_line(rec) == record_jsonl_line(again);

  RealizationParts a = run_pipeline(cfg, sub_seed(cfg.rng_seed, 0));
  RealizationParts b = run_pipeline(cfg, sub_seed(cfg.rng_seed, 0));
  identical = identical && a.sched.scheduled == b.sched.scheduled &&
              a.sched.powers == b.sched.powers && a.sched.sinrs == b.sched.sinrs;

  char detail[120];
  std::snprintf(detail, sizeof(detail), "one K=100 realization in %.4f s, outputs %s", secs,
                identical ? "byte-identical" : "DIVERGED");
  report(12, "End-to-end speed and determinism", secs < 2.0 && identical, detail);
}

}  // namespace

int main() {
  std::printf("acceptance: d2dcache criteria at fixed master seeds\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
