#pragma once

#include <vector>

#include "d2d/caching.hpp"
#include "d2d/maxmin_alloc.hpp"
#include "d2d/power_control.hpp"

namespace d2d {

struct ColorDiagnostics {
  int color_index = 0;
  int initial_size = 0;
  std::vector<int> removed;       // removal order
  int survivors = 0;
  std::vector<double> power_bar;  // CPC powers of the survivors
};

struct ScheduleResult {
  std::vector<int> scheduled;     // link ids, sorted (L_D*)
  std::vector<double> powers;     // P*, watts, aligned with scheduled
  std::vector<double> sinrs;      // realized SINRs, aligned with scheduled
  std::vector<ColorDiagnostics> per_color;
  int winner_color = 0;           // 1-based; 0 when nothing scheduled
  int k_S = 0, k_DB = 0, k_B = 0, k_D = 0;
  double min_rate = 0.0;          // log2(1 + min SINR), bits/s/Hz; 0 when empty
  int removals_total = 0;
};

// End-to-end link scheduling: color the conflict graph, prune every color
// class to CPC feasibility, schedule the class with the most survivors
// (ties to the lowest color index) and run max-min power allocation on it.
ScheduleResult schedule(const Classification& cls, const CellTopology& topo,
                        const SinrTargets& targets, double p_max_w,
                        double maxmin_eps = 1e-3);

struct BruteForceResult {
  std::vector<int> best;  // sorted link ids of a maximum feasible subset
  int size = 0;
};

// Exhaustive search over all link subsets satisfying C1 (user-disjoint)
// and C2 (CPC feasible): the exact optimum of the scheduling subproblem.
// Refuses instances with more than max_links links.
BruteForceResult optimal_schedule_bruteforce(const Classification& cls,
                                             const CellTopology& topo,
                                             const SinrTargets& targets,
                                             double p_max_w, int max_links = 12);

}  // namespace d2d
