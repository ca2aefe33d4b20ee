#include "d2d/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "d2d/conflict_graph.hpp"
#include "d2d/units.hpp"

namespace d2d {

ScheduleResult schedule(const Classification& cls, const CellTopology& topo,
                        const SinrTargets& targets, double p_max_w, double maxmin_eps) {
  ScheduleResult res;
  res.k_S = static_cast<int>(cls.self_served.size());
  res.k_DB = static_cast<int>(cls.d2d_or_bs.size());
  res.k_B = static_cast<int>(cls.bs_only.size());
  if (cls.links.empty()) return res;

  LinkGraph graph = build_graph(cls.links);
  std::vector<ColorClass> classes = color_edges(graph);

  int winner = -1;
  for (const ColorClass& cc : classes) {
    PruneResult pruned = prune_to_feasible(cc.link_ids, cls.links, topo, targets, p_max_w);
    ColorDiagnostics diag;
    diag.color_index = cc.color_index;
    diag.initial_size = static_cast<int>(cc.link_ids.size());
    diag.removed = pruned.removed;
    diag.survivors = static_cast<int>(pruned.survivors.size());
    diag.power_bar = pruned.power_bar;
    res.removals_total += static_cast<int>(pruned.removed.size());
    res.per_color.push_back(std::move(diag));
    if (winner < 0 || res.per_color[winner].survivors < res.per_color.back().survivors) {
      winner = static_cast<int>(res.per_color.size()) - 1;  // ties keep the lowest color
      res.scheduled = pruned.survivors;
    }
  }

  if (winner < 0 || res.per_color[winner].survivors == 0) {
    res.scheduled.clear();
    return res;
  }
  res.winner_color = res.per_color[winner].color_index;
  res.k_D = res.per_color[winner].survivors;

  MaxMinResult mm = binary_search_maxmin(res.scheduled, cls.links, topo, targets, p_max_w,
                                         res.per_color[winner].power_bar, maxmin_eps);
  res.powers = std::move(mm.power);
  res.sinrs = std::move(mm.sinrs);
  res.min_rate = mm.min_rate;
  return res;
}

BruteForceResult optimal_schedule_bruteforce(const Classification& cls,
                                             const CellTopology& topo,
                                             const SinrTargets& targets, double p_max_w,
                                             int max_links) {
  int k = static_cast<int>(cls.links.size());
  if (k > max_links)
    throw std::invalid_argument("optimal_schedule_bruteforce: instance has " +
                                std::to_string(k) + " potential links, guard is " +
                                std::to_string(max_links));
  BruteForceResult best;
  if (k == 0) return best;

  // conflict[i][j]: links i and j share a user (C1 violation)
  std::vector<std::vector<bool>> conflict(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const PotentialLink& a = cls.links[i];
      const PotentialLink& b = cls.links[j];
      bool shares = a.receiver == b.receiver || a.receiver == b.transmitter ||
                    a.transmitter == b.receiver || a.transmitter == b.transmitter;
      conflict[i][j] = conflict[j][i] = shares;
    }
  }

  std::vector<int> subset;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    subset.clear();
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j : subset) {
        if (conflict[j][i]) {
          ok = false;
          break;
        }
      }
      if (ok) subset.push_back(i);
    }
    if (!ok) continue;
    if (static_cast<int>(subset.size()) < best.size) continue;
    if (!cpc_check(subset, cls.links, topo, targets, p_max_w).feasible()) continue;
    if (static_cast<int>(subset.size()) > best.size ||
        (static_cast<int>(subset.size()) == best.size && subset < best.best)) {
      best.best = subset;
      best.size = static_cast<int>(subset.size());
    }
  }
  return best;
}

}  // namespace d2d
