#pragma once

#include <optional>
#include <span>
#include <vector>

#include "d2d/power_control.hpp"

namespace d2d {

// Target profile V^(m)(v): after sorting the group by ascending v_bar,
// the first m links are equalized at v and the tail keeps its targets.
struct SinrProfile {
  int m = 0;                      // leading equalized links, 1..k
  double v = 0.0;                 // common SINR of the first m (linear)
  std::vector<double> tail;       // v_bar_{m+1..k} in sorted order
  std::vector<int> permutation;   // sorted position -> position in group_ids

  // Profile in group order (inverse of the sort permutation).
  std::vector<double> targets_in_group_order() const;
};

// Ascending sort of the group's v_bar; ties broken by link id.
SinrProfile base_profile(std::span<const int> group_ids, const SinrTargets& targets);

// Exact-target powers for a profile (group order); nullopt when the
// system is singular, which the search treats as box-violating.
std::optional<std::vector<double>> power_for_profile(const SinrProfile& profile,
                                                     std::span<const int> group_ids,
                                                     std::span<const PotentialLink> links,
                                                     const CellTopology& topo,
                                                     const SinrTargets& targets);

// Largest m whose profile V^(m)(v_bar_m) fits the box
// p_bar <= P <= p_max while V^(m)(v_bar_{m+1}) does not; k when the walk
// exhausts. Requires the group CPC-feasible at v_bar.
int find_breakpoint(std::span<const int> group_ids, std::span<const PotentialLink> links,
                    const CellTopology& topo, const SinrTargets& targets,
                    double p_max_w, std::span<const double> power_bar);

struct MaxMinResult {
  SinrProfile profile;           // optimum profile
  std::vector<double> power;     // P*, group order, watts
  std::vector<double> sinrs;     // realized SINRs from P*, group order
  double min_rate = 0.0;         // log2(1 + min SINR), bits/s/Hz
};

// Binary search over the common level v of the breakpoint profile,
// keeping p_bar <= P <= p_max; stops once the bracket is narrower than
// eps and the midpoint is box-feasible. eps is linear SINR.
MaxMinResult binary_search_maxmin(std::span<const int> group_ids,
                                  std::span<const PotentialLink> links,
                                  const CellTopology& topo, const SinrTargets& targets,
                                  double p_max_w, std::span<const double> power_bar,
                                  double eps = 1e-3);

}  // namespace d2d
