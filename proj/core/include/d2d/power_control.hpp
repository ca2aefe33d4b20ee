#pragma once

#include <optional>
#include <span>
#include <vector>

#include "d2d/caching.hpp"
#include "d2d/conflict_graph.hpp"
#include "d2d/topology.hpp"

namespace d2d {

// Per-link SINR floors, all linear. v_check is the QoE minimum; the
// scheduling target is v_bar = max(v_check, c_s), so raising c_s only
// ever tightens the constraint.
struct SinrTargets {
  std::vector<double> v_check;  // indexed by link id
  double c_s = 1.0;

  double v_bar(int link_id) const {
    double v = v_check[static_cast<std::size_t>(link_id)];
    return v > c_s ? v : c_s;
  }
};

SinrTargets uniform_targets(int n_links, double v_check_linear, double c_s_linear);

// SINR at every group receiver when all group links transmit with
// `powers` (same order as group_ids): p_m g(m,m) / (sum p_n g(n,m) + N).
std::vector<double> group_sinrs(std::span<const int> group_ids,
                                std::span<const PotentialLink> links,
                                const CellTopology& topo,
                                std::span<const double> powers);

// The k x k balance matrix H with H[m][m] = g(m,m)/v_bar_m and
// H[m][n] = -g(n,m): row m states p_m g(m,m)/v_bar_m - sum p_n g(n,m) = N_m,
// i.e. receiver m sits exactly at its target. Row-major, order of group_ids.
// `v_bar` overrides the per-link targets when non-empty (profile solves).
std::vector<double> build_h_matrix(std::span<const int> group_ids,
                                   std::span<const PotentialLink> links,
                                   const CellTopology& topo,
                                   const SinrTargets& targets,
                                   std::span<const double> v_bar_override = {});

// Exact-target powers H^{-1} N without the box check; nullopt when H is
// too ill-conditioned (rcond < 1e-12) or the solve residual exceeds
// 1e-10 relative.
std::optional<std::vector<double>> solve_exact_powers(std::span<const int> group_ids,
                                                      std::span<const PotentialLink> links,
                                                      const CellTopology& topo,
                                                      const SinrTargets& targets,
                                                      std::span<const double> v_bar_override = {});

struct PowerSolveOutcome {
  enum class Status { Feasible, Infeasible };
  struct Violation {
    bool negative = false;
    bool above_max = false;
  };

  Status status = Status::Infeasible;
  std::vector<double> power;         // exact-target powers, set when Feasible
  std::vector<Violation> violation;  // per group link, set when Infeasible
  bool singular = false;             // H too ill-conditioned for a reliable solve

  bool feasible() const { return status == Status::Feasible; }
};

// Centralized power control: solve H P = N and accept iff
// 0 <= P <= p_max element-wise. Near-singular systems (rcond below
// 1e-12) and solves whose residual exceeds 1e-10 relative are reported
// Infeasible with the singular flag.
PowerSolveOutcome cpc_check(std::span<const int> group_ids,
                            std::span<const PotentialLink> links,
                            const CellTopology& topo, const SinrTargets& targets,
                            double p_max_w,
                            std::span<const double> v_bar_override = {});

// Relative-interference scores: alpha[m] is the summed relative
// interference link m inflicts at minimum power, beta[m] what it absorbs.
struct RelativeInterference {
  std::vector<double> alpha;
  std::vector<double> beta;
};

RelativeInterference relative_interference(std::span<const int> group_ids,
                                           std::span<const PotentialLink> links,
                                           const CellTopology& topo,
                                           const SinrTargets& targets,
                                           double p_max_w);

// Link to drop next: argmax of max(alpha, beta), ties to the lowest link id.
int remove_one(std::span<const int> group_ids, std::span<const PotentialLink> links,
               const CellTopology& topo, const SinrTargets& targets, double p_max_w);

struct PruneResult {
  std::vector<int> survivors;      // sorted link ids
  std::vector<int> removed;        // in removal order
  std::vector<double> power_bar;   // CPC powers of the survivors at v_bar
};

// Drop the worst offender until the group passes cpc_check. An already
// feasible group is returned untouched; the empty group is feasible.
PruneResult prune_to_feasible(std::span<const int> group_ids,
                              std::span<const PotentialLink> links,
                              const CellTopology& topo, const SinrTargets& targets,
                              double p_max_w);

struct DcpcResult {
  std::vector<double> power;
  bool converged = false;
  int iterations = 0;
};

// Distributed baseline: p_m <- min(p_max, v_bar_m (I_m + N_m) / g(m,m))
// from the single-link minimum powers, stopping when the largest relative
// power change drops below tol.
DcpcResult dcpc_iterate(std::span<const int> group_ids,
                        std::span<const PotentialLink> links,
                        const CellTopology& topo, const SinrTargets& targets,
                        double p_max_w, int max_iters = 10000, double tol = 1e-8);

}  // namespace d2d
