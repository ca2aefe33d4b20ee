#include "d2d/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace d2d {

namespace {

constexpr double kRcondMin = 1e-12;       // condition number gate at 1e12
constexpr double kResidualMax = 1e-10;    // relative infinity-norm residual

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

SinrTargets uniform_targets(int n_links, double v_check_linear, double c_s_linear) {
  if (!(v_check_linear > 0) || !(c_s_linear > 0))
    throw std::invalid_argument("targets must be positive (linear)");
  SinrTargets t;
  t.v_check.assign(n_links, v_check_linear);
  t.c_s = c_s_linear;
  return t;
}

std::vector<double> group_sinrs(std::span<const int> group_ids,
                                std::span<const PotentialLink> links,
                                const CellTopology& topo, std::span<const double> powers) {
  std::size_t k = group_ids.size();
  std::vector<double> sinr(k);
  for (std::size_t m = 0; m < k; ++m) {
    const PotentialLink& lm = links[group_ids[m]];
    double interference = 0.0;
    for (std::size_t n = 0; n < k; ++n) {
      if (n == m) continue;
      const PotentialLink& ln = links[group_ids[n]];
      interference += powers[n] * topo.gain(ln.transmitter, lm.receiver);
    }
    sinr[m] = powers[m] * topo.gain(lm.transmitter, lm.receiver) /
              (interference + topo.noise_w());
  }
  return sinr;
}

std::vector<double> build_h_matrix(std::span<const int> group_ids,
                                   std::span<const PotentialLink> links,
                                   const CellTopology& topo, const SinrTargets& targets,
                                   std::span<const double> v_bar_override) {
  std::size_t k = group_ids.size();
  std::vector<double> h(k * k, 0.0);
  for (std::size_t m = 0; m < k; ++m) {
    const PotentialLink& lm = links[group_ids[m]];
    double v_bar = v_bar_override.empty() ? targets.v_bar(group_ids[m]) : v_bar_override[m];
    for (std::size_t n = 0; n < k; ++n) {
      const PotentialLink& ln = links[group_ids[n]];
      if (n == m)
        h[m * k + m] = topo.gain(lm.transmitter, lm.receiver) / v_bar;
      else
        h[m * k + n] = -topo.gain(ln.transmitter, lm.receiver);
    }
  }
  return h;
}

std::optional<std::vector<double>> solve_exact_powers(std::span<const int> group_ids,
                                                      std::span<const PotentialLink> links,
                                                      const CellTopology& topo,
                                                      const SinrTargets& targets,
                                                      std::span<const double> v_bar_override) {
  std::size_t k = group_ids.size();
  if (k == 0) return std::vector<double>{};
  std::vector<double> h = build_h_matrix(group_ids, links, topo, targets, v_bar_override);
  Eigen::Map<const RowMajorMatrix> H(h.data(), static_cast<Eigen::Index>(k),
                                     static_cast<Eigen::Index>(k));
  Eigen::VectorXd noise = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(k), topo.noise_w());

  Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
  if (!lu.isInvertible() || lu.rcond() < kRcondMin) return std::nullopt;
  Eigen::VectorXd p = lu.solve(noise);
  double residual = (H * p - noise).lpNorm<Eigen::Infinity>() / noise.lpNorm<Eigen::Infinity>();
  if (!(residual <= kResidualMax)) return std::nullopt;
  return std::vector<double>(p.data(), p.data() + k);
}

PowerSolveOutcome cpc_check(std::span<const int> group_ids,
                            std::span<const PotentialLink> links, const CellTopology& topo,
                            const SinrTargets& targets, double p_max_w,
                            std::span<const double> v_bar_override) {
  PowerSolveOutcome out;
  std::size_t k = group_ids.size();
  if (k == 0) {
    out.status = PowerSolveOutcome::Status::Feasible;
    return out;
  }
  auto solved = solve_exact_powers(group_ids, links, topo, targets, v_bar_override);
  if (!solved) {
    out.status = PowerSolveOutcome::Status::Infeasible;
    out.singular = true;
    out.violation.assign(k, {});
    return out;
  }
  bool ok = true;
  out.violation.assign(k, {});
  for (std::size_t m = 0; m < k; ++m) {
    double p = (*solved)[m];
    if (p < 0.0) {
      out.violation[m].negative = true;
      ok = false;
    }
    if (p > p_max_w) {
      out.violation[m].above_max = true;
      ok = false;
    }
  }
  if (ok) {
    out.status = PowerSolveOutcome::Status::Feasible;
    out.power = std::move(*solved);
    out.violation.clear();
  }
  return out;
}

RelativeInterference relative_interference(std::span<const int> group_ids,
                                           std::span<const PotentialLink> links,
                                           const CellTopology& topo,
                                           const SinrTargets& targets, double p_max_w) {
  std::size_t k = group_ids.size();
  if (k < 2) throw std::invalid_argument("relative_interference needs a group of >= 2 links");
  RelativeInterference ri;
  ri.alpha.resize(k);
  ri.beta.resize(k);
  double noise = topo.noise_w();
  for (std::size_t m = 0; m < k; ++m) {
    const PotentialLink& lm = links[group_ids[m]];
    double v_m = targets.v_bar(group_ids[m]);
    double p_min_m = noise * v_m / topo.gain(lm.transmitter, lm.receiver);
    double alpha = 0.0;
    double beta = 0.0;
    for (std::size_t n = 0; n < k; ++n) {
      if (n == m) continue;
      const PotentialLink& ln = links[group_ids[n]];
      double v_n = targets.v_bar(group_ids[n]);
      double p_min_n = noise * v_n / topo.gain(ln.transmitter, ln.receiver);
      alpha += (v_n / p_max_w) * topo.gain(lm.transmitter, ln.receiver);
      beta += p_min_n * topo.gain(ln.transmitter, lm.receiver);
    }
    ri.alpha[m] = p_min_m * alpha;
    ri.beta[m] = (v_m / p_max_w) * beta;
  }
  return ri;
}

int remove_one(std::span<const int> group_ids, std::span<const PotentialLink> links,
               const CellTopology& topo, const SinrTargets& targets, double p_max_w) {
  RelativeInterference ri = relative_interference(group_ids, links, topo, targets, p_max_w);
  int best_id = -1;
  double best_score = -1.0;
  for (std::size_t m = 0; m < group_ids.size(); ++m) {
    double score = std::max(ri.alpha[m], ri.beta[m]);
    int id = group_ids[m];
    if (score > best_score || (score == best_score && id < best_id)) {
      best_score = score;
      best_id = id;
    }
  }
  return best_id;
}

PruneResult prune_to_feasible(std::span<const int> group_ids,
                              std::span<const PotentialLink> links,
                              const CellTopology& topo, const SinrTargets& targets,
                              double p_max_w) {
  PruneResult result;
  result.survivors.assign(group_ids.begin(), group_ids.end());
  std::sort(result.survivors.begin(), result.survivors.end());
  while (true) {
    PowerSolveOutcome outcome = cpc_check(result.survivors, links, topo, targets, p_max_w);
    if (outcome.feasible()) {
      result.power_bar = std::move(outcome.power);
      return result;
    }
    int victim = result.survivors.size() == 1
                     ? result.survivors.front()
                     : remove_one(result.survivors, links, topo, targets, p_max_w);
    result.removed.push_back(victim);
    result.survivors.erase(
        std::find(result.survivors.begin(), result.survivors.end(), victim));
  }
}

DcpcResult dcpc_iterate(std::span<const int> group_ids, std::span<const PotentialLink> links,
                        const CellTopology& topo, const SinrTargets& targets,
                        double p_max_w, int max_iters, double tol) {
  DcpcResult res;
  std::size_t k = group_ids.size();
  if (k == 0) {
    res.converged = true;
    return res;
  }
  double noise = topo.noise_w();
  res.power.resize(k);
  for (std::size_t m = 0; m < k; ++m) {
    const PotentialLink& lm = links[group_ids[m]];
    res.power[m] = noise * targets.v_bar(group_ids[m]) /
                   topo.gain(lm.transmitter, lm.receiver);
  }
  for (int it = 1; it <= max_iters; ++it) {
    std::vector<double> sinr = group_sinrs(group_ids, links, topo, res.power);
    double max_change = 0.0;
    std::vector<double> next(k);
    for (std::size_t m = 0; m < k; ++m) {
      double want = targets.v_bar(group_ids[m]) / sinr[m] * res.power[m];
      next[m] = std::min(p_max_w, want);
      max_change = std::max(max_change, std::abs(next[m] - res.power[m]) / res.power[m]);
    }
    res.power = std::move(next);
    res.iterations = it;
    if (max_change < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace d2d
