#include "d2d/maxmin_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "d2d/units.hpp"

namespace d2d {

namespace {

// true iff power_bar <= p <= p_max element-wise (non-strict on both ends;
// the lower comparison is exact because equal targets rebuild the exact
// same system).
bool box_ok(const std::vector<double>& p, std::span<const double> power_bar, double p_max_w) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < power_bar[i] || p[i] > p_max_w) return false;
  }
  return true;
}

std::vector<double> sorted_v_bar(const SinrProfile& base, const SinrTargets& targets,
                                 std::span<const int> group_ids) {
  std::vector<double> v(base.permutation.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = targets.v_bar(group_ids[base.permutation[i]]);
  return v;
}

SinrProfile make_profile(const SinrProfile& base, const std::vector<double>& vbar_sorted,
                         int m, double v) {
  SinrProfile p;
  p.m = m;
  p.v = v;
  p.tail.assign(vbar_sorted.begin() + m, vbar_sorted.end());
  p.permutation = base.permutation;
  return p;
}

}  // namespace

std::vector<double> SinrProfile::targets_in_group_order() const {
  std::size_t k = permutation.size();
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double t = i < static_cast<std::size_t>(m) ? v : tail[i - m];
    out[permutation[i]] = t;
  }
  return out;
}

SinrProfile base_profile(std::span<const int> group_ids, const SinrTargets& targets) {
  std::size_t k = group_ids.size();
  SinrProfile p;
  p.permutation.resize(k);
  std::iota(p.permutation.begin(), p.permutation.end(), 0);
  std::sort(p.permutation.begin(), p.permutation.end(), [&](int a, int b) {
    double va = targets.v_bar(group_ids[a]);
    double vb = targets.v_bar(group_ids[b]);
    if (va != vb) return va < vb;
    return group_ids[a] < group_ids[b];  // deterministic tie-break
  });
  if (k > 0) {
    p.m = 1;
    p.v = targets.v_bar(group_ids[p.permutation[0]]);
    p.tail.resize(k - 1);
    for (std::size_t i = 1; i < k; ++i)
      p.tail[i - 1] = targets.v_bar(group_ids[p.permutation[i]]);
  }
  return p;
}

std::optional<std::vector<double>> power_for_profile(const SinrProfile& profile,
                                                     std::span<const int> group_ids,
                                                     std::span<const PotentialLink> links,
                                                     const CellTopology& topo,
                                                     const SinrTargets& targets) {
  std::vector<double> v_bar = profile.targets_in_group_order();
  return solve_exact_powers(group_ids, links, topo, targets, v_bar);
}

int find_breakpoint(std::span<const int> group_ids, std::span<const PotentialLink> links,
                    const CellTopology& topo, const SinrTargets& targets, double p_max_w,
                    std::span<const double> power_bar) {
  int k = static_cast<int>(group_ids.size());
  if (k <= 1) return k;
  SinrProfile base = base_profile(group_ids, targets);
  std::vector<double> vbar = sorted_v_bar(base, targets, group_ids);
  int m = 1;
  while (m < k) {
    SinrProfile probe = make_profile(base, vbar, m, vbar[m]);  // V^(m)(v_bar_{m+1})
    auto p = power_for_profile(probe, group_ids, links, topo, targets);
    if (!p || !box_ok(*p, power_bar, p_max_w)) break;
    ++m;
  }
  return m;
}

MaxMinResult binary_search_maxmin(std::span<const int> group_ids,
                                  std::span<const PotentialLink> links,
                                  const CellTopology& topo, const SinrTargets& targets,
                                  double p_max_w, std::span<const double> power_bar,
                                  double eps) {
  if (!(eps > 0)) throw std::invalid_argument("binary_search_maxmin: eps must be > 0");
  MaxMinResult result;
  int k = static_cast<int>(group_ids.size());
  if (k == 0) return result;

  SinrProfile base = base_profile(group_ids, targets);
  std::vector<double> vbar = sorted_v_bar(base, targets, group_ids);
  int m = find_breakpoint(group_ids, links, topo, targets, p_max_w, power_bar);

  double v_lo = vbar[m - 1];
  double v_hi;
  if (m < k) {
    v_hi = vbar[m];
  } else {
    // interference-free cap: v cannot exceed min_m p_max g(m,m) / N_m
    v_hi = std::numeric_limits<double>::infinity();
    for (int id : group_ids) {
      const PotentialLink& l = links[id];
      v_hi = std::min(v_hi, p_max_w * topo.gain(l.transmitter, l.receiver) / topo.noise_w());
    }
  }

  auto solve_at = [&](double v) {
    return power_for_profile(make_profile(base, vbar, m, v), group_ids, links, topo, targets);
  };
  auto feasible = [&](const std::optional<std::vector<double>>& p) {
    return p && box_ok(*p, power_bar, p_max_w);
  };

  double v_mid = v_hi;
  auto p_mid = solve_at(v_mid);
  int guard = 0;
  while ((!feasible(p_mid) || v_hi - v_lo > eps) && guard++ < 500) {
    v_mid = 0.5 * (v_lo + v_hi);
    p_mid = solve_at(v_mid);
    if (!feasible(p_mid))
      v_hi = v_mid;  // singular solves count as infeasible: shrink right
    else
      v_lo = v_mid;
  }
  if (!feasible(p_mid)) {
    v_mid = v_lo;  // lower bracket endpoint stays box-feasible throughout
    p_mid = solve_at(v_mid);
  }
  if (!feasible(p_mid)) {
    // solver degenerate even at the endpoint: fall back to the CPC point,
    // whose SINRs are the base targets, so profile and powers stay consistent
    result.profile = base;
    result.power.assign(power_bar.begin(), power_bar.end());
    result.sinrs = group_sinrs(group_ids, links, topo, result.power);
    result.min_rate = log2p1(*std::min_element(result.sinrs.begin(), result.sinrs.end()));
    return result;
  }

  result.profile = make_profile(base, vbar, m, v_mid);
  result.power = std::move(*p_mid);
  result.sinrs = group_sinrs(group_ids, links, topo, result.power);
  double min_sinr = *std::min_element(result.sinrs.begin(), result.sinrs.end());
  result.min_rate = log2p1(min_sinr);
  return result;
}

}  // namespace d2d
