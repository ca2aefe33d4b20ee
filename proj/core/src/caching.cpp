#include "d2d/caching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "d2d/rng.hpp"

namespace d2d {

namespace {

std::vector<double> cumulative(const ZipfPmf& pmf) {
  std::vector<double> cdf(pmf.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.probs.size(); ++i) {
    acc += pmf.probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
  return cdf;
}

int pick(const std::vector<double>& cdf, double u01) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u01);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin()) + 1;  // 1-based file index
}

}  // namespace

ZipfPmf zipf_pmf(int n_files, double gamma) {
  if (n_files < 1) throw std::invalid_argument("zipf_pmf: n_files must be >= 1");
  if (!(gamma >= 0)) throw std::invalid_argument("zipf_pmf: gamma must be >= 0");
  ZipfPmf pmf;
  pmf.exponent = gamma;
  pmf.probs.resize(n_files);
  double sum = 0.0;
  for (int eta = 1; eta <= n_files; ++eta) {
    double w = std::pow(static_cast<double>(eta), -gamma);
    pmf.probs[eta - 1] = w;
    sum += w;
  }
  for (double& p : pmf.probs) p /= sum;
  return pmf;
}

int sample_file(const ZipfPmf& pmf, double u01) { return pick(cumulative(pmf), u01); }

CacheState place_and_request(const CellTopology& topo, const ZipfPmf& pmf_cache,
                             const ZipfPmf& pmf_request, std::uint64_t seed) {
  if (pmf_cache.probs.size() != pmf_request.probs.size())
    throw std::invalid_argument("place_and_request: pmfs must cover the same catalog");
  Rng rng(seed);
  int k = topo.num_users();
  CacheState state;
  state.cached_file.resize(k);
  state.requested_file.resize(k);
  std::vector<double> cdf_c = cumulative(pmf_cache);
  std::vector<double> cdf_r = cumulative(pmf_request);
  for (int u = 0; u < k; ++u) state.cached_file[u] = pick(cdf_c, rng.uniform01());
  for (int u = 0; u < k; ++u) state.requested_file[u] = pick(cdf_r, rng.uniform01());
  return state;
}

Classification classify(const CellTopology& topo, const CacheState& cache,
                        double help_distance_m) {
  Classification cls;
  int k = topo.num_users();
  for (int u = 0; u < k; ++u) {
    if (cache.cached_file[u] == cache.requested_file[u]) {
      cls.self_served.push_back(u);  // self-access wins even when helpers exist
      continue;
    }
    int best = -1;
    double best_gain = 0.0;
    for (int h = 0; h < k; ++h) {
      if (h == u) continue;
      if (cache.cached_file[h] != cache.requested_file[u]) continue;
      if (topo.distance(u, h) > help_distance_m) continue;
      double g = topo.gain(h, u);
      if (g > best_gain) {  // ties keep the lowest helper id
        best_gain = g;
        best = h;
      }
    }
    if (best >= 0) {
      cls.d2d_or_bs.push_back(u);
      cls.links.push_back({u, best, best_gain});
    } else {
      cls.bs_only.push_back(u);
    }
  }
  return cls;
}

}  // namespace d2d
