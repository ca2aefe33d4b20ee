#pragma once

#include <cstdint>
#include <vector>

#include "d2d/topology.hpp"

namespace d2d {

// Zipf popularity over file indices 1..N: p(eta) ∝ eta^-gamma.
struct ZipfPmf {
  std::vector<double> probs;  // probs[i] is the probability of file i+1
  double exponent = 0.0;
};

ZipfPmf zipf_pmf(int n_files, double gamma);

// Inverse-CDF draw; returns a 1-based file index.
int sample_file(const ZipfPmf& pmf, double u01);

// Per-user cached and requested file (each user holds exactly one file).
struct CacheState {
  std::vector<int> cached_file;     // 1-based file indices
  std::vector<int> requested_file;  // 1-based file indices
};

CacheState place_and_request(const CellTopology& topo, const ZipfPmf& pmf_cache,
                             const ZipfPmf& pmf_request, std::uint64_t seed);

// A receiver, its chosen helper and the direct gain between them.
struct PotentialLink {
  int receiver = -1;
  int transmitter = -1;
  double direct_gain = 0.0;
};

// Partition of the users: S_S serve themselves from their own cache,
// S_DB own a potential D2D link (one per member), S_B fall back to the
// BS. links[i] is the potential link of d2d_or_bs[i].
struct Classification {
  std::vector<int> self_served;   // S_S
  std::vector<int> d2d_or_bs;     // S_DB
  std::vector<int> bs_only;       // S_B
  std::vector<PotentialLink> links;
};

// Self-access first; otherwise the helper within help_distance_m caching
// the requested file with the largest direct gain (ties to the lowest
// user id). Any user, including a self-served one, may act as a helper.
Classification classify(const CellTopology& topo, const CacheState& cache,
                        double help_distance_m);

}  // namespace d2d
