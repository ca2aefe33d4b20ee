#pragma once

#include <span>
#include <vector>

#include "d2d/caching.hpp"

namespace d2d {

// User-sharing conflict graph over potential links: one edge per link,
// vertices are the users it touches. Two links conflict (cannot be
// scheduled together, constraint C1) iff their edges share a vertex, so
// a valid simultaneous set is a matching.
struct LinkGraph {
  struct Edge {
    int link_id;  // index into the potential-link list
    int u, v;     // user ids (transmitter, receiver)
  };
  std::vector<int> vertices;  // sorted unique user ids
  std::vector<Edge> edges;
};

LinkGraph build_graph(std::span<const PotentialLink> links);

// Exact maximum-cardinality matching; among maximum matchings returns the
// lexicographically smallest edge-id set. Result is sorted by link id.
std::vector<int> max_matching(const LinkGraph& graph);

// One color class: links sharing no users (a matching).
struct ColorClass {
  int color_index = 0;              // 1-based
  std::vector<int> link_ids;        // sorted
};

// Iterative peeling: class i is a maximum matching of the residual graph
// at iteration i. Classes partition the edge set and their sizes are
// non-increasing.
std::vector<ColorClass> color_edges(const LinkGraph& graph);

}  // namespace d2d
