#include "d2d/conflict_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace d2d {

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
using VertexPair = std::pair<int, int>;  // normalized (min, max) user ids

VertexPair norm_pair(int a, int b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

// Maximum matching of the edge set restricted to unblocked vertices.
// Returns the matched vertex pairs; parallel edges are collapsed first
// (they never change the matching size).
std::set<VertexPair> boost_matching(const std::vector<LinkGraph::Edge>& edges,
                                    const std::set<int>& blocked) {
  std::set<VertexPair> pairs;
  for (const auto& e : edges) {
    if (blocked.count(e.u) || blocked.count(e.v)) continue;
    pairs.insert(norm_pair(e.u, e.v));
  }
  if (pairs.empty()) return {};

  std::map<int, int> index;  // user id -> compact vertex
  std::vector<int> user;
  for (const auto& [a, b] : pairs) {
    for (int x : {a, b}) {
      if (index.emplace(x, static_cast<int>(user.size())).second) user.push_back(x);
    }
  }
  BGraph g(user.size());
  for (const auto& [a, b] : pairs) boost::add_edge(index[a], index[b], g);

  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(user.size());
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);

  std::set<VertexPair> matched;
  auto null_v = boost::graph_traits<BGraph>::null_vertex();
  for (std::size_t v = 0; v < user.size(); ++v) {
    if (mate[v] != null_v && v < mate[v]) matched.insert(norm_pair(user[v], user[mate[v]]));
  }
  return matched;
}

}  // namespace

LinkGraph build_graph(std::span<const PotentialLink> links) {
  LinkGraph g;
  std::set<int> verts;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const PotentialLink& l = links[i];
    g.edges.push_back({static_cast<int>(i), l.transmitter, l.receiver});
    verts.insert(l.transmitter);
    verts.insert(l.receiver);
  }
  g.vertices.assign(verts.begin(), verts.end());
  return g;
}

std::vector<int> max_matching(const LinkGraph& graph) {
  if (graph.edges.empty()) return {};

  std::vector<LinkGraph::Edge> edges = graph.edges;
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.link_id < b.link_id; });

  std::set<int> blocked;
  std::set<VertexPair> mate_pairs = boost_matching(edges, blocked);
  std::size_t target = mate_pairs.size();

  // Lexicographically smallest maximum matching: walk edges in id order
  // and keep an edge iff some maximum matching extends the kept set with
  // it. An edge in the current matching is free to keep; otherwise one
  // matching recomputation on the reduced graph decides.
  std::vector<int> chosen;
  for (const auto& e : edges) {
    if (chosen.size() == target) break;
    if (blocked.count(e.u) || blocked.count(e.v)) continue;
    VertexPair p = norm_pair(e.u, e.v);
    if (mate_pairs.count(p)) {
      chosen.push_back(e.link_id);
      blocked.insert(e.u);
      blocked.insert(e.v);
      mate_pairs.erase(p);
      continue;
    }
    std::set<int> trial = blocked;
    trial.insert(e.u);
    trial.insert(e.v);
    std::set<VertexPair> reduced = boost_matching(edges, trial);
    if (chosen.size() + 1 + reduced.size() == target) {
      chosen.push_back(e.link_id);
      blocked = std::move(trial);
      mate_pairs = std::move(reduced);
    }
  }
  return chosen;
}

std::vector<ColorClass> color_edges(const LinkGraph& graph) {
  std::vector<ColorClass> classes;
  LinkGraph residual = graph;
  int color = 0;
  while (!residual.edges.empty()) {
    ++color;
    std::vector<int> ids = max_matching(residual);
    classes.push_back({color, ids});
    std::set<int> taken(ids.begin(), ids.end());
    std::vector<LinkGraph::Edge> rest;
    for (const auto& e : residual.edges)
      if (!taken.count(e.link_id)) rest.push_back(e);
    residual.edges = std::move(rest);
  }
  return classes;
}

}  // namespace d2d
