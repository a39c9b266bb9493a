#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "corank/neighbors.hpp"
#include "corank/parallel.hpp"
#include "corank/types.hpp"

namespace corank {

enum class MetricKind { euclidean, precomputed, geodesic };

/// How to turn an input into a distance matrix. k is the neighbor count of
/// the geodesic kNN graph and is ignored by the other kinds.
struct MetricSpec {
  MetricKind kind = MetricKind::euclidean;
  int k = 0;
};

/// Undirected weighted graph as adjacency lists sorted by neighbor index.
struct NeighborGraph {
  struct Edge {
    std::int32_t to;
    double weight;

    bool operator==(const Edge&) const = default;
  };

  std::size_t size = 0;
  std::vector<std::vector<Edge>> adj;
};

/// Plain L2 distances, exact zero diagonal, mirrored so symmetry is bitwise.
inline DistanceMatrix euclidean_distances(const PointSet& points) {
  points.validate();
  const std::size_t n = points.size();
  const std::size_t dim = points.dim();
  DistanceMatrix out{Matrix<double>(n, n, 0.0)};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* pi = points.coords.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double* pj = points.coords.row(j);
        double sq = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = pi[c] - pj[c];
          sq += diff * diff;
        }
        const double dist = std::sqrt(sq);
        out.d(i, j) = dist;
        out.d(j, i) = dist;
      }
    }
  });
  return out;
}

namespace detail {

inline std::size_t component_count_impl(
    const std::vector<std::vector<NeighborGraph::Edge>>& adj) {
  const std::size_t n = adj.size();
  std::vector<char> seen(n, 0);
  std::vector<std::int32_t> stack;
  std::size_t components = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) {
      continue;
    }
    ++components;
    seen[start] = 1;
    stack.push_back(static_cast<std::int32_t>(start));
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      for (const auto& e : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = 1;
          stack.push_back(e.to);
        }
      }
    }
  }
  return components;
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  std::size_t components;

  explicit UnionFind(std::size_t n) : parent(n), components(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      --components;
    }
  }
};

/// Smallest k whose symmetrized kNN graph is connected. The directed edges
/// for growing k are nested, so a union-find absorbs one extra neighbor per
/// point and per step.
inline int smallest_connecting_k(
    const std::vector<std::vector<std::int32_t>>& orders) {
  const std::size_t n = orders.size();
  UnionFind uf(n);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      uf.unite(static_cast<std::int32_t>(i), orders[i][k - 1]);
    }
    if (uf.components == 1) {
      return static_cast<int>(k);
    }
  }
  return static_cast<int>(n - 1);
}

inline std::vector<std::vector<NeighborGraph::Edge>> knn_adjacency(
    const Matrix<double>& d,
    const std::vector<std::vector<std::int32_t>>& orders, int k) {
  const std::size_t n = orders.size();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(n * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (int s = 0; s < k; ++s) {
      const std::int32_t j = orders[i][static_cast<std::size_t>(s)];
      pairs.emplace_back(std::min<std::int32_t>(static_cast<std::int32_t>(i), j),
                         std::max<std::int32_t>(static_cast<std::int32_t>(i), j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::vector<NeighborGraph::Edge>> adj(n);
  for (const auto& [a, b] : pairs) {
    const double w = d(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    adj[static_cast<std::size_t>(a)].push_back({b, w});
    adj[static_cast<std::size_t>(b)].push_back({a, w});
  }
  for (auto& edges : adj) {
    std::sort(edges.begin(), edges.end(),
              [](const NeighborGraph::Edge& x, const NeighborGraph::Edge& y) {
                return x.to < y.to;
              });
  }
  return adj;
}

}  // namespace detail

/// Symmetrized union of each point's k nearest neighbors; edge weights are
/// the input distances. Ties resolve to the lower index, the same rule the
/// rank matrix uses.
inline NeighborGraph knn_graph(const DistanceMatrix& d, int k) {
  const std::size_t n = d.size();
  if (k < 1 || static_cast<std::size_t>(k) > n - 1) {
    throw std::invalid_argument("knn_graph: k must be in [1, N-1], got " +
                                std::to_string(k));
  }
  const auto orders = detail::all_sorted_neighbors(d.d);
  return NeighborGraph{n, detail::knn_adjacency(d.d, orders, k)};
}

inline std::size_t component_count(const NeighborGraph& graph) {
  return detail::component_count_impl(graph.adj);
}

/// Shortest-path distances over the symmetrized Euclidean kNN graph
/// (Dijkstra per source). A disconnected graph is a hard error that reports
/// the component count and the smallest connecting k.
inline DistanceMatrix geodesic_distances(const PointSet& points, int k) {
  const DistanceMatrix euclid = euclidean_distances(points);
  const std::size_t n = euclid.size();
  if (k < 1 || static_cast<std::size_t>(k) > n - 1) {
    throw std::invalid_argument(
        "geodesic_distances: k must be in [1, N-1], got " + std::to_string(k));
  }

  const auto orders = detail::all_sorted_neighbors(euclid.d);
  const auto adj = detail::knn_adjacency(euclid.d, orders, k);
  const std::size_t components = detail::component_count_impl(adj);
  if (components > 1) {
    const int k_min = detail::smallest_connecting_k(orders);
    throw input_error("geodesic kNN graph is disconnected for k=" +
                      std::to_string(k) + " (" + std::to_string(components) +
                      " components); smallest k that connects the graph is " +
                      std::to_string(k_min));
  }

  DistanceMatrix out{Matrix<double>(n, n, 0.0)};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    using Item = std::pair<double, std::int32_t>;
    for (std::size_t src = begin; src < end; ++src) {
      std::fill(dist.begin(), dist.end(), inf);
      dist[src] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
      queue.emplace(0.0, static_cast<std::int32_t>(src));
      while (!queue.empty()) {
        const auto [cost, v] = queue.top();
        queue.pop();
        if (cost > dist[static_cast<std::size_t>(v)]) {
          continue;  // stale entry
        }
        for (const auto& e : adj[static_cast<std::size_t>(v)]) {
          const double candidate = cost + e.weight;
          if (candidate < dist[static_cast<std::size_t>(e.to)]) {
            dist[static_cast<std::size_t>(e.to)] = candidate;
            queue.emplace(candidate, e.to);
          }
        }
      }
      std::copy(dist.begin(), dist.end(), out.d.row(src));
    }
  });

  // Per-source sums can differ in the last ulp between directions; mirror the
  // smaller value so the matrix is exactly symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::min(out.d(i, j), out.d(j, i));
      out.d(i, j) = v;
      out.d(j, i) = v;
    }
    out.d(i, i) = 0.0;
  }
  return out;
}

/// Distance matrix for the requested metric. Precomputed matrices enter the
/// pipeline through corank::read_distance_matrix instead.
inline DistanceMatrix pairwise_distances(const PointSet& points,
                                         const MetricSpec& metric) {
  switch (metric.kind) {
    case MetricKind::euclidean:
      return euclidean_distances(points);
    case MetricKind::geodesic:
      return geodesic_distances(points, metric.k);
    case MetricKind::precomputed:
      break;
  }
  throw std::invalid_argument(
      "pairwise_distances: metric must be euclidean or geodesic");
}

}  // namespace corank
