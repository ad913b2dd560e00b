#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fundcheck/compatibility.h"
#include "fundcheck/fundamental.h"
#include "fundcheck/fundamental_set.h"

namespace fundcheck {

// Undirected simple graph on views 0..n-1.
class ViewingGraph {
 public:
  ViewingGraph() = default;
  // Throws GraphError on self-loops, duplicates or out-of-range vertices.
  ViewingGraph(int num_vertices, std::vector<std::pair<int, int>> edges);

  static ViewingGraph Complete(int num_vertices);

  int NumVertices() const { return n_; }
  // Sorted, each stored as (i, j) with i < j.
  const std::vector<std::pair<int, int>>& Edges() const { return edges_; }
  const std::vector<int>& Neighbors(int v) const { return adj_[v]; }
  bool HasEdge(int i, int j) const;
  // Vertex sets of the connected components, each ascending, ordered by
  // smallest vertex.
  std::vector<std::vector<int>> Components() const;
  bool IsConnected() const { return Components().size() <= 1; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// Vectors g^{ij} of skew-symmetric edge matrices [g^{ij}]_x, with
// g^{ji} = -g^{ij}.
class SkewEdgeData {
 public:
  // Throws InvalidInput on a zero or non-finite vector.
  void Set(int i, int j, const Eigen::Vector3d& g);
  // Throws GraphError if absent.
  Eigen::Vector3d G(int i, int j) const;
  bool Has(int i, int j) const;

 private:
  std::map<std::pair<int, int>, Eigen::Vector3d> g_;
};

// Reads g^{ij} from the skew-symmetric matrices of a set on the graph's
// edges. Throws InvalidInput if some matrix is not skew-symmetric.
SkewEdgeData SkewDataFromSet(const FundamentalSet& set, const ViewingGraph& graph,
                             const Tolerances& tol = {});

struct CycleResidual {
  double max_residual = 0.0;  // relative to the largest |g|
  std::pair<int, int> worst_chord{-1, -1};
};

// Sum of g around each fundamental cycle of a BFS tree rooted at the
// smallest vertex of every component.
CycleResidual CycleResiduals(const ViewingGraph& graph, const SkewEdgeData& data);

// Cameras [I | t_v] with t summed along the spanning tree, t = 0 at the
// root. Throws CycleConditionViolated when the residual exceeds
// residual_tol, InvalidInput on a disconnected graph.
std::vector<Camera> CamerasFromCycleSolution(const ViewingGraph& graph,
                                             const SkewEdgeData& data,
                                             const Tolerances& tol = {});

// Compatibility on a non-complete viewing graph by chaining triangles from a
// seed edge; pendant views are attached directly. Undetermined if some view
// cannot be reached this way.
CompatReport CheckGeneralGraph(const FundamentalSet& set,
                               const ViewingGraph& graph,
                               const Tolerances& tol = {});

}  // namespace fundcheck
