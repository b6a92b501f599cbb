#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "indef/error.hpp"

namespace indef {

/// A simplex is a sorted, strictly increasing list of vertex indices.
using Simplex = std::vector<int>;

/// Element of Met(X): one real per edge, ordered by edge index.
using MetricVector = Eigen::VectorXd;

/// Finite abstract simplicial complex on vertices 0..vertex_count-1.
///
/// The maximal simplex list is canonical: every entry sorted, no duplicates,
/// no entry a face of another, entries in lexicographic order. Vertices that
/// appear in no input simplex are kept as isolated 0-simplices. `edges` holds
/// every 1-face once, lexicographically; all per-edge data elsewhere in the
/// library is indexed by position in this list.
struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::string> labels;  // empty, or one label per vertex
  std::vector<Simplex> maximal_simplices;
  std::vector<std::pair<int, int>> edges;
  int dimension = -1;  // -1 only for the vertexless complex
  std::vector<int> degrees;  // graph degree in the 1-skeleton

  int edge_count() const { return static_cast<int>(edges.size()); }
  int max_degree() const;

  /// Position of (u,v) in `edges`, or -1. Order of u, v does not matter.
  int edge_index(int u, int v) const;
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

  bool contains_simplex(const Simplex& s) const;

  /// Every nonempty face of every maximal simplex, sorted by (size, lex).
  std::vector<Simplex> all_faces() const;
  std::vector<Simplex> faces_of_dimension(int k) const;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Validates and canonicalizes. Errors: IndexOutOfRange for a vertex outside
/// 0..vertex_count-1, DuplicateVertexInSimplex, EmptyInput for an empty
/// simplex entry.
ComplexPtr build_complex(int vertex_count, std::vector<Simplex> maximal,
                         std::vector<std::string> labels = {});

/// Closed star St^k(v): all simplices within k hops of v, as a subcomplex.
///
/// vertices(St^k(v)) is exactly the set of vertices at graph distance <= k.
/// Boundary vertices: for k = 1, every vertex of the star except v; for
/// k >= 2, star vertices u with some maximal simplex of the parent containing
/// u outside the star.
struct Star {
  int center = -1;
  int radius = 1;
  std::vector<int> vertices;                // sorted
  std::vector<Simplex> maximal_simplices;   // maximal simplices of the star
  std::vector<int> boundary_vertices;       // sorted
};

Star closed_star(const SimplicialComplex& c, int v, int k = 1);

enum class MetricMode { Length, Squared };

struct EdgeValue {
  int u = 0;
  int v = 0;
  double value = 0.0;
};

/// s(x) = x|x|: the square that remembers its sign.
inline double signed_square(double x) { return x * (x < 0 ? -x : x); }

/// Inverse of signed_square.
double signed_sqrt(double s);

/// Indefinite metric on the edges of one complex, held canonically in
/// squared form: squared[e] = s(g(e)). The input mode is retained so
/// documents can round-trip.
struct IndefiniteMetric {
  MetricMode input_mode = MetricMode::Squared;
  MetricVector squared;  // length |E|

  double max_abs() const { return squared.size() ? squared.cwiseAbs().maxCoeff() : 0.0; }
};

/// Errors: MissingEdgeValue if some edge of c has no entry, UnknownEdge for a
/// pair that is not an edge, ParseError for a duplicated pair,
/// NonFiniteValue.
IndefiniteMetric metric_from_lengths(const SimplicialComplex& c,
                                     const std::vector<EdgeValue>& lengths);
IndefiniteMetric metric_from_squares(const SimplicialComplex& c,
                                     const std::vector<EdgeValue>& squares);

/// Trusted fast path: `squared` already indexed by edge position.
IndefiniteMetric metric_from_squared_vector(const SimplicialComplex& c,
                                            MetricVector squared,
                                            MetricMode input_mode = MetricMode::Squared);

/// Binomial coefficient with overflow clamp to max(); used for enumeration
/// guards.
unsigned long long binomial(int n, int k);

}  // namespace indef
