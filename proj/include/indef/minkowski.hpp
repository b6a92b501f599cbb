#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "indef/complex.hpp"
#include "indef/rng.hpp"

namespace indef {

/// Sign pattern of a Minkowski bilinear form on R^(p+q). Signs may sit in
/// any fixed coordinate positions; p counts the +1 entries, q the -1.
struct Signature {
  std::vector<int> signs;

  int dim() const { return static_cast<int>(signs.size()); }
  int p() const;
  int q() const;

  Eigen::VectorXd sign_vector() const;

  static Signature euclidean(int n);
  /// (+^q, -^q): the split form R^q_q.
  static Signature split(int q);
  /// Two copies of s back to back, as for R^{2q}_{2q} = R^q_q x R^q_q.
  static Signature doubled(const Signature& s);
  /// a followed by b.
  static Signature concat(const Signature& a, const Signature& b);
};

/// <a,b> = sum_k sign_k a_k b_k.
double inner(const Signature& sig, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Vertex map into a Minkowski space: one coordinate column per vertex.
struct SimplicialMap {
  ComplexPtr complex;
  Signature signature;
  Eigen::MatrixXd coords;  // signature.dim() rows, vertex_count cols

  int dim() const { return signature.dim(); }
};

/// Squared induced metric: phi(f)(e_ij) = <f(v_i)-f(v_j), f(v_i)-f(v_j)>.
/// Additive over coordinate concatenation, quadratic under scaling.
MetricVector phi(const SimplicialMap& f);

/// Derivative of phi in the stacked coordinates x, laid out vertex-major
/// (column v*dim+k is coordinate k of vertex v). Row e_ij carries
/// +2*sign.*(f(v_i)-f(v_j)) in block i and its negation in block j; all other
/// blocks are zero, so products J*J^T only touch pairs of edges sharing a
/// vertex.
Eigen::SparseMatrix<double> phi_jacobian(const SimplicialMap& f);

/// Coordinates and sign vectors concatenated. Error: ComplexMismatch.
SimplicialMap concat(const SimplicialMap& a, const SimplicialMap& b);

/// Error: NonFiniteScalar.
SimplicialMap scale(const SimplicialMap& f, double lambda);

/// Coordinates drawn uniformly from [-box, box], vertex-major order. box = 0
/// gives the zero map.
SimplicialMap random_map(ComplexPtr c, Signature sig, Rng& rng, double box = 1.0);

/// Per-vertex linear independence of the incident edge direction vectors
/// {f(u)-f(v) : uv an edge}; this is what makes the phi Jacobian have full
/// row rank. A vertex passes when the smallest singular value of its edge
/// matrix exceeds eps_rank times the largest (no incident edges passes
/// trivially; a zero-length edge vector fails).
struct EdgeIndependence {
  bool all = true;
  std::vector<char> vertex_ok;
  double min_ratio = 1.0;  // worst sigma_min/sigma_max over vertices
  int worst_vertex = -1;
};

EdgeIndependence edge_independence(const SimplicialMap& f, double eps_rank = 1e-9);

/// Exact k-general-position test: every subset of at most k+1 of the given
/// points is affinely independent. Affine independence is hereditary, so only
/// subsets of size min(k+1, count) are enumerated; the test refuses to run
/// when C(count, k+1) > 10^6 (CombinatorialBlowup).
bool general_position(const Eigen::MatrixXd& points, int k, double eps_rank = 1e-9);

}  // namespace indef
