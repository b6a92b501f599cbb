#pragma once

#include <vector>

#include <Eigen/Core>

#include "indef/complex.hpp"

namespace indef {

/// Bilinear form of one simplex in barycentric difference coordinates.
/// For sorted simplex (v_0 < ... < v_k) with base v_0:
///   matrix(i,j) = (g2(v_0 v_i) + g2(v_0 v_j) - g2(v_i v_j)) / 2,  i != j,
///   matrix(i,i) = g2(v_0 v_i).
/// Any isometric embedding h must satisfy
/// <h(v_i)-h(v_0), h(v_j)-h(v_0)> = matrix(i,j).
struct GramForm {
  Simplex simplex;         // sorted; base vertex is simplex[0]
  Eigen::MatrixXd matrix;  // k x k
};

/// Error: UnknownSimplex when the vertex set is not a simplex of c.
GramForm gram_form(const SimplicialComplex& c, const IndefiniteMetric& m, const Simplex& simplex);

/// Squared displacement between the points with barycentric coordinates a and
/// b (each of length k+1, entries summing to 1 within 1e-12, else
/// BadBarycentric). Defined within one closed simplex only.
double segment_energy(const GramForm& g, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct Inertia {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;

  bool operator==(const Inertia&) const = default;
};

/// Eigenvalue signs of a symmetric matrix; |lambda| <= tol * max(1, spectral
/// radius) counts as zero.
Inertia inertia(const Eigen::MatrixXd& sym, double tol = 1e-9);
Inertia inertia(const GramForm& g, double tol = 1e-9);

enum class MetricClass { Euclidean, Minkowski, Degenerate };

const char* metric_class_name(MetricClass k);

struct SimplexInertia {
  Simplex simplex;
  Inertia inertia;
};

struct Classification {
  MetricClass kind = MetricClass::Degenerate;
  /// Smallest relative eigenvalue magnitude across every form inspected; how
  /// close the input sits to a degeneracy.
  double margin = 0.0;
  std::vector<SimplexInertia> table;  // one row per maximal simplex of dim >= 1
};

/// Euclidean: the form of every maximal simplex is positive definite (faces
/// of a positive definite form are positive definite, so maximal simplices
/// suffice). Minkowski: the form of every face of dimension >= 1 is
/// non-degenerate. Otherwise Degenerate.
Classification classify(const SimplicialComplex& c, const IndefiniteMetric& m, double tol = 1e-9);

struct Obstruction {
  int p_min = 0;
  int q_min = 0;
  Simplex witness_plus;   // clique attaining p_min
  Simplex witness_minus;  // clique attaining q_min
  long long forms_checked = 0;
};

/// Lower bounds on (p, q) for any isometric simplicial embedding into R^p_q:
/// p_min = max n_plus, q_min = max n_minus over the Gram forms of cliques of
/// the edge graph (any embedding restricted to a clique's point set realizes
/// its form, and a form with n_plus positive directions needs p >= n_plus).
/// Cliques are enumerated up to clique_cap + 1 vertices; eigenvalue
/// interlacing lets the search evaluate only cliques that are maximal within
/// the cap. With cliques_beyond_simplices = false only the simplices of c are
/// inspected. Errors: CliqueCapTooSmall when clique_cap < dimension + 1.
Obstruction obstruction(const SimplicialComplex& c, const IndefiniteMetric& m,
                        int clique_cap = 12, bool cliques_beyond_simplices = true,
                        double tol = 1e-9);

}  // namespace indef
