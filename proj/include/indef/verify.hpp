#pragma once

#include <Eigen/Core>

#include "indef/complex.hpp"
#include "indef/minkowski.hpp"

namespace indef {

struct VerifyOptions {
  double tol = 1e-8;       // residual acceptance, relative to max(1, |g2|_inf)
  double eps_geo = 1e-9;   // geometric predicates
  double eps_rank = 1e-9;  // affine independence
  /// Also require k-general position of the vertex images (k = 2n+1) as an
  /// embedding certificate; exact check, only allowed for small vertex
  /// counts.
  bool certify_general_position = false;
};

struct IsometryReport {
  bool ok = true;
  double max_residual = 0.0;  // |phi(f) - g2|_inf, recomputed from coordinates
  int worst_edge = -1;
  double scale = 1.0;  // max(1, |g2|_inf), the residual's denominator
};

/// Recomputes phi from raw coordinates and compares with the target metric.
IsometryReport verify_isometry(const SimplicialMap& f, const IndefiniteMetric& m,
                               double tol = 1e-8);

struct PairWitness {
  int simplex_a = -1;   // indices into maximal_simplices
  int simplex_b = -1;
  int star_vertex = -1; // set by the local check
};

struct CheckResult {
  bool ok = true;
  PairWitness witness;
  /// Worst "outside mass": how much barycentric weight an intersection point
  /// can put on non-shared vertices (0 for a clean embedding).
  double worst_mass = 0.0;
  /// Set when certify_general_position was requested and the vertex images
  /// are in (2n+1)-general position. Sufficient for an embedding, never
  /// necessary; purely extra evidence.
  bool gp_certified = false;
};

/// Every maximal simplex maps to a nondegenerate affine simplex: the edge
/// vectors from its first vertex are linearly independent. Affine geometry
/// here is ordinary Euclidean geometry of R^(p+q); the sign vector plays no
/// role in point-set injectivity.
CheckResult verify_immersion(const SimplicialMap& f, double eps_rank = 1e-9);

/// Injectivity of the induced map of polyhedra: nondegeneracy plus, for every
/// pair of maximal simplices, image intersection exactly equal to the image
/// of the shared face. The pair test maximizes total barycentric mass on
/// non-shared vertices over all ways to write one point in both hulls; a
/// positive optimum exhibits an intersection point outside the shared face
/// (checking maximal pairs covers face pairs, since barycentric coordinates
/// in a nondegenerate simplex are unique).
CheckResult verify_simplicial_embedding(const SimplicialMap& f, const VerifyOptions& opts = {});

/// The same pair test restricted to the simplices of each closed vertex
/// star: injectivity of f on every St(v).
CheckResult verify_local_embedding(const SimplicialMap& f, const VerifyOptions& opts = {});

struct VerificationReport {
  IsometryReport isometry;
  CheckResult embedding;
  CheckResult local_embedding;
  CheckResult immersion;
};

/// Runs everything. Implications embedding => local embedding => immersion
/// hold for the exact predicates and are preserved by the shared tolerances.
VerificationReport verify_all(const SimplicialMap& f, const IndefiniteMetric& m,
                              const VerifyOptions& opts = {});

}  // namespace indef
