#pragma once

#include <cstdint>
#include <vector>

#include "indef/complex.hpp"
#include "indef/embed_greene.hpp"
#include "indef/minkowski.hpp"

namespace indef {

/// Coloring of the vertices such that two vertices of the same class are at
/// graph distance >= 4. class_count is d^3 - d^2 + d + 1 for max degree d
/// (the size of a distance-3 ball, so the greedy pass below never runs out),
/// including any classes the greedy pass leaves empty.
struct Partition {
  std::vector<int> vertex_class;
  int class_count = 0;
};

/// First-fit over vertices in index order: each vertex takes the lowest
/// class unused within its distance-3 ball.
Partition partition_vertices(ComplexPtr c);

/// The closed star of a vertex, compressed to a complex of its own: the
/// subcomplex induced on the star's vertices U, plus one apex vertex
/// standing in for everything outside. A maximal simplex of the ambient
/// complex meeting both U and its complement survives as (its U part + the
/// apex); in particular the apex spans an edge with exactly the U vertices
/// that have a neighbor outside U. Collapsing the outside to the apex this
/// way keeps the map from the ambient complex simplicial, and neither the
/// dimension nor the max degree grows. When the star already swallows its
/// whole component there is no apex (apex_local = -1).
struct StarComplex {
  ComplexPtr complex;
  std::vector<int> vertices;  // global ids; local id = position; apex absent
  int center_local = 0;
  int apex_local = -1;
  /// Half the center's squared edge values on edges at the center, zero on
  /// every other edge. Summing the two halves an edge picks up from the
  /// stars of its endpoints recovers the metric.
  IndefiniteMetric metric;
};

StarComplex build_star_complex(ComplexPtr c, const IndefiniteMetric& m, int v);

/// Spreads f across a doubled signature with weights sqrt(1/mu) and
/// sqrt(1 - 1/mu), mu >= 1. Preserves phi for every mu, and images for
/// distinct mu share only the origin.
SimplicialMap iota(const SimplicialMap& f, int mu);

struct GluingOptions {
  std::uint64_t seed = 0;
  EmbedMode mode = EmbedMode::Embedding;
  double tol = 1e-8;  // relative; split evenly across the classes
  /// Knobs for the per-star solves. seed, mode, tol and force_q are
  /// overwritten per star.
  GreeneOptions star;
};

struct StarSolve {
  int center = -1;
  int cls = -1;
  double residual = 0.0;
  int newton_iters = 0;
  int lambda_doublings = 0;
};

struct GluingResult {
  SimplicialMap map;
  Partition partition;
  std::vector<StarSolve> stars;
  double residual = 0.0;
  int star_q = 0;      // uniform target for every star solve
  int block_rows = 0;  // rows per class block (4q embedding, 2q otherwise)
  int p = 0;
  int q = 0;
};

/// One damped-Newton solve per vertex star against the halved star metric,
/// then one coordinate block per class: a vertex covered by its class's
/// star contributes that star's image there (pushed through iota in
/// embedding mode), anything else sits at the origin. Stars are translated
/// so the apex lands exactly on the origin, which makes the blocks of edges
/// leaving a star agree with the apex edges already priced into the star
/// metric; apexless stars are shifted off the origin instead. Each edge
/// then collects half its squared value from each endpoint's class and
/// noise at most tol/class_count from the rest.
GluingResult solve_gluing(ComplexPtr c, const IndefiniteMetric& m,
                          const GluingOptions& opts = {});

}  // namespace indef
