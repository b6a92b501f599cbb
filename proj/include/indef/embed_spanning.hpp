#pragma once

#include <cstdint>
#include <vector>

#include "indef/complex.hpp"
#include "indef/minkowski.hpp"

namespace indef {

/// |E| one-dimensional vertex maps whose induced squared metrics span
/// Met(X). Column k of `induced` is phi of the k-th map.
struct SpanningFamily {
  std::vector<Eigen::VectorXd> vertex_values;  // each of length |V|
  Eigen::MatrixXd induced;                     // |E| x |E|
  int draws = 0;
};

/// Greedy rank accumulation over random one-dimensional maps: a draw is kept
/// iff it grows the span of the induced metrics. Always terminates in
/// principle (sum c_e (x_i - x_j)^2 vanishing identically forces c = 0, so
/// the induced metrics of one-dimensional maps span all of Met(X)).
/// Errors: EmptyInput when |E| = 0, RetriesExhausted.
SpanningFamily spanning_family(ComplexPtr c, Rng& rng, double rank_tol = 1e-8,
                               int max_draws = 0 /* 0: 100 per edge */);

struct SpanningOptions {
  std::uint64_t seed = 0;
  double tol = 1e-8;  // relative residual target
  double cond_threshold = 1e12;  // family redrawn above this
  int max_family_retries = 20;
  int max_start_retries = 100;
  double box = 1.0;
  double eps_geo = 1e-9;
  double eps_rank = 1e-9;
  /// Signs for the base block (size 2n+1). Empty: all +1. The isometry only
  /// constrains the correction blocks, so the base block's signs are free.
  std::vector<int> base_signs;
  /// Drop correction blocks whose coefficient is exactly zero and report the
  /// reduced signature. Kept by default for signature fidelity.
  bool drop_zero_blocks = false;
};

struct SpanningResult {
  SimplicialMap map;       // f + sqrt(a_k) h_k blocks
  SimplicialMap base_map;  // f, an embedding into E^{2n+1}
  Eigen::VectorXd alphas;  // solution of g2 - phi(f) = sum a_k phi(h_k)
  double residual = 0.0;
  double cond = 0.0;       // condition number of the family matrix
  int family_draws = 0;
  int p = 0;
  int q = 0;
};

/// Writes the defect g2 - phi(f) in the family basis and appends one scaled
/// one-dimensional block per family member: + signs for a_k >= 0 (scaled by
/// sqrt(a_k)), - signs for a_k < 0 (scaled by sqrt(-a_k)). The result is an
/// embedding because its base block already is; p + q = (2n+1) + |E|.
/// Errors: SingularFamily, RetriesExhausted, SolverDiverged.
SpanningResult solve_spanning(ComplexPtr c, const IndefiniteMetric& m,
                              const SpanningOptions& opts = {});

}  // namespace indef
