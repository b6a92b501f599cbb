#pragma once

#include <cstdint>

#include "indef/complex.hpp"
#include "indef/minkowski.hpp"
#include "indef/verify.hpp"

namespace indef {

enum class EmbedMode { Embedding, LocalEmbedding, Immersion };

const char* embed_mode_name(EmbedMode mode);

struct GreeneOptions {
  std::uint64_t seed = 0;
  EmbedMode mode = EmbedMode::Embedding;
  double tol = 1e-10;  // relative residual target
  int max_newton_iters = 200;
  int max_lambda_doublings = 60;
  int max_start_retries = 100;
  double box = 1.0;      // start coordinates drawn from [-box, box]
  double eps_rank = 1e-9;
  double eps_geo = 1e-9;
  /// 0 derives the target dimension from the mode; a positive value pins it
  /// (the gluing solver pins every star to one shared q).
  int force_q = 0;
};

struct GreeneResult {
  SimplicialMap map;  // into R^q_q, signs (+^q, -^q)
  double residual = 0.0;
  double lambda_final = 1.0;
  int newton_iters = 0;
  int lambda_doublings = 0;
  int start_retries = 0;
  int q = 0;
};

/// Half-dimension of the split target: max{d, 2n+1} for embeddings,
/// max{d, 2n} for local embeddings, d for immersions.
int greene_target_q(const SimplicialComplex& c, EmbedMode mode);

/// Random map into Euclidean q-space, resampled until the incident-edge
/// directions at every vertex are independent and the mode's geometric
/// property holds. Error: RetriesExhausted.
SimplicialMap free_euclidean_start(ComplexPtr c, int q, Rng& rng, const GreeneOptions& opts,
                                   int* retries_out = nullptr);

/// Deforms the doubled start f + f (which induces the zero metric in R^q_q)
/// onto the target metric scaled into its convergence basin: damped
/// minimum-norm Newton on phi(x) = g2 / lambda^2, answer lambda * x. lambda
/// starts at max(1, sqrt(|g2|_inf)) and doubles whenever an attempt stalls,
/// loses edge independence, or fails the final geometric verification.
/// Error: SolverDiverged.
GreeneResult solve_greene(ComplexPtr c, const IndefiniteMetric& m,
                          const GreeneOptions& opts = {});

}  // namespace indef
