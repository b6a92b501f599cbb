#include "indef/embed_greene.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace indef {

namespace {

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

bool mode_check(const SimplicialMap& f, EmbedMode mode, const GreeneOptions& opts) {
  VerifyOptions vo;
  vo.eps_rank = opts.eps_rank;
  vo.eps_geo = opts.eps_geo;
  switch (mode) {
    case EmbedMode::Embedding: return verify_simplicial_embedding(f, vo).ok;
    case EmbedMode::LocalEmbedding: return verify_local_embedding(f, vo).ok;
    case EmbedMode::Immersion: return verify_immersion(f, opts.eps_rank).ok;
  }
  return false;
}

}  // namespace

const char* embed_mode_name(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::Embedding: return "embedding";
    case EmbedMode::LocalEmbedding: return "local";
    case EmbedMode::Immersion: return "immersion";
  }
  return "?";
}

int greene_target_q(const SimplicialComplex& c, EmbedMode mode) {
  const int n = std::max(c.dimension, 0);
  const int d = c.max_degree();
  switch (mode) {
    case EmbedMode::Embedding: return std::max(d, 2 * n + 1);
    case EmbedMode::LocalEmbedding: return std::max(d, 2 * n);
    case EmbedMode::Immersion: return d;
  }
  return 0;
}

SimplicialMap free_euclidean_start(ComplexPtr c, int q, Rng& rng, const GreeneOptions& opts,
                                   int* retries_out) {
  for (int attempt = 0; attempt < opts.max_start_retries; ++attempt) {
    SimplicialMap f = random_map(c, Signature::euclidean(q), rng, opts.box);
    if (!edge_independence(f, opts.eps_rank).all) continue;
    if (!mode_check(f, opts.mode, opts)) continue;
    if (retries_out) *retries_out = attempt;
    return f;
  }
  fail(ErrorCode::RetriesExhausted,
       "no free start map in " + std::to_string(opts.max_start_retries) + " draws");
}

GreeneResult solve_greene(ComplexPtr c, const IndefiniteMetric& m, const GreeneOptions& opts) {
  const SimplicialComplex& cx = *c;
  if (m.squared.size() != cx.edge_count())
    fail(ErrorCode::LengthMismatch, "metric does not match complex");

  GreeneResult res;
  res.q = opts.force_q > 0 ? opts.force_q : greene_target_q(cx, opts.mode);

  Rng rng(opts.seed);
  SimplicialMap f = free_euclidean_start(c, res.q, rng, opts, &res.start_retries);

  SimplicialMap start;
  start.complex = c;
  start.signature = Signature::split(res.q);
  start.coords.resize(2 * res.q, cx.vertex_count);
  start.coords.topRows(res.q) = f.coords;
  start.coords.bottomRows(res.q) = f.coords;  // phi(f + f) = 0 in R^q_q

  const double g2_scale = std::max(1.0, m.max_abs());
  const double outer_tol = opts.tol * g2_scale;
  double lambda = std::max(1.0, std::sqrt(m.max_abs()));

  const int N = 2 * res.q;
  for (int doubling = 0; doubling <= opts.max_lambda_doublings; ++doubling) {
    if (doubling > 0) lambda *= 2.0;
    res.lambda_doublings = doubling;
    res.lambda_final = lambda;

    SimplicialMap h = start;
    Eigen::VectorXd target = m.squared / (lambda * lambda);
    const double inner_tol = outer_tol / (lambda * lambda);

    Eigen::VectorXd r = phi(h) - target;
    bool converged = inf_norm(r) <= inner_tol;
    double best = inf_norm(r);
    int since_halved = 0;

    for (int iter = 0; iter < opts.max_newton_iters && !converged; ++iter) {
      Eigen::SparseMatrix<double> J = phi_jacobian(h);
      Eigen::MatrixXd A = Eigen::MatrixXd(J * J.transpose());
      Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
      if (ldlt.info() != Eigen::Success) break;
      Eigen::VectorXd y = ldlt.solve(-r);
      Eigen::VectorXd delta = J.transpose() * y;
      if (!delta.allFinite()) break;

      // backtracking on |r|^2
      double rn2 = r.squaredNorm();
      double s = 1.0;
      bool stepped = false;
      Eigen::VectorXd r_trial;
      SimplicialMap trial = h;
      while (s >= 0x1.0p-40) {
        trial.coords = h.coords;
        for (int v = 0; v < cx.vertex_count; ++v)
          trial.coords.col(v) += s * delta.segment(static_cast<long>(v) * N, N);
        r_trial = phi(trial) - target;
        if (r_trial.squaredNorm() <= (1.0 - 1e-4 * s) * rn2) {
          stepped = true;
          break;
        }
        s *= 0.5;
      }
      if (!stepped) break;
      if (!edge_independence(trial, opts.eps_rank).all) break;

      h = std::move(trial);
      r = std::move(r_trial);
      ++res.newton_iters;

      double rn = inf_norm(r);
      converged = rn <= inner_tol;
      // stagnation rule: the residual must keep halving or lambda doubles
      if (rn <= 0.5 * best) {
        best = rn;
        since_halved = 0;
      } else if (++since_halved > 25) {
        break;
      }
    }

    if (!converged) continue;

    SimplicialMap candidate = scale(h, lambda);
    double residual = inf_norm(phi(candidate) - m.squared);
    if (residual > outer_tol) continue;
    if (!mode_check(candidate, opts.mode, opts)) continue;

    res.map = std::move(candidate);
    res.residual = residual;
    return res;
  }

  fail(ErrorCode::SolverDiverged,
       "no convergence after " + std::to_string(opts.max_lambda_doublings) +
           " lambda doublings");
}

}  // namespace indef
