#include "indef/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace indef {

namespace {

// Rank of the edge-vector matrix from the first vertex; a simplex image is
// nondegenerate iff this is full.
bool simplex_nondegenerate(const Eigen::MatrixXd& coords, const Simplex& s, double eps_rank) {
  const int k = static_cast<int>(s.size()) - 1;
  if (k == 0) return true;
  Eigen::MatrixXd D(coords.rows(), k);
  for (int i = 1; i <= k; ++i) D.col(i - 1) = coords.col(s[i]) - coords.col(s[0]);
  if (D.rows() < D.cols()) return false;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
  const auto& sv = svd.singularValues();
  return sv[0] > 0 && sv[sv.size() - 1] > eps_rank * sv[0];
}

// Decides whether the images of two closed simplices meet in exactly the
// image of their shared face. Any intersection point is a pair (a, b) of
// barycentric weights with equal weighted sums; over the polytope of such
// pairs the total weight on non-shared vertices is maximized. The polytope
// is bounded with at most |A|+|B| variables, so the exact optimum is found
// by enumerating basic solutions. Returns the optimum (0 when the hulls
// are disjoint); the pair is proper iff it stays at 0.
double pair_outside_mass(const Eigen::MatrixXd& coords, const Simplex& A, const Simplex& B,
                         double eps) {
  const int na = static_cast<int>(A.size());
  const int nb = static_cast<int>(B.size());
  const int m = na + nb;
  const int N = static_cast<int>(coords.rows());

  std::vector<char> outside(m, 1);
  for (int i = 0; i < na; ++i)
    if (std::binary_search(B.begin(), B.end(), A[i])) outside[i] = 0;
  for (int j = 0; j < nb; ++j)
    if (std::binary_search(A.begin(), A.end(), B[j])) outside[na + j] = 0;

  Eigen::MatrixXd P(N, m);
  for (int i = 0; i < na; ++i) P.col(i) = coords.col(A[i]);
  for (int j = 0; j < nb; ++j) P.col(na + j) = coords.col(B[j]);
  Eigen::VectorXd center = P.rowwise().mean();
  P.colwise() -= center;
  double scale = P.size() ? P.cwiseAbs().maxCoeff() : 0.0;
  if (scale > 0) P /= scale;

  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(N + 2, m);
  for (int i = 0; i < na; ++i) {
    E.col(i).head(N) = P.col(i);
    E(N, i) = 1.0;
  }
  for (int j = 0; j < nb; ++j) {
    E.col(na + j).head(N) = -P.col(na + j);
    E(N + 1, na + j) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 2);
  rhs[N] = rhs[N + 1] = 1.0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-11 * sv[0]) ++r;

  Eigen::VectorXd rr = svd.matrixU().leftCols(r).transpose() * rhs;
  double inconsistency =
      (rhs - svd.matrixU().leftCols(r) * rr).cwiseAbs().maxCoeff();
  if (inconsistency > eps) return 0.0;  // affine spans miss each other: disjoint hulls

  Eigen::MatrixXd R =
      sv.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();  // r x m

  double best = 0.0;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    Eigen::MatrixXd RS(r, r);
    for (int i = 0; i < r; ++i) RS.col(i) = R.col(idx[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(RS);
    lu.setThreshold(1e-10);
    if (lu.rank() == r) {
      Eigen::VectorXd zs = lu.solve(rr);
      if ((RS * zs - rr).cwiseAbs().maxCoeff() <= eps) {
        bool nonneg = true;
        for (int i = 0; i < r && nonneg; ++i) nonneg = zs[i] >= -eps;
        if (nonneg) {
          double mass = 0.0;
          for (int i = 0; i < r; ++i)
            if (outside[idx[i]] && zs[i] > 0) mass += zs[i];
          best = std::max(best, mass);
        }
      }
    }
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == m - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

}  // namespace

IsometryReport verify_isometry(const SimplicialMap& f, const IndefiniteMetric& m, double tol) {
  if (m.squared.size() != f.complex->edge_count())
    fail(ErrorCode::LengthMismatch, "metric does not match the map's complex");
  IsometryReport rep;
  rep.scale = std::max(1.0, m.max_abs());
  MetricVector induced = phi(f);
  for (int e = 0; e < induced.size(); ++e) {
    double res = std::abs(induced[e] - m.squared[e]);
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.worst_edge = e;
    }
  }
  rep.ok = rep.max_residual <= tol * rep.scale;
  return rep;
}

CheckResult verify_immersion(const SimplicialMap& f, double eps_rank) {
  CheckResult out;
  const auto& maximal = f.complex->maximal_simplices;
  for (std::size_t s = 0; s < maximal.size(); ++s) {
    if (!simplex_nondegenerate(f.coords, maximal[s], eps_rank)) {
      out.ok = false;
      out.witness.simplex_a = static_cast<int>(s);
      return out;
    }
  }
  return out;
}

CheckResult verify_simplicial_embedding(const SimplicialMap& f, const VerifyOptions& opts) {
  CheckResult out = verify_immersion(f, opts.eps_rank);
  if (!out.ok) return out;

  const auto& maximal = f.complex->maximal_simplices;
  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      double mass = pair_outside_mass(f.coords, maximal[a], maximal[b], opts.eps_geo);
      if (mass > out.worst_mass) {
        out.worst_mass = mass;
        out.witness.simplex_a = static_cast<int>(a);
        out.witness.simplex_b = static_cast<int>(b);
      }
    }
  }
  out.ok = out.worst_mass <= opts.eps_geo;
  if (out.ok) out.witness = PairWitness{};
  if (opts.certify_general_position && f.complex->dimension >= 0)
    out.gp_certified =
        general_position(f.coords, 2 * f.complex->dimension + 1, opts.eps_rank);
  return out;
}

CheckResult verify_local_embedding(const SimplicialMap& f, const VerifyOptions& opts) {
  CheckResult out = verify_immersion(f, opts.eps_rank);
  if (!out.ok) {
    // any star containing the degenerate simplex exhibits the failure
    out.witness.star_vertex = f.complex->maximal_simplices[out.witness.simplex_a][0];
    return out;
  }

  const auto& maximal = f.complex->maximal_simplices;
  std::map<std::pair<int, int>, double> cache;
  for (int v = 0; v < f.complex->vertex_count; ++v) {
    std::vector<int> incident;
    for (std::size_t s = 0; s < maximal.size(); ++s)
      if (std::binary_search(maximal[s].begin(), maximal[s].end(), v))
        incident.push_back(static_cast<int>(s));
    for (std::size_t i = 0; i < incident.size(); ++i) {
      for (std::size_t j = i + 1; j < incident.size(); ++j) {
        auto key = std::make_pair(incident[i], incident[j]);
        auto it = cache.find(key);
        if (it == cache.end())
          it = cache.emplace(key, pair_outside_mass(f.coords, maximal[key.first],
                                                    maximal[key.second], opts.eps_geo))
                   .first;
        if (it->second > out.worst_mass) {
          out.worst_mass = it->second;
          out.witness.simplex_a = key.first;
          out.witness.simplex_b = key.second;
          out.witness.star_vertex = v;
        }
      }
    }
  }
  out.ok = out.worst_mass <= opts.eps_geo;
  if (out.ok) out.witness = PairWitness{};
  return out;
}

VerificationReport verify_all(const SimplicialMap& f, const IndefiniteMetric& m,
                              const VerifyOptions& opts) {
  VerificationReport rep;
  rep.isometry = verify_isometry(f, m, opts.tol);
  rep.immersion = verify_immersion(f, opts.eps_rank);
  rep.local_embedding = verify_local_embedding(f, opts);
  rep.embedding = verify_simplicial_embedding(f, opts);
  return rep;
}

}  // namespace indef
