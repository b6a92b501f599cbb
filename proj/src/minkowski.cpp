#include "indef/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace indef {

int Signature::p() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), 1));
}

int Signature::q() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

Eigen::VectorXd Signature::sign_vector() const {
  Eigen::VectorXd s(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) s[i] = signs[i];
  return s;
}

Signature Signature::euclidean(int n) {
  if (n < 0) fail(ErrorCode::IndexOutOfRange, "negative dimension");
  Signature s;
  s.signs.assign(n, 1);
  return s;
}

Signature Signature::split(int q) {
  if (q < 0) fail(ErrorCode::IndexOutOfRange, "negative dimension");
  Signature s;
  s.signs.assign(q, 1);
  s.signs.insert(s.signs.end(), q, -1);
  return s;
}

Signature Signature::doubled(const Signature& s) { return concat(s, s); }

Signature Signature::concat(const Signature& a, const Signature& b) {
  Signature s = a;
  s.signs.insert(s.signs.end(), b.signs.begin(), b.signs.end());
  return s;
}

double inner(const Signature& sig, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != sig.dim() || b.size() != sig.dim())
    fail(ErrorCode::LengthMismatch, "vector length differs from signature");
  double acc = 0;
  for (int k = 0; k < sig.dim(); ++k) acc += sig.signs[k] * a[k] * b[k];
  return acc;
}

MetricVector phi(const SimplicialMap& f) {
  const SimplicialComplex& c = *f.complex;
  MetricVector out(c.edge_count());
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [i, j] = c.edges[e];
    // separate accumulators per sign: a map whose minus block mirrors its
    // plus block then cancels to an exact zero, and appended zero blocks
    // never perturb the value
    double plus = 0.0, minus = 0.0;
    for (int k = 0; k < f.dim(); ++k) {
      const double d = f.coords(k, i) - f.coords(k, j);
      if (f.signature.signs[k] > 0)
        plus += d * d;
      else
        minus += d * d;
    }
    out[e] = plus - minus;
  }
  return out;
}

Eigen::SparseMatrix<double> phi_jacobian(const SimplicialMap& f) {
  const SimplicialComplex& c = *f.complex;
  const int N = f.dim();
  Eigen::SparseMatrix<double> J(c.edge_count(), static_cast<long>(N) * c.vertex_count);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(c.edge_count()) * 2 * N);
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [i, j] = c.edges[e];
    for (int k = 0; k < N; ++k) {
      double val = 2.0 * f.signature.signs[k] * (f.coords(k, i) - f.coords(k, j));
      if (val != 0.0) {
        trip.emplace_back(e, i * N + k, val);
        trip.emplace_back(e, j * N + k, -val);
      }
    }
  }
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

SimplicialMap concat(const SimplicialMap& a, const SimplicialMap& b) {
  if (a.complex != b.complex)
    fail(ErrorCode::ComplexMismatch, "concat of maps over different complexes");
  SimplicialMap out;
  out.complex = a.complex;
  out.signature = Signature::concat(a.signature, b.signature);
  out.coords.resize(a.dim() + b.dim(), a.coords.cols());
  out.coords.topRows(a.dim()) = a.coords;
  out.coords.bottomRows(b.dim()) = b.coords;
  return out;
}

SimplicialMap scale(const SimplicialMap& f, double lambda) {
  if (!std::isfinite(lambda)) fail(ErrorCode::NonFiniteScalar, "scale factor not finite");
  SimplicialMap out = f;
  out.coords *= lambda;
  return out;
}

SimplicialMap random_map(ComplexPtr c, Signature sig, Rng& rng, double box) {
  if (!std::isfinite(box) || box < 0) fail(ErrorCode::NonFiniteScalar, "box must be finite and >= 0");
  SimplicialMap f;
  f.complex = std::move(c);
  f.coords.resize(sig.dim(), f.complex->vertex_count);
  f.signature = std::move(sig);
  for (int v = 0; v < f.complex->vertex_count; ++v)
    for (int k = 0; k < f.dim(); ++k) f.coords(k, v) = rng.uniform(-box, box);
  return f;
}

EdgeIndependence edge_independence(const SimplicialMap& f, double eps_rank) {
  const SimplicialComplex& c = *f.complex;
  EdgeIndependence rep;
  rep.vertex_ok.assign(c.vertex_count, 1);

  std::vector<std::vector<int>> adjacency(c.vertex_count);
  for (auto [u, v] : c.edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  for (int v = 0; v < c.vertex_count; ++v) {
    const auto& nbrs = adjacency[v];
    if (nbrs.empty()) continue;
    Eigen::MatrixXd D(f.dim(), nbrs.size());
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      D.col(k) = f.coords.col(nbrs[k]) - f.coords.col(v);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
    const auto& sv = svd.singularValues();
    double hi = sv.size() ? sv[0] : 0.0;
    // fewer rows than columns can never give full column rank
    double lo = D.rows() < D.cols() ? 0.0 : (sv.size() ? sv[sv.size() - 1] : 0.0);
    double ratio = hi > 0 ? lo / hi : 0.0;
    bool ok = hi > 0 && lo > eps_rank * hi;
    if (!ok) rep.vertex_ok[v] = 0;
    rep.all = rep.all && ok;
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.worst_vertex = v;
    }
  }
  return rep;
}

bool general_position(const Eigen::MatrixXd& points, int k, double eps_rank) {
  if (k < 1) fail(ErrorCode::IndexOutOfRange, "general position needs k >= 1");
  const int n = static_cast<int>(points.cols());
  const int take = std::min(k + 1, n);
  if (take <= 1) return true;
  if (binomial(n, k + 1) > 1000000ULL)
    fail(ErrorCode::CombinatorialBlowup, "too many point subsets to enumerate");

  std::vector<int> idx(take);
  for (int i = 0; i < take; ++i) idx[i] = i;

  while (true) {
    Eigen::MatrixXd D(points.rows(), take - 1);
    for (int i = 1; i < take; ++i) D.col(i - 1) = points.col(idx[i]) - points.col(idx[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
    const auto& sv = svd.singularValues();
    double hi = sv[0], lo = D.rows() < D.cols() ? 0.0 : sv[sv.size() - 1];
    if (!(hi > 0) || lo <= eps_rank * hi) return false;

    int pos = take - 1;
    while (pos >= 0 && idx[pos] == n - take + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
  }
  return true;
}

}  // namespace indef
