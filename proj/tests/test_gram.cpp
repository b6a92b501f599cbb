#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "helpers.hpp"
#include "indef/gram.hpp"

using namespace indef;
using testutil::error_code_of;

TEST_CASE("gram form of the sharp triangle") {
  auto c = build_complex(3, {{0, 1, 2}});
  auto m = testutil::sharp_triangle_metric(*c);
  GramForm g = gram_form(*c, m, {0, 1, 2});
  REQUIRE(g.matrix.rows() == 2);
  CHECK(g.matrix(0, 0) == 1.0);
  CHECK(g.matrix(1, 1) == 1.0);
  CHECK(g.matrix(0, 1) == doctest::Approx((1.0 + 1.0 - 10000.0) / 2.0));
  CHECK(g.matrix(1, 0) == g.matrix(0, 1));

  // eigenvalues of [[1,a],[a,1]] are 1 +- a
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-4998.0));
  CHECK(es.eigenvalues()[1] == doctest::Approx(5000.0));

  Inertia in = inertia(g);
  CHECK(in == Inertia{1, 0, 1});
}

TEST_CASE("gram form rejects vertex sets that are not simplices") {
  auto c = testutil::eight_vertex_complex();
  auto m = testutil::eight_vertex_metric(*c);
  CHECK(error_code_of([&] { return gram_form(*c, m, {0, 3}); }) ==
        ErrorCode::UnknownSimplex);
  CHECK_NOTHROW(gram_form(*c, m, {2, 3, 4}));
}

TEST_CASE("inertia splits eigenvalue signs with a relative zero cut") {
  Eigen::MatrixXd a(3, 3);
  a.setZero();
  a(0, 0) = 2.0;
  a(1, 1) = -1e-12;  // below tol * spectral radius
  a(2, 2) = -3.0;
  CHECK(inertia(a) == Inertia{1, 1, 1});
  CHECK(inertia(a, 1e-14) == Inertia{1, 0, 2});
  CHECK(inertia(Eigen::MatrixXd::Zero(2, 2)) == Inertia{0, 2, 0});
}

TEST_CASE("segment energy reproduces edge lengths and medians") {
  auto c = build_complex(3, {{0, 1, 2}});
  auto m = testutil::constant_metric(*c, 1.0);
  GramForm g = gram_form(*c, m, {0, 1, 2});

  Eigen::VectorXd v0(3), v1(3), mid02(3);
  v0 << 1, 0, 0;
  v1 << 0, 1, 0;
  mid02 << 0.5, 0, 0.5;
  CHECK(segment_energy(g, v0, v1) == doctest::Approx(1.0));
  // median of the unit triangle has squared length 3/4
  CHECK(segment_energy(g, v1, mid02) == doctest::Approx(0.75));
  CHECK(segment_energy(g, v0, v0) == doctest::Approx(0.0));

  Eigen::VectorXd bad(3);
  bad << 0.5, 0.5, 0.5;
  CHECK(error_code_of([&] { return segment_energy(g, v0, bad); }) ==
        ErrorCode::BadBarycentric);
  Eigen::VectorXd short_vec(2);
  short_vec << 0.5, 0.5;
  CHECK(error_code_of([&] { return segment_energy(g, short_vec, v0); }) ==
        ErrorCode::LengthMismatch);
}

TEST_CASE("classify: positive definite forms everywhere means Euclidean") {
  auto c = build_complex(4, {{0, 1, 2, 3}});
  auto m = testutil::constant_metric(*c, 1.0);
  Classification cl = classify(*c, m);
  CHECK(cl.kind == MetricClass::Euclidean);
  CHECK(cl.margin > 0.0);
  REQUIRE(cl.table.size() == 1);
  CHECK(cl.table[0].inertia == Inertia{3, 0, 0});
}

TEST_CASE("classify: indefinite but nondegenerate faces means Minkowski") {
  auto c = build_complex(3, {{0, 1, 2}});
  auto m = testutil::sharp_triangle_metric(*c);
  Classification cl = classify(*c, m);
  CHECK(cl.kind == MetricClass::Minkowski);
  REQUIRE(cl.table.size() == 1);
  CHECK(cl.table[0].inertia == Inertia{1, 0, 1});
}

TEST_CASE("classify: the same lengths on a bare graph are Euclidean") {
  // maximal simplices are single edges, every form is a positive 1x1
  auto c = testutil::triangle_graph();
  auto m = testutil::sharp_triangle_metric(*c);
  Classification cl = classify(*c, m);
  CHECK(cl.kind == MetricClass::Euclidean);
  REQUIRE(cl.table.size() == 3);
}

TEST_CASE("classify: a null edge degenerates the metric") {
  auto c = testutil::triangle_graph();
  auto m = metric_from_lengths(*c, {{0, 1, 0.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  CHECK(classify(*c, m).kind == MetricClass::Degenerate);
}

TEST_CASE("classify: degenerate two-simplex with nondegenerate edges") {
  // g2(0,1) = g2(0,2) = 1, g2(1,2) = 4 puts the three points on a line:
  // the triangle form [[1,-1],[-1,1]] is singular though every edge is fine.
  auto c = build_complex(3, {{0, 1, 2}});
  auto m = metric_from_squares(*c, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 4.0}});
  Classification cl = classify(*c, m);
  CHECK(cl.kind == MetricClass::Degenerate);
  CHECK(cl.margin <= 1e-9);
}

TEST_CASE("obstruction on the complete graph with unit edges") {
  auto c = testutil::complete_graph(5);
  auto m = testutil::constant_metric(*c, 1.0);
  Obstruction ob = obstruction(*c, m);
  CHECK(ob.p_min == 4);
  CHECK(ob.q_min == 0);
  CHECK(ob.witness_plus.size() == 5);
  CHECK(ob.forms_checked > 0);

  auto neg = testutil::constant_metric(*c, -1.0);
  Obstruction nb = obstruction(*c, neg);
  CHECK(nb.p_min == 0);
  CHECK(nb.q_min == 4);
  CHECK(nb.witness_minus.size() == 5);
}

TEST_CASE("obstruction can look past the simplices of the complex") {
  // tetrahedron boundary: a 4-clique of the edge graph with no 3-simplex
  auto c = build_complex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  REQUIRE(c->dimension == 2);
  auto m = testutil::constant_metric(*c, 1.0);
  Obstruction full = obstruction(*c, m, 12, true);
  CHECK(full.p_min == 3);  // the 4-clique behaves like a regular tetrahedron
  Obstruction only = obstruction(*c, m, 12, false);
  CHECK(only.p_min == 2);
}

TEST_CASE("obstruction validates its cap") {
  auto c = build_complex(4, {{0, 1, 2, 3}});
  auto m = testutil::constant_metric(*c, 1.0);
  CHECK(error_code_of([&] { return obstruction(*c, m, 2); }) ==
        ErrorCode::CliqueCapTooSmall);
}
