#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "esdg/refelem.hpp"

using namespace esdg;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }
double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Exact integral of r^a s^b over the bi-unit triangle: with r = 2u - 1,
// s = 2v - 1 the simplex integral of u^i v^j is i! j! / (i + j + 2)!.
double triangle_monomial(int a, int b) {
  double total = 0.0;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      const double coef = binom(a, i) * std::pow(2.0, i) * std::pow(-1.0, a - i) * binom(b, j) * std::pow(2.0, j) *
                          std::pow(-1.0, b - j);
      total += coef * factorial(i) * factorial(j) / factorial(i + j + 2);
    }
  }
  return 4.0 * total;
}

}  // namespace

TEST_SUITE("refelem") {
  TEST_CASE("gauss-legendre rule with three points") {
    Eigen::VectorXd x, w;
    jacobi_gq(0.0, 0.0, 2, x, w);
    REQUIRE(x.size() == 3);
    CHECK(x(0) == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-14));
    CHECK(std::abs(x(1)) < 1e-15);
    CHECK(x(2) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
    CHECK(w(0) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(w(1) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  }

  TEST_CASE("gauss-jacobi(1,0) integrates (1-x) x^k exactly") {
    Eigen::VectorXd x, w;
    for (int n = 0; n <= 5; ++n) {
      jacobi_gq(1.0, 0.0, n, x, w);
      for (int k = 0; k <= 2 * n + 1; ++k) {
        double q = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) q += w(i) * std::pow(x(i), k);
        // integral of (1 - x) x^k over [-1, 1]
        const double even = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        const double odd = (k % 2 == 1) ? 2.0 / (k + 2) : 0.0;
        CHECK(q == doctest::Approx(even - odd).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("triangle volume quadrature is exact to degree 2N") {
    for (int N = 1; N <= 5; ++N) {
      const Quadrature q = volume_quadrature(N, ElementKind::Triangle);
      CHECK(q.points.rows() == (N + 1) * (N + 1));
      for (int a = 0; a <= 2 * N; ++a) {
        for (int b = 0; a + b <= 2 * N; ++b) {
          double s = 0.0;
          for (Eigen::Index i = 0; i < q.points.rows(); ++i) {
            s += q.weights(i) * std::pow(q.points(i, 0), a) * std::pow(q.points(i, 1), b);
          }
          CHECK(s == doctest::Approx(triangle_monomial(a, b)).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("orthonormal bases give an identity mass matrix") {
    for (auto kind : {ElementKind::Interval, ElementKind::Triangle}) {
      for (int N = 1; N <= 5; ++N) {
        const OperatorSet op = build_operators(N, kind);
        CHECK(op.Np == num_modes(N, kind));
        CHECK((op.M - Eigen::MatrixXd::Identity(op.Np, op.Np)).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }

  TEST_CASE("mode and point counts") {
    const OperatorSet tri = build_operators(3, ElementKind::Triangle);
    CHECK(tri.Np == 10);
    CHECK(tri.Nq == 16);
    CHECK(tri.nfaces == 3);
    CHECK(tri.nfp == 4);
    CHECK(tri.Nqf == 12);
    CHECK(tri.Nh() == 28);
    const OperatorSet seg = build_operators(4, ElementKind::Interval);
    CHECK(seg.Np == 5);
    CHECK(seg.Nq == 5);
    CHECK(seg.Nqf == 2);
  }

  TEST_CASE("triangle face normals and weights") {
    const SurfaceQuadrature s = surface_quadrature(2, ElementKind::Triangle);
    REQUIRE(s.nfaces == 3);
    // bottom, hypotenuse, left; the hypotenuse carries the sqrt(2) face scaling
    CHECK(s.normals(0, 0) == doctest::Approx(0.0));
    CHECK(s.normals(0, 1) == doctest::Approx(-1.0));
    CHECK(s.normals(s.nfp, 0) == doctest::Approx(1.0));
    CHECK(s.normals(s.nfp, 1) == doctest::Approx(1.0));
    CHECK(s.normals(2 * s.nfp, 0) == doctest::Approx(-1.0));
    CHECK(s.weights.sum() == doctest::Approx(6.0));
    // face points lie on the faces
    for (int i = 0; i < s.nfp; ++i) {
      CHECK(s.points(i, 1) == doctest::Approx(-1.0));
      CHECK(s.points(s.nfp + i, 0) + s.points(s.nfp + i, 1) == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(s.points(2 * s.nfp + i, 0) == doctest::Approx(-1.0));
    }
  }

  TEST_CASE("SBP residuals stay at round-off for N = 1..5") {
    for (auto kind : {ElementKind::Interval, ElementKind::Triangle}) {
      for (int N = 1; N <= 5; ++N) {
        const SbpResiduals r = build_operators(N, kind).residuals();
        CAPTURE(N);
        CHECK(r.qhat <= 1e-12);
        CHECK(r.q <= 1e-12);
        CHECK(r.qh <= 1e-12);
        CHECK(r.qh_null <= 1e-12);
        CHECK(r.pq_vq <= 1e-12);
      }
    }
  }

  TEST_CASE("D differentiates degree-N polynomials exactly") {
    const int N = 4;
    const OperatorSet op = build_operators(N, ElementKind::Triangle);
    // u = r^2 s^2 + 3 r s - s^4 (degree 4)
    Eigen::VectorXd uq(op.Nq), duq_r(op.Nq), duq_s(op.Nq);
    for (int i = 0; i < op.Nq; ++i) {
      const double r = op.vol.points(i, 0), s = op.vol.points(i, 1);
      uq(i) = r * r * s * s + 3 * r * s - std::pow(s, 4);
      duq_r(i) = 2 * r * s * s + 3 * s;
      duq_s(i) = 2 * r * r * s + 3 * r - 4 * std::pow(s, 3);
    }
    const Eigen::VectorXd u = op.Pq * uq;
    CHECK((op.Vq * op.D[0] * u - duq_r).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((op.Vq * op.D[1] * u - duq_s).cwiseAbs().maxCoeff() < 1e-11);
  }

  TEST_CASE("Legendre derivative matrix on the interval") {
    const OperatorSet op = build_operators(3, ElementKind::Interval);
    Eigen::VectorXd uq(op.Nq), du(op.Nq);
    for (int i = 0; i < op.Nq; ++i) {
      const double x = op.vol.points(i, 0);
      uq(i) = x * x * x - 2 * x;
      du(i) = 3 * x * x - 2;
    }
    CHECK((op.Vq * op.D[0] * (op.Pq * uq) - du).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("hybridized operator structure") {
    const OperatorSet op = build_operators(2, ElementKind::Triangle);
    for (int i = 0; i < 2; ++i) {
      CHECK(op.Qh[i].rows() == op.Nh());
      // skew part: zero surface-surface block
      CHECK(op.Sh[i].bottomRightCorner(op.Nqf, op.Nqf).cwiseAbs().maxCoeff() == 0.0);
      CHECK((op.Sh[i] + op.Sh[i].transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK(op.LiftH.rows() == op.Np);
    CHECK(op.LiftH.cols() == op.Nh());
    CHECK((op.VhPq.topRows(op.Nq) * op.Vq - op.Vq).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("named operators and CSV dump") {
    const OperatorSet op = build_operators(1, ElementKind::Interval);
    for (const auto& n : OperatorSet::names(ElementKind::Interval)) CHECK(op.named(n).size() > 0);
    CHECK_THROWS_AS(op.named("nope"), std::invalid_argument);
    const std::string csv = matrix_to_csv(op.M);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == op.Np);
    CHECK(std::count(csv.begin(), csv.end(), ',') == op.Np * (op.Np - 1));
  }

  TEST_CASE("degree below one is rejected") {
    CHECK_THROWS(build_operators(0, ElementKind::Triangle));
  }
}
