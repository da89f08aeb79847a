#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "testing.hpp"
#include "ttanova/errors.hpp"
#include "ttanova/linalg.hpp"
#include "ttanova/rng.hpp"

using namespace ttanova;

namespace {

Matrix random_matrix(int m, int n, Rng& rng) {
  Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return a;
}

}  // namespace

TEST_CASE("lu solve reproduces right-hand side") {
  Rng rng(7);
  for (int n : {1, 3, 8, 20}) {
    Matrix a = random_matrix(n, n, rng);
    for (int i = 0; i < n; ++i) a(i, i) += 2.0;  // keep it comfortably nonsingular
    Matrix x = random_matrix(n, 2, rng);
    Matrix b = a * x;
    Matrix got = solve(a, b);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j) CHECK(got(i, j) == doctest::Approx(x(i, j)).epsilon(1e-9));
  }
}

TEST_CASE("lu reports singular systems") {
  Matrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_WITH_AS(lu_factor(a), doctest::Contains("pivot"), Error);
}

TEST_CASE("qr with column pivoting: orthonormal q, exact rank") {
  Rng rng(11);
  Matrix a = random_matrix(30, 4, rng);
  // Make column 2 a combination of columns 0 and 1.
  for (int i = 0; i < 30; ++i) a(i, 2) = 0.5 * a(i, 0) - 1.5 * a(i, 1);
  QrResult qr = qr_col_pivot(a);
  CHECK(qr.rank == 3);
  for (int p = 0; p < qr.rank; ++p)
    for (int q = 0; q <= p; ++q) {
      double dot = 0.0;
      for (int i = 0; i < 30; ++i) dot += qr.q(i, p) * qr.q(i, q);
      CHECK(dot == doctest::Approx(p == q ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("jacobi svd reconstructs the matrix") {
  Rng rng(13);
  for (auto [m, n] : {std::pair{6, 6}, {20, 5}, {9, 1}}) {
    Matrix a = random_matrix(m, n, rng);
    SvdResult s = jacobi_svd(a);
    for (int j = 1; j < n; ++j) CHECK(s.sigma[j - 1] >= s.sigma[j]);
    // a == u diag(sigma) v^T
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += s.u(i, k) * s.sigma[k] * s.v(j, k);
        CHECK(v == doctest::Approx(a(i, j)).epsilon(1e-11));
      }
  }
}

TEST_CASE("condition number of an orthogonal-ish matrix is small") {
  Matrix id = Matrix::identity(5);
  CHECK(condition_number(id) == doctest::Approx(1.0));
}

TEST_CASE("tridiagonal QL: 2x2 exchange matrix") {
  TridiagEigen e = tridiag_eigen_ql({0.0, 0.0}, {1.0});
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.first_row[0] * e.first_row[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.first_row[1] * e.first_row[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("tridiagonal QL: single entry") {
  TridiagEigen e = tridiag_eigen_ql({3.25}, {});
  CHECK(e.values[0] == doctest::Approx(3.25));
  CHECK(e.first_row[0] * e.first_row[0] == doctest::Approx(1.0));
}

TEST_CASE("tridiagonal QL satisfies moment identities") {
  // trace(J^k)(0,0)-style identities pin eigenvalues and first-row
  // components without an independent eigensolver.
  Rng rng(17);
  for (int n : {2, 5, 12}) {
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = rng.uniform(-2.0, 2.0);
    for (auto& x : e) x = rng.uniform(0.1, 1.5);
    TridiagEigen eig = tridiag_eigen_ql(d, e);

    double tr = 0.0, tr2 = 0.0, w_sum = 0.0, w1 = 0.0, w2 = 0.0;
    for (int j = 0; j < n; ++j) {
      tr += eig.values[j];
      tr2 += eig.values[j] * eig.values[j];
      double w = eig.first_row[j] * eig.first_row[j];
      w_sum += w;
      w1 += w * eig.values[j];
      w2 += w * eig.values[j] * eig.values[j];
    }
    double tr_want = 0.0, tr2_want = 0.0;
    for (int i = 0; i < n; ++i) tr_want += d[i];
    for (int i = 0; i < n; ++i) tr2_want += d[i] * d[i];
    for (int i = 0; i + 1 < n; ++i) tr2_want += 2.0 * e[i] * e[i];
    double j2_00 = d[0] * d[0] + e[0] * e[0];

    CHECK(tr == doctest::Approx(tr_want).epsilon(1e-11));
    CHECK(tr2 == doctest::Approx(tr2_want).epsilon(1e-11));
    CHECK(w_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w1 == doctest::Approx(d[0]).epsilon(1e-10));
    CHECK(w2 == doctest::Approx(j2_00).epsilon(1e-10));
  }
}
