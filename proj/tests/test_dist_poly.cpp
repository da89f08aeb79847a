#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "testing.hpp"
#include "ttanova/basis.hpp"
#include "ttanova/errors.hpp"
#include "ttanova/quadrature.hpp"

using namespace ttanova;
using namespace ttanova::testing;

namespace {

const DistributionSpec kStdNormal{Family::Gaussian, {0.0, 1.0}};
const DistributionSpec kUnifPm1{Family::Uniform, {-1.0, 1.0}};
const DistributionSpec kGamma25{Family::Gamma, {2.5, 1.0}};

}  // namespace

TEST_CASE("hermite recurrence: kappa_j = j") {
  auto rec = recurrence_coefficients(kStdNormal, 3);
  REQUIRE(rec.size() == 3);
  CHECK(rec[0].gamma == 0.0);
  CHECK(rec[1].gamma == 0.0);
  CHECK(rec[2].gamma == 0.0);
  CHECK(rec[0].kappa == 1.0);
  CHECK(rec[1].kappa == 1.0);
  CHECK(rec[2].kappa == 2.0);
}

TEST_CASE("legendre recurrence: kappa_j = j^2/(4j^2-1)") {
  auto rec = recurrence_coefficients(kUnifPm1, 3);
  CHECK(rec[0].kappa == 1.0);
  CHECK(rec[1].kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rec[2].kappa == doctest::Approx(4.0 / 15.0).epsilon(1e-15));
  for (auto& r : rec) CHECK(r.gamma == 0.0);
}

TEST_CASE("recurrences match the moment-based oracle") {
  const int n = 5;
  auto check = [&](const DistributionSpec& d, const std::vector<long double>& m) {
    auto got = recurrence_coefficients(d, n);
    auto want = stieltjes_from_moments(m, n);
    for (int j = 0; j < n; ++j) {
      CHECK(rel_err(got[j].gamma, want[j].gamma) < 1e-9);
      CHECK(rel_err(got[j].kappa, want[j].kappa) < 1e-9);
    }
  };
  check(kStdNormal, standard_normal_moments(2 * n + 2));
  check(kUnifPm1, uniform_pm1_moments(2 * n + 2));
  check(kGamma25, gamma_moments(2.5L, 2 * n + 2));
}

TEST_CASE("recurrence input validation") {
  CHECK_THROWS_AS(recurrence_coefficients(kStdNormal, 0), Error);
  CHECK_THROWS_AS(
      recurrence_coefficients({Family::Gaussian, {0.0, -1.0}}, 2), Error);
  CHECK_THROWS_AS(recurrence_coefficients({Family::Uniform, {1.0, -1.0}}, 2), Error);
  CHECK_THROWS_AS(family_from_name("beta"), Error);
}

TEST_CASE("orthonormal evaluation examples") {
  auto rec = recurrence_coefficients(kStdNormal, 4);
  CHECK(eval_orthonormal(rec, 0, 1.7) == 1.0);
  CHECK(eval_orthonormal(rec, 2, 0.0) ==
        doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  auto leg = recurrence_coefficients(kUnifPm1, 2);
  CHECK(eval_orthonormal(leg, 1, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("golub-welsch 2-point rules, derived by hand") {
  auto rule = golub_welsch(recurrence_coefficients(kStdNormal, 2));
  REQUIRE(rule.size() == 2);
  CHECK(rule.nodes[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(rule.nodes[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-14));

  auto leg = golub_welsch(recurrence_coefficients(kUnifPm1, 2));
  CHECK(leg.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(leg.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(leg.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("golub-welsch rejects non-positive kappa") {
  std::vector<RecurrencePair> rec = {{0.0, 1.0}, {0.0, -0.5}};
  CHECK_THROWS_WITH_AS(golub_welsch(rec), doctest::Contains("kappa"), Error);
}

TEST_CASE("orthonormality realized by the family's own gauss rule") {
  const int p = 8;
  for (const auto& d : {kStdNormal, kUnifPm1, kGamma25}) {
    auto rec = recurrence_coefficients(d, p + 1);
    auto rule = golub_welsch(recurrence_coefficients(d, p + 1));  // m = p+1
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= p; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
          s += rule.weights[k] * eval_orthonormal(rec, i, rule.nodes[k]) *
               eval_orthonormal(rec, j, rule.nodes[k]);
        CHECK(std::fabs(s - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("n-point rules integrate monomials of degree <= 2n-1 exactly") {
  // Original (unstandardized) coordinates against closed-form moments.
  std::vector<DistributionSpec> dists = {
      {Family::Gaussian, {2.0, 0.5}},
      {Family::Uniform, {-0.3, 1.7}},
      {Family::Gamma, {2.5, 0.8}},
      kStdNormal,
      kUnifPm1,
  };
  for (const auto& d : dists) {
    Basis1D basis = Basis1D::from_distribution(d);
    for (int n = 1; n <= 10; ++n) {
      QuadratureRule rule = basis.gauss(n);
      for (int t = 0; t <= 2 * n - 1; ++t)
        CHECK(quadrature_moment_err(rule, t, d.raw_moment(t)) < 1e-10);
    }
  }
}

TEST_CASE("nodes of successive rules strictly interlace") {
  for (const auto& d : {kStdNormal, kUnifPm1, kGamma25}) {
    for (int n = 1; n <= 9; ++n) {
      auto a = golub_welsch(recurrence_coefficients(d, n));
      auto b = golub_welsch(recurrence_coefficients(d, n + 1));
      REQUIRE(a.size() == static_cast<std::size_t>(n));
      REQUIRE(b.size() == static_cast<std::size_t>(n + 1));
      for (int i = 0; i < n; ++i) {
        CHECK(b.nodes[i] < a.nodes[i]);
        CHECK(a.nodes[i] < b.nodes[i + 1]);
      }
    }
  }
}

TEST_CASE("weights positive and summing to one") {
  for (const auto& d : {kStdNormal, kUnifPm1, kGamma25}) {
    for (int n : {1, 4, 10}) {
      auto rule = golub_welsch(recurrence_coefficients(d, n));
      double sum = 0.0;
      for (double w : rule.weights) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(std::fabs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("basis maps nodes back to original coordinates") {
  DistributionSpec d{Family::Gaussian, {10.0, 3.0}};
  Basis1D b = Basis1D::from_distribution(d);
  auto rule = b.gauss(3);
  // 3-point Gauss-Hermite nodes are -sqrt(3), 0, sqrt(3) canonically.
  CHECK(rule.nodes[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rule.nodes[2] == doctest::Approx(10.0 + 3.0 * std::sqrt(3.0)).epsilon(1e-12));
  // phi_1 in original coordinates is (x - mean)/stddev for a Gaussian.
  CHECK(b.phi(1, 13.0) == doctest::Approx(1.0).epsilon(1e-13));
}
