#include "ttanova/stoch_testing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ttanova/errors.hpp"
#include "ttanova/log.hpp"

namespace ttanova {

CandidateGrid candidate_grid(std::span<const Basis1D> bases, int p) {
  const int d = static_cast<int>(bases.size());
  if (d < 1) fail("ConfigError", "candidate grid needs at least one dimension");
  if (p < 0) fail("ConfigError", "order must be >= 0");
  const int m = p + 1;
  double total = std::pow(static_cast<double>(m), d);
  if (total > 1e7)
    fail("SizeOverflow", "candidate grid would have " + std::to_string(total) + " points");

  std::vector<QuadratureRule> rules;
  rules.reserve(d);
  for (const auto& b : bases) rules.push_back(b.gauss(m));

  CandidateGrid grid;
  std::vector<int> idx(d, 0);
  for (;;) {
    std::vector<double> pt(d);
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      pt[k] = rules[k].nodes[idx[k]];
      w *= rules[k].weights[idx[k]];
    }
    if (w > 0.0) {
      grid.points.push_back(std::move(pt));
      grid.weights.push_back(w);
    }
    int k = d - 1;
    while (k >= 0 && ++idx[k] == static_cast<int>(rules[k].size())) idx[k--] = 0;
    if (k < 0) break;
  }
  return grid;
}

namespace {

// Basis row H_k(point) for every k in the index set.
std::vector<double> basis_row(const std::vector<double>& point,
                              const MultiIndexSet& basis,
                              std::span<const Basis1D> bases, int p) {
  const int d = static_cast<int>(bases.size());
  std::vector<std::vector<double>> tab(d);
  for (int k = 0; k < d; ++k) {
    tab[k].resize(p + 1);
    bases[k].phi_row(p, point[k], tab[k].data());
  }
  std::vector<double> row(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double prod = 1.0;
    const MultiIndex& alpha = basis[j];
    for (int k = 0; k < d; ++k)
      if (alpha[k] > 0) prod *= tab[k][alpha[k]];
    row[j] = prod;
  }
  return row;
}

}  // namespace

TestingPlan select_testing_points(const CandidateGrid& grid, MultiIndexSet basis,
                                  std::span<const Basis1D> bases) {
  const std::size_t K = basis.size();
  if (grid.points.size() < K)
    fail("RankDeficient", "only " + std::to_string(grid.points.size()) +
                              " candidates for " + std::to_string(K) + " basis functions");
  const int p = basis.order();

  std::vector<std::size_t> order(grid.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid.weights[a] > grid.weights[b];
  });

  TestingPlan plan;
  plan.basis = std::move(basis);
  std::vector<std::vector<double>> rows;       // accepted raw rows
  std::vector<std::vector<double>> ortho;      // orthonormalized rows
  rows.reserve(K);
  ortho.reserve(K);

  for (std::size_t oi = 0; oi < order.size() && rows.size() < K; ++oi) {
    const auto& pt = grid.points[order[oi]];
    std::vector<double> row = basis_row(pt, plan.basis, bases, p);
    double hnorm = 0.0;
    for (double v : row) hnorm += v * v;
    hnorm = std::sqrt(hnorm);
    if (hnorm == 0.0) continue;

    // Incremental rank-revealing acceptance: project out the accepted rows
    // (twice, classic reorthogonalization) and test the residual pivot.
    std::vector<double> r = row;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) {
        double dot = 0.0;
        for (std::size_t j = 0; j < K; ++j) dot += q[j] * r[j];
        for (std::size_t j = 0; j < K; ++j) r[j] -= dot * q[j];
      }
    }
    double rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
    if (rnorm <= 1e-10 * hnorm) continue;

    for (double& v : r) v /= rnorm;
    ortho.push_back(std::move(r));
    rows.push_back(std::move(row));
    plan.points.push_back(pt);
  }

  if (rows.size() < K)
    fail("RankDeficient", "candidate grid yields only " + std::to_string(rows.size()) +
                              " independent rows of " + std::to_string(K));

  plan.vandermonde = Matrix(static_cast<int>(K), static_cast<int>(K));
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) plan.vandermonde(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  plan.condition = condition_number(plan.vandermonde);
  if (!(plan.condition <= 1e8))
    fail("RankDeficient",
         "collocation matrix condition " + std::to_string(plan.condition) + " exceeds 1e8");
  log_debug("testing plan: K=" + std::to_string(K) +
            " cond(V)=" + std::to_string(plan.condition));
  return plan;
}

GpcSurrogate fit_coefficients(const ModelFn& model, const TestingPlan& plan,
                              std::span<const Basis1D> bases) {
  const std::size_t K = plan.basis.size();
  Matrix v = plan.vandermonde;
  std::vector<double> rhs(K);
  for (std::size_t j = 0; j < K; ++j) rhs[j] = model(plan.points[j]);

  auto piv = lu_factor(v);
  lu_solve_inplace(v, piv, rhs);

  double cmax = 0.0;
  for (double c : rhs) cmax = std::max(cmax, std::fabs(c));
  const double drop = 1e-14 * cmax;

  GpcSurrogate s(std::vector<Basis1D>(bases.begin(), bases.end()), plan.basis.order());
  for (std::size_t j = 0; j < K; ++j)
    if (std::fabs(rhs[j]) > drop) s.set_coefficient(plan.basis[j], rhs[j]);
  return s;
}

GpcSurrogate fit_surrogate(const ModelFn& model, std::span<const Basis1D> bases, int p) {
  CandidateGrid grid = candidate_grid(bases, p);
  TestingPlan plan = select_testing_points(
      grid, MultiIndexSet::total_degree(static_cast<int>(bases.size()), p), bases);
  return fit_coefficients(model, plan, bases);
}

}  // namespace ttanova
