#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ttanova/linalg.hpp"
#include "ttanova/surrogate.hpp"

namespace ttanova {

using ModelFn = std::function<double(std::span<const double>)>;

// Full tensor grid of per-dimension (p+1)-point Gauss rules with product
// weights; exact for polynomials of degree up to 2p+1 in each dimension.
// Intended for the small dimensions the decomposition restricts to.
struct CandidateGrid {
  std::vector<std::vector<double>> points;  // original coordinates
  std::vector<double> weights;
};
CandidateGrid candidate_grid(std::span<const Basis1D> bases, int p);

// K testing points selected from a candidate set so the collocation matrix
// V(j,k) = H_k(xi^j) is square and well-conditioned.
struct TestingPlan {
  std::vector<std::vector<double>> points;
  MultiIndexSet basis;
  Matrix vandermonde;   // K x K
  double condition = 0.0;
};

// Greedy pass in descending weight order (ties broken by candidate
// enumeration order); a candidate is accepted iff its basis row stays
// numerically independent of the accepted rows (residual after incremental
// Gram-Schmidt > 1e-10 of the row norm). Throws RankDeficient when fewer
// than K candidates qualify or cond(V) ends up above 1e8.
TestingPlan select_testing_points(const CandidateGrid& grid, MultiIndexSet basis,
                                  std::span<const Basis1D> bases);

// Solves V c = g(points) by LU with partial pivoting and returns the sparse
// surrogate; coefficients below 1e-14 * max|c| are dropped.
GpcSurrogate fit_coefficients(const ModelFn& model, const TestingPlan& plan,
                              std::span<const Basis1D> bases);

// Convenience: grid + selection + fit for a total-degree basis.
GpcSurrogate fit_surrogate(const ModelFn& model, std::span<const Basis1D> bases, int p);

}  // namespace ttanova
