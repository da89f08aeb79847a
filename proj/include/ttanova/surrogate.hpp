#pragma once

#include <map>
#include <span>
#include <vector>

#include "ttanova/basis.hpp"
#include "ttanova/multi_index.hpp"

namespace ttanova {

// Sparse generalized polynomial-chaos expansion of a scalar quantity:
// y(xi) = sum_alpha c_alpha * prod_k phi_{alpha_k}(xi_k). Coefficients are
// kept in graded-lex order with explicit zeros elided; no pruning happens
// here.
class GpcSurrogate {
public:
  using CoefficientMap = std::map<MultiIndex, double, GradedLexLess>;

  GpcSurrogate() = default;
  GpcSurrogate(std::vector<Basis1D> bases, int order);

  int dimension() const { return static_cast<int>(bases_.size()); }
  int order() const { return order_; }
  const Basis1D& basis(int k) const { return bases_[k]; }
  const std::vector<Basis1D>& bases() const { return bases_; }

  void set_coefficient(MultiIndex alpha, double value);
  void add_coefficient(const MultiIndex& alpha, double value);
  double coefficient(const MultiIndex& alpha) const;
  const CoefficientMap& coefficients() const { return coeffs_; }

  double eval(std::span<const double> xi) const;

  struct Stats {
    double mean = 0.0;
    double variance = 0.0;
  };
  // mean = coefficient at alpha = 0; variance = sum of squares of the rest.
  Stats stats() const;

  // Largest polynomial degree appearing in dimension k.
  int max_degree_in_dim(int k) const;

private:
  int order_ = 0;
  std::vector<Basis1D> bases_;
  CoefficientMap coeffs_;
};

// Multivariate basis evaluation H_alpha(xi) = prod_k phi_{alpha_k}(xi_k).
double eval_basis(const MultiIndex& alpha, std::span<const Basis1D> bases,
                  std::span<const double> xi);

}  // namespace ttanova
