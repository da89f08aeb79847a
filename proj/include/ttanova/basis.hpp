#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ttanova/distribution.hpp"
#include "ttanova/quadrature.hpp"

namespace ttanova {

// One univariate orthonormal polynomial family together with its Gauss
// rules, either derived from a builtin distribution or synthesized for an
// intermediate variable (a fixed recurrence, identity coordinate map).
class Basis1D {
public:
  static Basis1D from_distribution(DistributionSpec d);
  static Basis1D custom(std::vector<RecurrencePair> rec);

  // phi_j at x given in original coordinates.
  double phi(int degree, double x) const;
  // Fills out[0..max_degree]; cheaper than repeated phi() calls.
  void phi_row(int max_degree, double x, double* out) const;

  // n-point Gauss rule, nodes mapped to original coordinates.
  QuadratureRule gauss(int n) const;
  // Same rule in canonical coordinates (as used by the recurrence).
  QuadratureRule gauss_canonical(int n) const;

  std::vector<RecurrencePair> recurrence(int n) const;
  const AffineMap& map() const { return map_; }

  bool is_custom() const { return !dist_.has_value(); }
  const std::optional<DistributionSpec>& distribution() const { return dist_; }

  double mean() const;
  double sample(Rng& rng) const;  // builtin families only

  // Maximum usable polynomial degree (unbounded for builtin families).
  int max_degree() const;

  bool operator==(const Basis1D&) const = default;

private:
  std::optional<DistributionSpec> dist_;
  std::vector<RecurrencePair> rec_;  // custom only
  AffineMap map_;
};

std::vector<Basis1D> bases_from_distributions(std::span<const DistributionSpec> dists);

}  // namespace ttanova
