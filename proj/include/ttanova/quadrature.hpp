#pragma once

#include <span>
#include <vector>

#include "ttanova/distribution.hpp"

namespace ttanova {

// Gauss rule for a probability measure: strictly increasing nodes,
// positive weights summing to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  void validate() const;
};

// Golub-Welsch: builds the symmetric tridiagonal Jacobi matrix
// (diagonal gamma_{j}, off-diagonal sqrt(kappa_{j+1})) from `rec` and
// returns the rule with rec.size() points, nodes ascending, weights =
// squared first eigenvector components. Weights below 1e-300 are dropped
// together with their nodes. Throws InvalidRecurrence on kappa_j <= 0
// for j >= 1 (signals upstream moment corruption).
QuadratureRule golub_welsch(std::span<const RecurrencePair> rec);

}  // namespace ttanova
