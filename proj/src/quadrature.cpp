#include "ttanova/quadrature.hpp"

#include <cmath>

#include "ttanova/errors.hpp"
#include "ttanova/linalg.hpp"

namespace ttanova {

void QuadratureRule::validate() const {
  if (nodes.size() != weights.size())
    fail("ConfigError", "quadrature nodes/weights length mismatch");
  if (nodes.empty()) fail("ConfigError", "empty quadrature rule");
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0)) fail("ConfigError", "quadrature weight must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      fail("ConfigError", "quadrature nodes must be strictly increasing");
    sum += weights[i];
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    fail("ConfigError", "quadrature weights must sum to 1");
}

QuadratureRule golub_welsch(std::span<const RecurrencePair> rec) {
  const int n = static_cast<int>(rec.size());
  if (n < 1) fail("ConfigError", "golub_welsch needs at least one recurrence pair");
  std::vector<double> diag(n), off(n - 1);
  for (int j = 0; j < n; ++j) diag[j] = rec[j].gamma;
  for (int j = 0; j + 1 < n; ++j) {
    double k = rec[j + 1].kappa;
    if (!(k > 0.0))
      fail("InvalidRecurrence",
           "kappa_" + std::to_string(j + 1) + " = " + std::to_string(k) +
               " is not positive");
    off[j] = std::sqrt(k);
  }

  TridiagEigen eig = tridiag_eigen_ql(std::move(diag), std::move(off));

  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (int j = 0; j < n; ++j) {
    double w = eig.first_row[j] * eig.first_row[j];
    if (w < 1e-300) continue;  // underflow hygiene for large n
    rule.nodes.push_back(eig.values[j]);
    rule.weights.push_back(w);
  }
  rule.validate();
  return rule;
}

}  // namespace ttanova
