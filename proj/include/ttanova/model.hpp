#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttanova/basis.hpp"
#include "ttanova/expr.hpp"
#include "ttanova/stoch_testing.hpp"

namespace ttanova {

// Black-box subsystem model: declared input distributions plus a body that
// is either a registered builtin or an expression over x1..xd.
struct ModelSpec {
  int dimension = 0;
  std::vector<DistributionSpec> distributions;
  std::string builtin;                  // empty when expression-backed
  std::vector<double> builtin_params;
  std::optional<Expr> expression;

  void validate() const;
  ModelFn fn() const;
  std::vector<Basis1D> bases() const;
};

// Builtin registry:
//   affine             sum c_k xi_k                  (params: c, default all 1)
//   additive_quadratic sum c_k xi_k^2                (params: c, default all 1)
//   ishigami           sin x1 + a sin^2 x2 + b x3^4 sin x1   (params: a, b;
//                      default 7, 0.1; d = 3)
//   sparse46           46 Gaussian inputs, 3 dominant variables with pairwise
//                      couplings, 43 minor variables carrying ~2% of variance
bool is_builtin_model(const std::string& name);
ModelFn builtin_model(const std::string& name, int dimension,
                      const std::vector<double>& params);

// The three dominant (0-based) input positions of `sparse46`.
const std::vector<int>& sparse46_dominant_variables();

}  // namespace ttanova
