#include "ttanova/model.hpp"

#include <cmath>

#include "ttanova/errors.hpp"

namespace ttanova {

namespace {

std::vector<double> coefficients_or_ones(const std::vector<double>& params, int d,
                                         const char* name) {
  if (params.empty()) return std::vector<double>(d, 1.0);
  if (static_cast<int>(params.size()) != d)
    fail("ConfigError", std::string(name) + " expects " + std::to_string(d) +
                            " coefficients, got " + std::to_string(params.size()));
  return params;
}

// sparse46 constants. Dominant univariate parts run through degree 3,
// couplings are plain products; the minor coefficient puts ~2% of the
// variance on the 43 remaining inputs.
constexpr double kSparseQuad = 0.25;
constexpr double kSparseCubic = 0.08;
constexpr double kSparseCoupling = 0.10;
constexpr double kSparseMinor = 0.0409;

}  // namespace

const std::vector<int>& sparse46_dominant_variables() {
  static const std::vector<int> dominant = {6, 18, 32};
  return dominant;
}

bool is_builtin_model(const std::string& name) {
  return name == "affine" || name == "additive_quadratic" || name == "ishigami" ||
         name == "sparse46";
}

ModelFn builtin_model(const std::string& name, int dimension,
                      const std::vector<double>& params) {
  if (name == "affine") {
    auto c = coefficients_or_ones(params, dimension, "affine");
    return [c](std::span<const double> xi) {
      double s = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * xi[k];
      return s;
    };
  }
  if (name == "additive_quadratic") {
    auto c = coefficients_or_ones(params, dimension, "additive_quadratic");
    return [c](std::span<const double> xi) {
      double s = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * xi[k] * xi[k];
      return s;
    };
  }
  if (name == "ishigami") {
    if (dimension != 3) fail("ConfigError", "ishigami is a 3-dimensional model");
    double a = 7.0, b = 0.1;
    if (!params.empty()) {
      if (params.size() != 2) fail("ConfigError", "ishigami takes parameters [a, b]");
      a = params[0];
      b = params[1];
    }
    return [a, b](std::span<const double> xi) {
      double s1 = std::sin(xi[0]), s2 = std::sin(xi[1]);
      return s1 + a * s2 * s2 + b * xi[2] * xi[2] * xi[2] * xi[2] * s1;
    };
  }
  if (name == "sparse46") {
    if (dimension != 46) fail("ConfigError", "sparse46 is a 46-dimensional model");
    if (!params.empty()) fail("ConfigError", "sparse46 takes no parameters");
    const auto& dom = sparse46_dominant_variables();
    return [dom](std::span<const double> xi) {
      double s = 0.0;
      for (int k : dom) {
        double x = xi[k];
        s += x + kSparseQuad * (x * x - 1.0) + kSparseCubic * (x * x * x - 3.0 * x);
      }
      s += kSparseCoupling * (xi[dom[0]] * xi[dom[1]] + xi[dom[0]] * xi[dom[2]] +
                              xi[dom[1]] * xi[dom[2]]);
      for (int k = 0; k < 46; ++k) {
        if (k == dom[0] || k == dom[1] || k == dom[2]) continue;
        s += kSparseMinor * xi[k];
      }
      return s;
    };
  }
  fail("ConfigError", "unknown builtin model '" + name + "'");
}

void ModelSpec::validate() const {
  if (dimension < 1) fail("ConfigError", "model dimension must be >= 1");
  if (static_cast<int>(distributions.size()) != dimension)
    fail("ConfigError", "model declares " + std::to_string(distributions.size()) +
                            " distributions for dimension " + std::to_string(dimension));
  for (const auto& d : distributions) d.validate();
  if (builtin.empty() == !expression.has_value())
    fail("ConfigError", "model body must be exactly one of builtin or expression");
  if (!builtin.empty()) {
    builtin_model(builtin, dimension, builtin_params);  // validates name/params
  } else if (expression->max_variable() > dimension) {
    fail("ConfigError", "expression references x" +
                            std::to_string(expression->max_variable()) +
                            " beyond the declared dimension " + std::to_string(dimension));
  }
}

ModelFn ModelSpec::fn() const {
  validate();
  if (!builtin.empty()) return builtin_model(builtin, dimension, builtin_params);
  Expr e = *expression;
  return [e](std::span<const double> xi) { return evaluate(e, xi); };
}

std::vector<Basis1D> ModelSpec::bases() const {
  return bases_from_distributions(distributions);
}

}  // namespace ttanova
