#pragma once

#include <span>
#include <string>
#include <vector>

#include "ttanova/rng.hpp"

namespace ttanova {

enum class Family { Gaussian, Uniform, Gamma };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// A named univariate distribution. Parameters:
//   Gaussian: mean, stddev (> 0)
//   Uniform:  lower, upper (lower < upper)
//   Gamma:    shape (> 0), scale (> 0)
struct DistributionSpec {
  Family family = Family::Gaussian;
  std::vector<double> params;

  void validate() const;  // ConfigError on violated parameter constraints
  double mean() const;
  double variance() const;
  // Raw moment E[x^t] in original coordinates, closed form.
  double raw_moment(int t) const;
  double sample(Rng& rng) const;
  bool operator==(const DistributionSpec&) const = default;
};

// Coefficients of the monic three-term recurrence
//   pi_{j+1}(x) = (x - gamma_j) pi_j(x) - kappa_j pi_{j-1}(x)
// for the orthogonal family of the canonical form of a distribution.
struct RecurrencePair {
  double gamma = 0.0;
  double kappa = 1.0;
};

// Affine map x = shift + scale * z from canonical coordinates z to the
// distribution's original coordinates x.
struct AffineMap {
  double shift = 0.0;
  double scale = 1.0;
  double to_original(double z) const { return shift + scale * z; }
  double to_canonical(double x) const { return (x - shift) / scale; }
};

// Canonical form used internally: Gaussian -> N(0,1) (probabilists'
// Hermite), Uniform -> U(-1,1) (Legendre), Gamma(shape k, scale) ->
// Gamma(k, 1) (generalized Laguerre, alpha = k-1). kappa_0 = 1 always.
AffineMap canonical_map(const DistributionSpec& d);
std::vector<RecurrencePair> recurrence_coefficients(const DistributionSpec& d, int n);

// Orthonormal polynomial phi_j(x) = pi_j(x) / sqrt(kappa_0 ... kappa_j)
// evaluated by running the monic recurrence; x in canonical coordinates.
double eval_orthonormal(std::span<const RecurrencePair> rec, int j, double x);

// Fills out[0..max_degree] with phi_0(x) .. phi_{max_degree}(x).
void eval_orthonormal_all(std::span<const RecurrencePair> rec, int max_degree,
                          double x, double* out);

}  // namespace ttanova
