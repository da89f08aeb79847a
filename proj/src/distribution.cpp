#include "ttanova/distribution.hpp"

#include <cmath>

#include "ttanova/errors.hpp"

namespace ttanova {

std::string family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Uniform: return "uniform";
    case Family::Gamma: return "gamma";
  }
  fail("ConfigError", "unknown distribution family");
}

Family family_from_name(const std::string& name) {
  if (name == "gaussian") return Family::Gaussian;
  if (name == "uniform") return Family::Uniform;
  if (name == "gamma") return Family::Gamma;
  fail("ConfigError", "unsupported distribution family '" + name + "'");
}

void DistributionSpec::validate() const {
  if (params.size() != 2)
    fail("ConfigError", family_name(family) + " takes exactly 2 parameters");
  switch (family) {
    case Family::Gaussian:
      if (!(params[1] > 0.0)) fail("ConfigError", "gaussian stddev must be > 0");
      break;
    case Family::Uniform:
      if (!(params[0] < params[1])) fail("ConfigError", "uniform requires lower < upper");
      break;
    case Family::Gamma:
      if (!(params[0] > 0.0) || !(params[1] > 0.0))
        fail("ConfigError", "gamma requires shape > 0 and scale > 0");
      break;
  }
}

double DistributionSpec::mean() const {
  switch (family) {
    case Family::Gaussian: return params[0];
    case Family::Uniform: return 0.5 * (params[0] + params[1]);
    case Family::Gamma: return params[0] * params[1];
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (family) {
    case Family::Gaussian: return params[1] * params[1];
    case Family::Uniform: {
      double w = params[1] - params[0];
      return w * w / 12.0;
    }
    case Family::Gamma: return params[0] * params[1] * params[1];
  }
  return 0.0;
}

double DistributionSpec::raw_moment(int t) const {
  if (t < 0) fail("ConfigError", "moment order must be >= 0");
  switch (family) {
    case Family::Gaussian: {
      // m_t = mu m_{t-1} + (t-1) sigma^2 m_{t-2}
      double mu = params[0], s2 = params[1] * params[1];
      double m0 = 1.0, m1 = mu;
      if (t == 0) return m0;
      for (int k = 2; k <= t; ++k) {
        double m2 = mu * m1 + (k - 1) * s2 * m0;
        m0 = m1;
        m1 = m2;
      }
      return m1;
    }
    case Family::Uniform: {
      double a = params[0], b = params[1];
      // (b^{t+1} - a^{t+1}) / ((t+1)(b-a))
      double num = std::pow(b, t + 1) - std::pow(a, t + 1);
      return num / ((t + 1) * (b - a));
    }
    case Family::Gamma: {
      double k = params[0], theta = params[1];
      double m = 1.0;
      for (int i = 0; i < t; ++i) m *= (k + i) * theta;
      return m;
    }
  }
  return 0.0;
}

double DistributionSpec::sample(Rng& rng) const {
  switch (family) {
    case Family::Gaussian: return params[0] + params[1] * rng.normal();
    case Family::Uniform: return rng.uniform(params[0], params[1]);
    case Family::Gamma: return params[1] * rng.gamma(params[0]);
  }
  return 0.0;
}

AffineMap canonical_map(const DistributionSpec& d) {
  switch (d.family) {
    case Family::Gaussian: return {d.params[0], d.params[1]};
    case Family::Uniform:
      return {0.5 * (d.params[0] + d.params[1]), 0.5 * (d.params[1] - d.params[0])};
    case Family::Gamma: return {0.0, d.params[1]};
  }
  return {};
}

std::vector<RecurrencePair> recurrence_coefficients(const DistributionSpec& d, int n) {
  if (n < 1) fail("ConfigError", "recurrence length must be >= 1");
  d.validate();
  std::vector<RecurrencePair> rec(n);
  rec[0] = {0.0, 1.0};
  switch (d.family) {
    case Family::Gaussian:
      for (int j = 1; j < n; ++j) rec[j] = {0.0, static_cast<double>(j)};
      break;
    case Family::Uniform:
      for (int j = 1; j < n; ++j) {
        double jj = static_cast<double>(j);
        rec[j] = {0.0, jj * jj / (4.0 * jj * jj - 1.0)};
      }
      break;
    case Family::Gamma: {
      // Generalized Laguerre with alpha = shape - 1 on the canonical
      // Gamma(shape, 1) measure.
      double k = d.params[0];
      rec[0].gamma = k;  // gamma_0 = alpha + 1
      for (int j = 1; j < n; ++j) {
        double jj = static_cast<double>(j);
        rec[j] = {2.0 * jj + k, jj * (jj + k - 1.0)};
      }
      break;
    }
  }
  return rec;
}

double eval_orthonormal(std::span<const RecurrencePair> rec, int j, double x) {
  if (j < 0 || j >= static_cast<int>(rec.size()))
    fail("ConfigError", "polynomial degree exceeds recurrence length");
  double prev = 0.0, cur = 1.0;
  double norm = rec[0].kappa;
  for (int i = 1; i <= j; ++i) {
    double next = (x - rec[i - 1].gamma) * cur - rec[i - 1].kappa * prev;
    prev = cur;
    cur = next;
    norm *= rec[i].kappa;
  }
  return cur / std::sqrt(norm);
}

void eval_orthonormal_all(std::span<const RecurrencePair> rec, int max_degree,
                          double x, double* out) {
  if (max_degree >= static_cast<int>(rec.size()))
    fail("ConfigError", "polynomial degree exceeds recurrence length");
  double prev = 0.0, cur = 1.0;
  double norm = rec[0].kappa;
  out[0] = 1.0;
  for (int i = 1; i <= max_degree; ++i) {
    double next = (x - rec[i - 1].gamma) * cur - rec[i - 1].kappa * prev;
    prev = cur;
    cur = next;
    norm *= rec[i].kappa;
    out[i] = cur / std::sqrt(norm);
  }
}

}  // namespace ttanova
