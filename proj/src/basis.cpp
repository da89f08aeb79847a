#include "ttanova/basis.hpp"

#include <limits>

#include "ttanova/errors.hpp"

namespace ttanova {

Basis1D Basis1D::from_distribution(DistributionSpec d) {
  d.validate();
  Basis1D b;
  b.map_ = canonical_map(d);
  b.dist_ = std::move(d);
  return b;
}

Basis1D Basis1D::custom(std::vector<RecurrencePair> rec) {
  if (rec.empty()) fail("ConfigError", "custom basis needs at least one recurrence pair");
  for (std::size_t j = 1; j < rec.size(); ++j)
    if (!(rec[j].kappa > 0.0))
      fail("InvalidRecurrence", "custom basis kappa_" + std::to_string(j) + " <= 0");
  Basis1D b;
  b.rec_ = std::move(rec);
  return b;
}

std::vector<RecurrencePair> Basis1D::recurrence(int n) const {
  if (dist_) return recurrence_coefficients(*dist_, n);
  if (n > static_cast<int>(rec_.size()))
    fail("ConfigError", "custom basis holds only " + std::to_string(rec_.size()) +
                            " recurrence pairs, " + std::to_string(n) + " requested");
  return {rec_.begin(), rec_.begin() + n};
}

double Basis1D::phi(int degree, double x) const {
  double z = map_.to_canonical(x);
  if (dist_) {
    auto rec = recurrence_coefficients(*dist_, degree + 1);
    return eval_orthonormal(rec, degree, z);
  }
  return eval_orthonormal(rec_, degree, z);
}

void Basis1D::phi_row(int max_degree, double x, double* out) const {
  double z = map_.to_canonical(x);
  if (dist_) {
    auto rec = recurrence_coefficients(*dist_, max_degree + 1);
    eval_orthonormal_all(rec, max_degree, z, out);
  } else {
    eval_orthonormal_all(rec_, max_degree, z, out);
  }
}

QuadratureRule Basis1D::gauss_canonical(int n) const {
  return golub_welsch(recurrence(n));
}

QuadratureRule Basis1D::gauss(int n) const {
  QuadratureRule rule = gauss_canonical(n);
  for (double& x : rule.nodes) x = map_.to_original(x);
  return rule;
}

double Basis1D::mean() const {
  if (dist_) return dist_->mean();
  return rec_[0].gamma;  // canonical mean of the synthesized measure
}

double Basis1D::sample(Rng& rng) const {
  if (!dist_)
    fail("ConfigError", "a synthesized basis has no sampler; sample through the hierarchy");
  return dist_->sample(rng);
}

int Basis1D::max_degree() const {
  if (dist_) return std::numeric_limits<int>::max();
  return static_cast<int>(rec_.size()) - 1;
}

std::vector<Basis1D> bases_from_distributions(std::span<const DistributionSpec> dists) {
  std::vector<Basis1D> out;
  out.reserve(dists.size());
  for (const auto& d : dists) out.push_back(Basis1D::from_distribution(d));
  return out;
}

}  // namespace ttanova
