#include "ttanova/surrogate.hpp"

#include <cmath>

#include "ttanova/errors.hpp"

namespace ttanova {

GpcSurrogate::GpcSurrogate(std::vector<Basis1D> bases, int order)
    : order_(order), bases_(std::move(bases)) {
  if (bases_.empty()) fail("ConfigError", "surrogate needs at least one dimension");
  if (order_ < 0) fail("ConfigError", "surrogate order must be >= 0");
}

void GpcSurrogate::set_coefficient(MultiIndex alpha, double value) {
  if (static_cast<int>(alpha.size()) != dimension())
    fail("ConfigError", "multi-index length does not match surrogate dimension");
  if (total_degree(alpha) > order_)
    fail("ConfigError", "multi-index degree exceeds surrogate order");
  if (value == 0.0)
    coeffs_.erase(alpha);
  else
    coeffs_[std::move(alpha)] = value;
}

void GpcSurrogate::add_coefficient(const MultiIndex& alpha, double value) {
  set_coefficient(alpha, coefficient(alpha) + value);
}

double GpcSurrogate::coefficient(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double GpcSurrogate::eval(std::span<const double> xi) const {
  const int d = dimension();
  if (static_cast<int>(xi.size()) != d)
    fail("ConfigError", "evaluation point dimension mismatch");
  // Per-dimension phi tables up to the degree actually used.
  std::vector<std::vector<double>> tab(d);
  for (int k = 0; k < d; ++k) {
    int deg = max_degree_in_dim(k);
    tab[k].resize(deg + 1);
    bases_[k].phi_row(deg, xi[k], tab[k].data());
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    double prod = c;
    for (int k = 0; k < d; ++k)
      if (alpha[k] > 0) prod *= tab[k][alpha[k]];
    sum += prod;
  }
  return sum;
}

GpcSurrogate::Stats GpcSurrogate::stats() const {
  Stats s;
  for (const auto& [alpha, c] : coeffs_) {
    if (total_degree(alpha) == 0)
      s.mean = c;
    else
      s.variance += c * c;
  }
  return s;
}

int GpcSurrogate::max_degree_in_dim(int k) const {
  int deg = 0;
  for (const auto& [alpha, c] : coeffs_) deg = std::max(deg, alpha[k]);
  return deg;
}

double eval_basis(const MultiIndex& alpha, std::span<const Basis1D> bases,
                  std::span<const double> xi) {
  if (alpha.size() != bases.size() || alpha.size() != xi.size())
    fail("ConfigError", "eval_basis length mismatch");
  double prod = 1.0;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (alpha[k] > 0) prod *= bases[k].phi(alpha[k], xi[k]);
  return prod;
}

}  // namespace ttanova
