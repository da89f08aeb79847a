#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ttanova/distribution.hpp"
#include "ttanova/quadrature.hpp"

namespace ttanova::testing {

inline double rel_err(double got, double want) {
  double scale = std::max(1.0, std::fabs(want));
  return std::fabs(got - want) / scale;
}

// Error of a quadrature sum against an exact moment, scaled by the
// absolute-moment magnitude: odd moments of symmetric measures are exact
// zeros reached by cancellation of large summands, so the meaningful scale
// is sum w |x|^t, not |moment|.
inline double quadrature_moment_err(const QuadratureRule& rule, int t, double want) {
  double q = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    double p = std::pow(rule.nodes[k], t);
    q += rule.weights[k] * p;
    scale = std::max(scale, rule.weights[k] * std::fabs(p) * rule.size());
  }
  scale = std::max(scale, std::fabs(want));
  return std::fabs(q - want) / scale;
}

// Independent oracle for three-term recurrence coefficients: given raw
// moments m_0..m_{2n} of a measure, run the classical moment-based
// Gram-Schmidt (Chebyshev algorithm) on monic polynomials represented by
// monomial coefficients in extended precision. Accurate for small n only,
// which is all the tests need.
inline std::vector<RecurrencePair> stieltjes_from_moments(
    const std::vector<long double>& moments, int n) {
  using Poly = std::vector<long double>;  // monomial coefficients, low order first
  auto inner = [&](const Poly& a, const Poly& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        s += a[i] * b[j] * moments.at(i + j);
    return s;
  };
  auto shift = [](const Poly& a) {  // multiply by x
    Poly r(a.size() + 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
  };

  std::vector<RecurrencePair> rec(n);
  Poly prev;           // pi_{-1} = 0
  Poly cur = {1.0L};   // pi_0 = 1
  long double norm_prev = 1.0L;
  long double norm_cur = inner(cur, cur);  // = m_0 = 1 for probability measures
  rec[0] = {0.0, 1.0};
  for (int j = 0; j < n; ++j) {
    long double gamma = inner(shift(cur), cur) / norm_cur;
    long double kappa = j == 0 ? 1.0L : norm_cur / norm_prev;
    rec[j] = {static_cast<double>(gamma), static_cast<double>(kappa)};
    if (j + 1 == n) break;
    Poly next = shift(cur);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i] -= gamma * cur[i];
    if (!prev.empty()) {
      long double k = norm_cur / norm_prev;
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= k * prev[i];
    }
    prev = cur;
    cur = next;
    norm_prev = norm_cur;
    norm_cur = inner(cur, cur);
  }
  return rec;
}

// Canonical raw moments written directly from the standard closed forms.
inline std::vector<long double> standard_normal_moments(int count) {
  std::vector<long double> m(count, 0.0L);
  m[0] = 1.0L;
  for (int t = 2; t < count; t += 2) m[t] = m[t - 2] * (t - 1);
  return m;
}

inline std::vector<long double> uniform_pm1_moments(int count) {
  std::vector<long double> m(count, 0.0L);
  for (int t = 0; t < count; t += 2) m[t] = 1.0L / (t + 1);
  return m;
}

inline std::vector<long double> gamma_moments(long double shape, int count) {
  std::vector<long double> m(count);
  m[0] = 1.0L;
  for (int t = 1; t < count; ++t) m[t] = m[t - 1] * (shape + t - 1);
  return m;
}

}  // namespace ttanova::testing
