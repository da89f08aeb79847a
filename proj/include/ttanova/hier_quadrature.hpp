#pragma once

#include <span>
#include <vector>

#include "ttanova/surrogate.hpp"
#include "ttanova/tensor_train.hpp"

namespace ttanova {

// Per-dimension univariate data reused across every moment integral:
// X(k, j, i) = phi_j of dimension k at its i-th Gauss node, plus the m-point
// rules themselves (canonical coordinates). Dimensions sharing a polynomial
// family share one table block.
struct EvalTable {
  int dim = 0;
  int p = 0;  // highest stored polynomial degree
  int m = 0;  // nodes per dimension
  std::vector<QuadratureRule> rules;
  std::vector<Matrix> phi;  // per dimension, (p+1) x m

  std::vector<std::vector<double>> weight_vectors() const;
};

EvalTable build_eval_table(std::span<const Basis1D> bases, int p, int m);

// Functional tensor of the intermediate variable on the full grid:
// A(i_1..i_d) = sum_alpha c_alpha prod_k X(k, alpha_k, i_k), evaluated from
// the sparse coefficient map only.
FunctionalTensor zeta_tensor(const GpcSurrogate& surrogate, const EvalTable& table);

// Zero-mean, unit-variance standardization of a subsystem output.
struct IntermediateVariable {
  GpcSurrogate standardized;
  double shift = 0.0;  // E[y]
  double scale = 1.0;  // sqrt(Var[y])
};

// E[q(zeta)] where q is a polynomial in monomial coefficients (low order
// first): composes q with the TT of A element-wise, cross-approximates the
// result and contracts against the rank-one weight tensor. Cross failures
// surface as MomentUnavailable.
double tt_moment(const TensorTrain& a_tt, std::span<const double> q_coeffs,
                 const EvalTable& table, const CrossOptions& opt);

// Synthesized orthonormal basis and Gauss rule for an intermediate
// variable.
struct CustomBasis {
  std::vector<RecurrencePair> recurrence;  // j = 0..p
  QuadratureRule rule;                     // p+1 points
  std::vector<int> a_ranks;                // TT-rank profile of A (diagnostic)
  TensorTrain a_tt;                        // decomposition of A (diagnostic)
  long long oracle_evaluations = 0;
};

struct CustomBasisOptions {
  int m = 9;            // Gauss points per bottom-level dimension
  double eps = 1e-12;   // TT-cross relative target
  int max_rank = 50;
  int max_sweeps = 10;
  std::uint64_t seed = 0;
};

// Tensor-based three-term recurrence: builds the TT of A once, then walks
// j = 2..p computing kappa_j = E[pi_j^2]/E[pi_{j-1}^2] and
// gamma_j = E[zeta pi_j^2]/E[pi_j^2] with pi_j carried as monomial
// coefficients; ends with the Golub-Welsch rule of the recurrence.
// kappa_1 is computed numerically and must sit within 1e-8 of 1.
// p is capped at 8 (monomial conditioning).
CustomBasis custom_basis(const IntermediateVariable& zeta, int p,
                         const CustomBasisOptions& opt);

}  // namespace ttanova
