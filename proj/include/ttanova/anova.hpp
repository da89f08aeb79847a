#pragma once

#include <span>
#include <vector>

#include "ttanova/stoch_testing.hpp"

namespace ttanova {

struct AnchoredConfig {
  int d_eff = 2;
  double sigma = 1e-2;   // variance-share pruning threshold
  int p = 3;             // per-term total polynomial order
  std::vector<double> anchor;  // empty -> per-dimension mean
  int threads = 0;             // 0 -> hardware concurrency
};

// One retained decomposition term g_s over the active variables `vars`
// (0-based, sorted ascending). The surrogate lives in |s| dimensions;
// embedding into the full space happens at assembly.
struct AnovaTerm {
  std::vector<int> vars;
  GpcSurrogate surrogate;
  double variance = 0.0;
};

struct LevelReport {
  int k = 0;
  std::vector<std::vector<int>> evaluated;  // sets fitted at this level
  std::vector<double> variances;
};

struct AnovaSurrogate {
  double g0 = 0.0;
  std::vector<AnovaTerm> terms;
  GpcSurrogate assembled;
  std::vector<LevelReport> levels;
  long long samples_used = 0;        // 1 + sum over fitted sets of K(|s|, p)
  long long unique_model_evals = 0;  // distinct points sent to the black box
};

struct SensitivityReport {
  std::vector<double> main;   // S_k
  std::vector<double> total;  // T_k
};

// All size-k subsets of {0..d-1} for k = 1..d_eff, deterministically
// (lexicographically) ordered. Throws SizeOverflow above 1e7 sets.
std::vector<std::vector<std::vector<int>>> init_level_sets(int d, int d_eff);

// Fixes the coordinates outside `vars` at the anchor.
ModelFn anchored_restriction(ModelFn model, std::vector<int> vars,
                             std::vector<double> anchor);

// Fits g_hat_s by stochastic testing on the anchored restriction, then
// subtracts g0 and every supplied lower term (pruned subsets contribute 0).
AnovaTerm extract_term(const ModelFn& model, const std::vector<int>& vars,
                       std::span<const double> anchor,
                       std::span<const Basis1D> bases, double g0,
                       std::span<const AnovaTerm* const> lower_terms, int p);

// Adaptive anchored decomposition: evaluates g0 at the anchor, then fits
// every surviving index set level by level; a set whose variance share
// theta_s = Var(g_s)/beta falls below sigma (beta accumulated over all
// levels up to and including the current one, whole level first) removes
// all its supersets from later levels. Univariate terms are always kept in
// the assembled expansion.
AnovaSurrogate adaptive_decompose(const ModelFn& model, std::span<const Basis1D> bases,
                                  const AnchoredConfig& config);

// N = 1 + sum_k |S_k| (k+p)!/(k!p!), exact integer arithmetic.
long long sample_count(std::span<const long long> level_sizes, int p);

// Main/total variance shares per input from a sparse expansion.
SensitivityReport sensitivities(const GpcSurrogate& s);

}  // namespace ttanova
