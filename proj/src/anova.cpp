#include "ttanova/anova.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "ttanova/errors.hpp"
#include "ttanova/log.hpp"

namespace ttanova {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<double>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (double x : v) {
      std::uint64_t bits;
      static_assert(sizeof bits == sizeof x);
      std::memcpy(&bits, &x, sizeof bits);
      h = (h ^ bits) * 0x100000001b3ull;
    }
    return h;
  }
};

// Thread-safe memoization of black-box calls keyed by the exact input
// vector; anchor-restricted points shared across terms are evaluated once.
class EvalCache {
public:
  explicit EvalCache(const ModelFn& model) : model_(model) {}

  double operator()(const std::vector<double>& point) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(point);
      if (it != cache_.end()) return it->second;
    }
    double v = model_(point);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(point, v);
    return v;
  }

  long long unique_evals() const {
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<long long>(cache_.size());
  }

private:
  const ModelFn& model_;
  mutable std::mutex mu_;
  std::unordered_map<std::vector<double>, double, VectorHash> cache_;
};

void enumerate_subsets(int d, int k, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= d - (k - static_cast<int>(cur.size())); ++i) {
    cur.push_back(i);
    enumerate_subsets(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}

bool contains_all(const std::vector<int>& superset, const std::vector<int>& subset) {
  return std::includes(superset.begin(), superset.end(), subset.begin(), subset.end());
}

// Embeds a multi-index over `vars` into `target_vars` coordinates.
MultiIndex embed_index(const MultiIndex& alpha, const std::vector<int>& vars,
                       const std::vector<int>& target_vars) {
  MultiIndex out(target_vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (alpha[i] == 0) continue;
    auto it = std::lower_bound(target_vars.begin(), target_vars.end(), vars[i]);
    out[static_cast<std::size_t>(it - target_vars.begin())] = alpha[i];
  }
  return out;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<std::vector<std::vector<int>>> init_level_sets(int d, int d_eff) {
  if (d_eff < 1 || d_eff > d)
    fail("ConfigError", "effective dimension must lie in [1, d]");
  unsigned long long total = 0;
  for (int k = 1; k <= d_eff; ++k) {
    total += binomial(d, k);
    if (total > 10000000ull)
      fail("SizeOverflow", "level sets would contain more than 1e7 index sets");
  }
  std::vector<std::vector<std::vector<int>>> levels(d_eff);
  for (int k = 1; k <= d_eff; ++k) {
    std::vector<int> cur;
    levels[k - 1].reserve(binomial(d, k));
    enumerate_subsets(d, k, 0, cur, levels[k - 1]);
  }
  return levels;
}

ModelFn anchored_restriction(ModelFn model, std::vector<int> vars,
                             std::vector<double> anchor) {
  if (vars.empty()) fail("ConfigError", "restriction needs a nonempty index set");
  return [model = std::move(model), vars = std::move(vars),
          anchor = std::move(anchor)](std::span<const double> xi_s) {
    std::vector<double> full = anchor;
    for (std::size_t i = 0; i < vars.size(); ++i) full[vars[i]] = xi_s[i];
    return model(full);
  };
}

AnovaTerm extract_term(const ModelFn& model, const std::vector<int>& vars,
                       std::span<const double> anchor,
                       std::span<const Basis1D> bases, double g0,
                       std::span<const AnovaTerm* const> lower_terms, int p) {
  std::vector<Basis1D> sub_bases;
  sub_bases.reserve(vars.size());
  for (int v : vars) sub_bases.push_back(bases[v]);

  ModelFn restricted = anchored_restriction(
      model, vars, std::vector<double>(anchor.begin(), anchor.end()));
  GpcSurrogate g_hat = fit_surrogate(restricted, sub_bases, p);

  // g_s = g_hat_s - g_0 - sum of retained lower terms, coefficient-wise.
  g_hat.add_coefficient(MultiIndex(vars.size(), 0), -g0);
  for (const AnovaTerm* t : lower_terms)
    for (const auto& [alpha, c] : t->surrogate.coefficients())
      g_hat.add_coefficient(embed_index(alpha, t->vars, vars), -c);

  AnovaTerm term;
  term.vars = vars;
  term.variance = g_hat.stats().variance;
  term.surrogate = std::move(g_hat);
  return term;
}

AnovaSurrogate adaptive_decompose(const ModelFn& model, std::span<const Basis1D> bases,
                                  const AnchoredConfig& config) {
  const int d = static_cast<int>(bases.size());
  std::vector<double> anchor = config.anchor;
  if (anchor.empty()) {
    anchor.resize(d);
    for (int k = 0; k < d; ++k) anchor[k] = bases[k].mean();
  }
  if (static_cast<int>(anchor.size()) != d)
    fail("ConfigError", "anchor length does not match dimension");
  if (!(config.sigma >= 0.0) || config.sigma >= 1.0)
    fail("ConfigError", "sigma must lie in [0, 1)");
  if (config.p < 1) fail("ConfigError", "order must be >= 1");

  auto levels = init_level_sets(d, config.d_eff);
  EvalCache cached(model);
  ModelFn cached_fn = [&cached](std::span<const double> xi) {
    return cached(std::vector<double>(xi.begin(), xi.end()));
  };

  AnovaSurrogate result;
  result.g0 = cached(anchor);
  result.samples_used = 1;

  // Terms indexed by variable set, for the subset subtraction.
  std::map<std::vector<int>, std::size_t> term_of_set;
  double beta = 0.0;

  for (int k = 1; k <= config.d_eff; ++k) {
    auto& sets = levels[k - 1];
    LevelReport report;
    report.k = k;
    report.evaluated = sets;
    report.variances.resize(sets.size());

    std::vector<AnovaTerm> fitted(sets.size());
    parallel_for(static_cast<int>(sets.size()), config.threads, [&](int i) {
      const auto& s = sets[i];
      std::vector<const AnovaTerm*> lower;
      for (const auto& [vars, idx] : term_of_set)
        if (vars.size() < s.size() && contains_all(s, vars))
          lower.push_back(&result.terms[idx]);
      fitted[i] = extract_term(cached_fn, s, anchor, bases, result.g0, lower, config.p);
    });

    // Whole level first: accumulate beta, then judge every theta against it.
    for (std::size_t i = 0; i < sets.size(); ++i) {
      report.variances[i] = fitted[i].variance;
      beta += fitted[i].variance;
      result.samples_used +=
          static_cast<long long>(binomial(k + config.p, config.p));
      term_of_set[sets[i]] = result.terms.size();
      result.terms.push_back(std::move(fitted[i]));
    }
    if (k == 1 && beta == 0.0)
      fail("DegenerateOutput", "model output has zero variance at level 1");

    for (std::size_t i = 0; i < sets.size(); ++i) {
      double theta = report.variances[i] / beta;
      if (theta < config.sigma) {
        for (int j = k + 1; j <= config.d_eff; ++j) {
          auto& higher = levels[j - 1];
          std::erase_if(higher, [&](const std::vector<int>& s_prime) {
            return contains_all(s_prime, sets[i]);
          });
        }
      }
    }
    log_info("level " + std::to_string(k) + ": fitted " + std::to_string(sets.size()) +
             " sets, cumulative variance " + std::to_string(beta));
    result.levels.push_back(std::move(report));
  }

  // Assemble the d-dimensional sparse expansion.
  std::vector<int> all_vars(d);
  for (int k = 0; k < d; ++k) all_vars[k] = k;
  GpcSurrogate assembled(std::vector<Basis1D>(bases.begin(), bases.end()), config.p);
  assembled.set_coefficient(MultiIndex(d, 0), result.g0);
  for (const auto& term : result.terms)
    for (const auto& [alpha, c] : term.surrogate.coefficients())
      assembled.add_coefficient(embed_index(alpha, term.vars, all_vars), c);
  result.assembled = std::move(assembled);
  result.unique_model_evals = cached.unique_evals();
  return result;
}

long long sample_count(std::span<const long long> level_sizes, int p) {
  long long n = 1;
  for (std::size_t k = 0; k < level_sizes.size(); ++k) {
    unsigned long long per_set = binomial(static_cast<int>(k + 1) + p, p);
    unsigned long long add = level_sizes[k] * per_set;
    if (level_sizes[k] != 0 && add / static_cast<unsigned long long>(level_sizes[k]) != per_set)
      fail("SizeOverflow", "sample count overflows");
    n += static_cast<long long>(add);
    if (n < 0) fail("SizeOverflow", "sample count overflows");
  }
  return n;
}

SensitivityReport sensitivities(const GpcSurrogate& s) {
  const int d = s.dimension();
  double var = s.stats().variance;
  if (!(var > 0.0)) fail("DegenerateOutput", "zero-variance expansion has no sensitivities");

  SensitivityReport r;
  r.main.assign(d, 0.0);
  r.total.assign(d, 0.0);
  for (const auto& [alpha, c] : s.coefficients()) {
    int active = -1, active_count = 0;
    for (int k = 0; k < d; ++k) {
      if (alpha[k] != 0) {
        active = k;
        ++active_count;
      }
    }
    if (active_count == 0) continue;
    double c2 = c * c;
    if (active_count == 1) r.main[active] += c2;
    for (int k = 0; k < d; ++k)
      if (alpha[k] != 0) r.total[k] += c2;
  }
  for (int k = 0; k < d; ++k) {
    r.main[k] /= var;
    r.total[k] /= var;
  }
  return r;
}

}  // namespace ttanova
