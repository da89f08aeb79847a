#include "ttanova/multi_index.hpp"

#include <limits>

#include "ttanova/errors.hpp"

namespace ttanova {

int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Same degree: the index with the larger entry at the first difference
  // comes first.
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k)
    if (a[k] != b[k]) return a[k] > b[k];
  return a.size() < b.size();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // result * num / i is always integral; guard the product.
    if (result > std::numeric_limits<std::uint64_t>::max() / num)
      fail("SizeOverflow", "binomial coefficient overflows 64 bits");
    result = result * num / i;
  }
  return result;
}

std::uint64_t total_degree_count(int d, int p) {
  if (d < 1) fail("ConfigError", "dimension must be >= 1");
  if (p < 0) fail("ConfigError", "order must be >= 0");
  std::uint64_t k = binomial(p + d, d);
  if (k > 100000000ull)
    fail("SizeOverflow", "total-degree basis would have " + std::to_string(k) +
                             " indices (limit 1e8)");
  return k;
}

namespace {

void enumerate_degree(int d, int remaining, MultiIndex& cur,
                      std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(remaining);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur.push_back(a);
    enumerate_degree(d, remaining - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MultiIndexSet MultiIndexSet::total_degree(int d, int p) {
  std::uint64_t count = total_degree_count(d, p);
  MultiIndexSet set;
  set.dim_ = d;
  set.order_ = p;
  set.indices_.reserve(count);
  MultiIndex cur;
  for (int g = 0; g <= p; ++g) enumerate_degree(d, g, cur, set.indices_);
  return set;
}

}  // namespace ttanova
