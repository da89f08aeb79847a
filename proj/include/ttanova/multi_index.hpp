#pragma once

#include <cstdint>
#include <vector>

namespace ttanova {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

// Graded lexicographic order: lower total degree first; within a degree,
// indices with larger leading entries first ((2,0) < (1,1) < (0,2)).
// This fixes the one-to-one correspondence between linear positions and
// multi-indices everywhere (enumeration, serialization, collocation rows).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Number of multi-indices with |alpha| <= p in d dimensions:
// (p+d)! / (p! d!). Throws SizeOverflow above the 1e8 guard.
std::uint64_t total_degree_count(int d, int p);

// binom(n, k) in exact integer arithmetic with an overflow guard.
std::uint64_t binomial(int n, int k);

class MultiIndexSet {
public:
  // All alpha with 0 <= |alpha| <= p, graded-lex ordered.
  static MultiIndexSet total_degree(int d, int p);

  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  int dimension() const { return dim_; }
  int order() const { return order_; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

private:
  int dim_ = 0;
  int order_ = 0;
  std::vector<MultiIndex> indices_;
};

}  // namespace ttanova
