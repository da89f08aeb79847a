#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ttanova/linalg.hpp"

namespace ttanova {

// One tensor-train core G of shape (r0, n, r1); G(:, i, :) is an r0 x r1
// matrix slice.
struct Tensor3 {
  int r0 = 0, n = 0, r1 = 0;
  std::vector<double> a;  // layout (i0, j, i1), i1 fastest

  Tensor3() = default;
  Tensor3(int r0_, int n_, int r1_)
      : r0(r0_), n(n_), r1(r1_),
        a(static_cast<std::size_t>(r0_) * n_ * r1_, 0.0) {}

  double& at(int i0, int j, int i1) {
    return a[(static_cast<std::size_t>(i0) * n + j) * r1 + i1];
  }
  double at(int i0, int j, int i1) const {
    return a[(static_cast<std::size_t>(i0) * n + j) * r1 + i1];
  }
  Matrix slice(int j) const;
};

// Chain of cores G_1 .. G_d with boundary ranks 1; an element is the chained
// matrix product of the index-selected slices.
class TensorTrain {
public:
  TensorTrain() = default;
  explicit TensorTrain(std::vector<Tensor3> cores);

  int dim() const { return static_cast<int>(cores_.size()); }
  const std::vector<Tensor3>& cores() const { return cores_; }
  std::vector<int> mode_sizes() const;
  std::vector<int> ranks() const;  // r_0..r_d
  int max_interior_rank() const;

  double eval(std::span<const int> idx) const;  // 0-based indices

private:
  std::vector<Tensor3> cores_;
};

// Dense tensor in row-major layout (last index fastest); test oracles and
// the TT-SVD input format.
struct DenseTensor {
  std::vector<int> modes;
  std::vector<double> a;

  explicit DenseTensor(std::vector<int> modes_);
  std::size_t size() const { return a.size(); }
  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;
};

// Sequential truncated-SVD sweep with per-step threshold
// eps ||A||_F / sqrt(d-1); the result satisfies ||A - A_tt||_F <= eps ||A||_F.
TensorTrain tt_svd(const DenseTensor& dense, double eps);

// Black-box tensor: an element oracle over 0-based indices plus mode sizes.
// Copies share the evaluation counter.
class FunctionalTensor {
public:
  FunctionalTensor(std::vector<int> modes,
                   std::function<double(std::span<const int>)> f);

  double operator()(std::span<const int> idx) const;
  const std::vector<int>& modes() const { return modes_; }
  long long evaluations() const { return *count_; }

private:
  std::vector<int> modes_;
  std::function<double(std::span<const int>)> f_;
  std::shared_ptr<long long> count_;
};

// Indices of an r x r quasi-maximum-volume submatrix of a tall n x r matrix
// of full column rank: pivoted-LU start, then row swaps while any entry of
// M M_I^{-1} exceeds 1 + delta (delta = 1e-2), at most 100 swaps.
std::vector<int> maxvol(const Matrix& m);

struct CrossOptions {
  double eps = 1e-12;        // relative validation error target
  int max_rank = 50;
  int max_sweeps = 10;       // left-right/right-left sweep pairs
  int init_rank = 1;
  std::uint64_t seed = 0;
  int validation_points = 1000;
};

struct CrossResult {
  TensorTrain tt;
  long long evaluations = 0;   // oracle calls consumed by this run
  int sweep_pairs = 0;
  double validation_error = 0.0;
};

// TT-cross with nested index sets chosen by maxvol; candidate rank grows by
// one per unconverged sweep pair until the held-out validation error meets
// eps or max_rank / max_sweeps is exhausted (MaxRankExceeded).
CrossResult tt_cross(const FunctionalTensor& f, const CrossOptions& opt);

// <tt, W> for rank-one W = w1 x w2 x ... x wd, contracted core by core.
double tt_inner_rank1(const TensorTrain& tt,
                      std::span<const std::vector<double>> weights);

// Frobenius norm by core-wise Gram accumulation, no densification.
double tt_frobenius(const TensorTrain& tt);

}  // namespace ttanova
