#include "ttanova/tensor_train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "ttanova/errors.hpp"
#include "ttanova/log.hpp"
#include "ttanova/rng.hpp"

namespace ttanova {

Matrix Tensor3::slice(int j) const {
  Matrix m(r0, r1);
  for (int a = 0; a < r0; ++a)
    for (int b = 0; b < r1; ++b) m(a, b) = at(a, j, b);
  return m;
}

TensorTrain::TensorTrain(std::vector<Tensor3> cores) : cores_(std::move(cores)) {
  if (cores_.empty()) fail("ConfigError", "tensor train needs at least one core");
  if (cores_.front().r0 != 1 || cores_.back().r1 != 1)
    fail("ConfigError", "boundary TT-ranks must be 1");
  for (std::size_t k = 0; k + 1 < cores_.size(); ++k)
    if (cores_[k].r1 != cores_[k + 1].r0)
      fail("ConfigError", "TT core shapes do not chain at bond " + std::to_string(k));
  for (const auto& c : cores_)
    if (c.n < 1) fail("ConfigError", "TT mode sizes must be >= 1");
}

std::vector<int> TensorTrain::mode_sizes() const {
  std::vector<int> m(cores_.size());
  for (std::size_t k = 0; k < cores_.size(); ++k) m[k] = cores_[k].n;
  return m;
}

std::vector<int> TensorTrain::ranks() const {
  std::vector<int> r(cores_.size() + 1);
  r[0] = 1;
  for (std::size_t k = 0; k < cores_.size(); ++k) r[k + 1] = cores_[k].r1;
  return r;
}

int TensorTrain::max_interior_rank() const {
  int r = 1;
  for (std::size_t k = 0; k + 1 < cores_.size(); ++k) r = std::max(r, cores_[k].r1);
  return r;
}

double TensorTrain::eval(std::span<const int> idx) const {
  if (idx.size() != cores_.size())
    fail("ConfigError", "TT evaluation index has wrong length");
  std::vector<double> v{1.0}, next;
  for (std::size_t k = 0; k < cores_.size(); ++k) {
    const Tensor3& g = cores_[k];
    if (idx[k] < 0 || idx[k] >= g.n)
      fail("ConfigError", "TT index out of range in mode " + std::to_string(k));
    next.assign(g.r1, 0.0);
    for (int a = 0; a < g.r0; ++a) {
      double va = v[a];
      if (va == 0.0) continue;
      for (int b = 0; b < g.r1; ++b) next[b] += va * g.at(a, idx[k], b);
    }
    v = next;
  }
  return v[0];
}

DenseTensor::DenseTensor(std::vector<int> modes_) : modes(std::move(modes_)) {
  std::size_t total = 1;
  for (int m : modes) {
    if (m < 1) fail("ConfigError", "tensor mode sizes must be >= 1");
    total *= static_cast<std::size_t>(m);
    if (total > 10000000ull)
      fail("SizeOverflow", "dense tensor exceeds the 1e7-element limit");
  }
  a.assign(total, 0.0);
}

namespace {

std::size_t dense_offset(const std::vector<int>& modes, std::span<const int> idx) {
  std::size_t off = 0;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= modes[k])
      fail("ConfigError", "tensor index out of range");
    off = off * static_cast<std::size_t>(modes[k]) + static_cast<std::size_t>(idx[k]);
  }
  return off;
}

}  // namespace

double& DenseTensor::at(std::span<const int> idx) { return a[dense_offset(modes, idx)]; }
double DenseTensor::at(std::span<const int> idx) const {
  return a[dense_offset(modes, idx)];
}

TensorTrain tt_svd(const DenseTensor& dense, double eps) {
  const int d = static_cast<int>(dense.modes.size());
  double fro = 0.0;
  for (double x : dense.a) fro += x * x;
  fro = std::sqrt(fro);

  if (d == 1) {
    Tensor3 g(1, dense.modes[0], 1);
    g.a = dense.a;
    return TensorTrain({std::move(g)});
  }
  const double delta = eps * fro / std::sqrt(static_cast<double>(d - 1));

  std::vector<Tensor3> cores;
  cores.reserve(d);
  int r_prev = 1;
  // Current unfolding: (r_prev * m_k) rows by (remaining modes) columns.
  std::size_t rest = dense.a.size();
  Matrix cur(1, static_cast<int>(rest));
  for (std::size_t i = 0; i < rest; ++i) cur(0, i) = dense.a[i];

  for (int k = 0; k < d - 1; ++k) {
    const int mk = dense.modes[k];
    rest /= static_cast<std::size_t>(mk);
    Matrix m(r_prev * mk, static_cast<int>(rest));
    // cur is r_prev x (mk * rest); regroup the mode into the rows.
    for (int a = 0; a < r_prev; ++a)
      for (int i = 0; i < mk; ++i)
        for (std::size_t j = 0; j < rest; ++j)
          m(a * mk + i, static_cast<int>(j)) =
              cur(a, static_cast<int>(i * rest + j));

    // Left singular vectors of m; transpose when wide so Jacobi runs tall.
    Matrix u;
    std::vector<double> sigma;
    if (m.rows() >= m.cols()) {
      SvdResult s = jacobi_svd(m);
      u = std::move(s.u);
      sigma = std::move(s.sigma);
    } else {
      SvdResult s = jacobi_svd(m.transposed());
      u = std::move(s.v);
      sigma = std::move(s.sigma);
    }

    // Smallest rank whose discarded tail stays within the per-step budget.
    int rmax = static_cast<int>(sigma.size());
    int r = rmax;
    double tail = 0.0;
    while (r > 1) {
      double t = tail + sigma[r - 1] * sigma[r - 1];
      if (std::sqrt(t) > delta) break;
      tail = t;
      --r;
    }

    Tensor3 core(r_prev, mk, r);
    for (int a = 0; a < r_prev; ++a)
      for (int i = 0; i < mk; ++i)
        for (int b = 0; b < r; ++b) core.at(a, i, b) = u(a * mk + i, b);
    cores.push_back(std::move(core));

    // Carry u^T m forward as the next unfolding.
    Matrix next(r, static_cast<int>(rest));
    for (int b = 0; b < r; ++b)
      for (int i = 0; i < m.rows(); ++i) {
        double uib = u(i, b);
        if (uib == 0.0) continue;
        for (int j = 0; j < m.cols(); ++j) next(b, j) += uib * m(i, j);
      }
    cur = std::move(next);
    r_prev = r;
  }

  Tensor3 last(r_prev, dense.modes[d - 1], 1);
  for (int a = 0; a < r_prev; ++a)
    for (int i = 0; i < dense.modes[d - 1]; ++i) last.at(a, i, 0) = cur(a, i);
  cores.push_back(std::move(last));
  return TensorTrain(std::move(cores));
}

FunctionalTensor::FunctionalTensor(std::vector<int> modes,
                                   std::function<double(std::span<const int>)> f)
    : modes_(std::move(modes)), f_(std::move(f)),
      count_(std::make_shared<long long>(0)) {
  if (modes_.empty()) fail("ConfigError", "functional tensor needs at least one mode");
  for (int m : modes_)
    if (m < 1) fail("ConfigError", "tensor mode sizes must be >= 1");
}

double FunctionalTensor::operator()(std::span<const int> idx) const {
  ++*count_;
  return f_(idx);
}

std::vector<int> maxvol(const Matrix& m) {
  const int n = m.rows(), r = m.cols();
  if (n < r) fail("RankDeficient", "maxvol needs at least as many rows as columns");

  // Initial rows: partial-pivoted rectangular LU.
  Matrix a = m;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::fabs(x));
  const double tiny = scale * n * std::numeric_limits<double>::epsilon();
  for (int j = 0; j < r; ++j) {
    int imax = j;
    double vmax = std::fabs(a(j, j));
    for (int i = j + 1; i < n; ++i)
      if (std::fabs(a(i, j)) > vmax) {
        vmax = std::fabs(a(i, j));
        imax = i;
      }
    if (!(vmax > tiny)) fail("RankDeficient", "maxvol input has deficient column rank");
    if (imax != j) {
      for (int l = 0; l < r; ++l) std::swap(a(j, l), a(imax, l));
      std::swap(perm[j], perm[imax]);
    }
    for (int i = j + 1; i < n; ++i) {
      a(i, j) /= a(j, j);
      for (int l = j + 1; l < r; ++l) a(i, l) -= a(i, j) * a(j, l);
    }
  }
  std::vector<int> rows(perm.begin(), perm.begin() + r);

  const double delta = 1e-2;
  for (int iter = 0; iter < 100; ++iter) {
    Matrix sub(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub(i, j) = m(rows[i], j);
    // b = m * sub^{-1}: solve sub^T x = row^T for every row of m.
    Matrix bt = solve(sub.transposed(), m.transposed());
    int bi = -1, bj = -1;
    double bmax = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        double v = std::fabs(bt(j, i));
        if (v > bmax) {
          bmax = v;
          bi = i;
          bj = j;
        }
      }
    if (bmax <= 1.0 + delta) {
      std::sort(rows.begin(), rows.end());
      return rows;
    }
    rows[bj] = bi;
  }
  fail("MaxvolStall", "maxvol did not converge within 100 swaps");
}

namespace {

using IndexTuple = std::vector<int>;

IndexTuple concat(const IndexTuple& a, int mid, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(a.size() + 1 + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.push_back(mid);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Quasi-maxvol square subselection when one side of a cross outgrew the
// other after a sweep.
std::vector<int> square_select(const Matrix& x, bool rows_bigger) {
  if (rows_bigger) return maxvol(x);
  return maxvol(x.transposed());
}

class CrossEngine {
public:
  CrossEngine(const FunctionalTensor& f, const CrossOptions& opt)
      : f_(f), opt_(opt), modes_(f.modes()), d_(static_cast<int>(modes_.size())),
        rng_(opt.seed ^ 0x7474616e6f7661ull) {}

  CrossResult run() {
    long long evals_before = f_.evaluations();
    CrossResult result;
    if (d_ == 1) {
      Tensor3 g(1, modes_[0], 1);
      std::vector<int> idx(1);
      for (int i = 0; i < modes_[0]; ++i) {
        idx[0] = i;
        g.at(0, i, 0) = f_(idx);
      }
      result.tt = TensorTrain({std::move(g)});
      result.evaluations = f_.evaluations() - evals_before;
      return result;
    }

    draw_validation_set();
    init_suffix_sets(opt_.init_rank);
    left_sets_.assign(d_ - 1, {});

    int target = opt_.init_rank;
    for (int pair = 1; pair <= opt_.max_sweeps; ++pair) {
      sweep_left_right();
      sweep_right_left();
      std::optional<TensorTrain> tt = assemble();
      double err = tt ? validation_error(*tt)
                      : std::numeric_limits<double>::infinity();
      if (tt && err <= opt_.eps) {
        result.tt = std::move(*tt);
        result.sweep_pairs = pair;
        result.validation_error = err;
        result.evaluations = f_.evaluations() - evals_before;
        log_debug("tt_cross converged: rank " +
                  std::to_string(result.tt.max_interior_rank()) + ", " +
                  std::to_string(pair) + " sweep pairs, err " + std::to_string(err));
        return result;
      }
      if (target >= opt_.max_rank)
        fail("MaxRankExceeded",
             "validation error " + std::to_string(err) + " above " +
                 std::to_string(opt_.eps) + " at rank " + std::to_string(target));
      ++target;
      grow_suffix_sets();
    }
    fail("MaxRankExceeded", "validation error still above target after " +
                                std::to_string(opt_.max_sweeps) + " sweep pairs");
  }

private:
  const FunctionalTensor& f_;
  const CrossOptions& opt_;
  std::vector<int> modes_;
  int d_;
  Rng rng_;
  // Bond k lies between modes k and k+1; left_sets_[k] holds prefix tuples
  // of length k+1, right_sets_[k] suffix tuples of length d-1-k.
  std::vector<std::vector<IndexTuple>> left_sets_;
  std::vector<std::vector<IndexTuple>> right_sets_;
  std::vector<IndexTuple> validation_idx_;
  std::vector<double> validation_val_;

  IndexTuple random_suffix(int bond) {
    IndexTuple t(d_ - 1 - bond);
    for (int j = 0; j < static_cast<int>(t.size()); ++j)
      t[j] = rng_.uniform_int(modes_[bond + 1 + j]);
    return t;
  }

  void draw_validation_set() {
    validation_idx_.resize(opt_.validation_points);
    validation_val_.resize(opt_.validation_points);
    IndexTuple idx(d_);
    for (int v = 0; v < opt_.validation_points; ++v) {
      for (int k = 0; k < d_; ++k) idx[k] = rng_.uniform_int(modes_[k]);
      validation_idx_[v] = idx;
      validation_val_[v] = f_(idx);
    }
  }

  void init_suffix_sets(int count) {
    right_sets_.assign(d_ - 1, {});
    for (int k = 0; k < d_ - 1; ++k)
      for (int c = 0; c < count; ++c) add_suffix(k);
  }

  void add_suffix(int bond) {
    // Right-side capacity: product of mode sizes after the bond.
    double capacity = 1.0;
    for (int j = bond + 1; j < d_; ++j) capacity *= modes_[j];
    auto& set = right_sets_[bond];
    if (static_cast<double>(set.size()) >= capacity) return;
    for (int attempt = 0; attempt < 64; ++attempt) {
      IndexTuple t = random_suffix(bond);
      if (std::find(set.begin(), set.end(), t) == set.end()) {
        set.push_back(t);
        return;
      }
    }
  }

  void grow_suffix_sets() {
    for (int k = 0; k < d_ - 1; ++k) add_suffix(k);
  }

  void sweep_left_right() {
    static const std::vector<IndexTuple> kEmpty{IndexTuple{}};
    for (int k = 0; k < d_ - 1; ++k) {
      const auto& lefts = k == 0 ? kEmpty : left_sets_[k - 1];
      const auto& rights = right_sets_[k];
      const int nl = static_cast<int>(lefts.size());
      const int mk = modes_[k];
      const int nc = static_cast<int>(rights.size());

      Matrix c(nl * mk, nc);
      for (int a = 0; a < nl; ++a)
        for (int i = 0; i < mk; ++i)
          for (int b = 0; b < nc; ++b)
            c(a * mk + i, b) = f_(concat(lefts[a], i, rights[b]));

      std::vector<int> sel = pick_rows(c);
      std::vector<IndexTuple> chosen;
      chosen.reserve(sel.size());
      for (int s : sel) chosen.push_back(concat(lefts[s / mk], s % mk, IndexTuple{}));
      left_sets_[k] = std::move(chosen);
    }
  }

  void sweep_right_left() {
    static const std::vector<IndexTuple> kEmpty{IndexTuple{}};
    for (int k = d_ - 2; k >= 0; --k) {
      const auto& lefts = left_sets_[k];
      const auto& rights = k == d_ - 2 ? kEmpty : right_sets_[k + 1];
      const int nl = static_cast<int>(lefts.size());
      const int mk = modes_[k + 1];
      const int nr = static_cast<int>(rights.size());

      // Transposed unfolding: rows are suffix candidates (i, suffix).
      Matrix ct(mk * nr, nl);
      for (int a = 0; a < nl; ++a)
        for (int i = 0; i < mk; ++i)
          for (int b = 0; b < nr; ++b)
            ct(i * nr + b, a) = f_(concat(lefts[a], i, rights[b]));

      std::vector<int> sel = pick_rows(ct);
      std::vector<IndexTuple> chosen;
      chosen.reserve(sel.size());
      for (int s : sel) chosen.push_back(concat(IndexTuple{}, s / nr, rights[s % nr]));
      right_sets_[k] = std::move(chosen);
    }
  }

  // Rank-revealing row selection: QR with column pivoting truncates to the
  // revealed rank, maxvol picks the quasi-dominant rows of Q.
  std::vector<int> pick_rows(const Matrix& c) {
    QrResult qr = qr_col_pivot(c, 1e-13);
    if (qr.rank == 0) return {0};  // zero block; keep a deterministic pivot
    return maxvol(qr.q);
  }

  std::optional<TensorTrain> assemble() {
    // Square-ize every cross and invert it into the neighboring core.
    std::vector<std::vector<IndexTuple>> lsets = left_sets_;
    std::vector<std::vector<IndexTuple>> rsets = right_sets_;
    for (int k = 0; k < d_ - 1; ++k) {
      auto& ls = lsets[k];
      auto& rs = rsets[k];
      if (ls.size() != rs.size()) {
        Matrix x(static_cast<int>(ls.size()), static_cast<int>(rs.size()));
        for (std::size_t i = 0; i < ls.size(); ++i)
          for (std::size_t j = 0; j < rs.size(); ++j)
            x(static_cast<int>(i), static_cast<int>(j)) = f_(concat(ls[i], rs[j]));
        if (ls.size() > rs.size()) {
          std::vector<int> keep = square_select(x, true);
          std::vector<IndexTuple> trimmed;
          for (int i : keep) trimmed.push_back(ls[i]);
          ls = std::move(trimmed);
        } else {
          std::vector<int> keep = square_select(x, false);
          std::vector<IndexTuple> trimmed;
          for (int j : keep) trimmed.push_back(rs[j]);
          rs = std::move(trimmed);
        }
      }
    }

    static const std::vector<IndexTuple> kEmpty{IndexTuple{}};
    std::vector<Tensor3> cores(d_);
    for (int k = 0; k < d_; ++k) {
      const auto& lefts = k == 0 ? kEmpty : lsets[k - 1];
      const auto& rights = k == d_ - 1 ? kEmpty : rsets[k];
      const int r0 = static_cast<int>(lefts.size());
      const int r1 = static_cast<int>(rights.size());
      const int mk = modes_[k];

      Matrix fmat(r0 * mk, r1);
      for (int a = 0; a < r0; ++a)
        for (int i = 0; i < mk; ++i)
          for (int b = 0; b < r1; ++b)
            fmat(a * mk + i, b) = f_(concat(lefts[a], i, rights[b]));

      if (k < d_ - 1) {
        // Fold in the inverse cross matrix: core = F * X^{-1}.
        Matrix x(r1, r1);
        for (int i = 0; i < r1; ++i)
          for (int j = 0; j < r1; ++j) x(i, j) = f_(concat(lsets[k][i], rsets[k][j]));
        try {
          fmat = solve(x.transposed(), fmat.transposed()).transposed();
        } catch (const Error&) {
          return std::nullopt;  // degenerate cross; caller grows the rank
        }
      }
      Tensor3 core(r0, mk, r1);
      for (int a = 0; a < r0; ++a)
        for (int i = 0; i < mk; ++i)
          for (int b = 0; b < r1; ++b) core.at(a, i, b) = fmat(a * mk + i, b);
      cores[k] = std::move(core);
    }
    return TensorTrain(std::move(cores));
  }

  double validation_error(const TensorTrain& tt) const {
    double num = 0.0, den = 0.0;
    for (std::size_t v = 0; v < validation_idx_.size(); ++v) {
      double got = tt.eval(validation_idx_[v]);
      double want = validation_val_[v];
      num += (got - want) * (got - want);
      den += want * want;
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
  }
};

}  // namespace

CrossResult tt_cross(const FunctionalTensor& f, const CrossOptions& opt) {
  if (opt.init_rank < 1 || opt.max_rank < opt.init_rank)
    fail("ConfigError", "cross ranks must satisfy 1 <= init_rank <= max_rank");
  if (opt.max_sweeps < 1) fail("ConfigError", "max_sweeps must be >= 1");
  return CrossEngine(f, opt).run();
}

double tt_inner_rank1(const TensorTrain& tt,
                      std::span<const std::vector<double>> weights) {
  if (static_cast<int>(weights.size()) != tt.dim())
    fail("ConfigError", "rank-1 inner product needs one weight vector per mode");
  std::vector<double> v{1.0}, next;
  for (int k = 0; k < tt.dim(); ++k) {
    const Tensor3& g = tt.cores()[k];
    if (static_cast<int>(weights[k].size()) != g.n)
      fail("ConfigError", "weight vector length mismatch in mode " + std::to_string(k));
    // T_k = sum_i w_i G(:, i, :), then v <- v T_k.
    next.assign(g.r1, 0.0);
    for (int i = 0; i < g.n; ++i) {
      double w = weights[k][i];
      if (w == 0.0) continue;
      for (int a = 0; a < g.r0; ++a) {
        double va = v[a] * w;
        if (va == 0.0) continue;
        for (int b = 0; b < g.r1; ++b) next[b] += va * g.at(a, i, b);
      }
    }
    v = next;
  }
  return v[0];
}

double tt_frobenius(const TensorTrain& tt) {
  // Gram accumulation: P <- sum_i G(:,i,:)^T P G(:,i,:).
  Matrix p(1, 1);
  p(0, 0) = 1.0;
  for (int k = 0; k < tt.dim(); ++k) {
    const Tensor3& g = tt.cores()[k];
    Matrix next(g.r1, g.r1);
    for (int i = 0; i < g.n; ++i) {
      Matrix s = g.slice(i);
      Matrix ps = p * s;
      for (int b = 0; b < g.r1; ++b)
        for (int b2 = 0; b2 < g.r1; ++b2) {
          double acc = 0.0;
          for (int a = 0; a < g.r0; ++a) acc += s(a, b) * ps(a, b2);
          next(b, b2) += acc;
        }
    }
    p = std::move(next);
  }
  return std::sqrt(std::max(0.0, p(0, 0)));
}

}  // namespace ttanova
