#include "ttanova/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "ttanova/errors.hpp"

namespace ttanova {

namespace {

double hypot2(double a, double b) {
  double absa = std::fabs(a), absb = std::fabs(b);
  if (absa > absb) {
    double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  if (absb == 0.0) return 0.0;
  double r = absa / absb;
  return absb * std::sqrt(1.0 + r * r);
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail("ConfigError", "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<int> lu_factor(Matrix& a) {
  const int n = a.rows();
  if (a.cols() != n) fail("ConfigError", "lu_factor requires a square matrix");
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::fabs(v));
  const double tiny = scale * n * std::numeric_limits<double>::epsilon();

  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int imax = k;
    double vmax = std::fabs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(a(i, k));
      if (v > vmax) {
        vmax = v;
        imax = i;
      }
    }
    if (!(vmax > tiny))
      fail("SingularSystem", "pivot " + std::to_string(k) + " is negligible");
    if (imax != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(imax, j));
      std::swap(piv[k], piv[imax]);
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      double lik = a(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return piv;
}

void lu_solve_inplace(const Matrix& lu, const std::vector<int>& piv,
                      std::vector<double>& b) {
  const int n = lu.rows();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
  b = std::move(x);
}

Matrix solve(Matrix a, Matrix b) {
  auto piv = lu_factor(a);
  const int n = a.rows();
  std::vector<double> col(n);
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    lu_solve_inplace(a, piv, col);
    for (int i = 0; i < n; ++i) b(i, j) = col[i];
  }
  return b;
}

Matrix inverse(Matrix a) { return solve(std::move(a), Matrix::identity(a.rows())); }

QrResult qr_col_pivot(const Matrix& a, double rank_tol) {
  const int m = a.rows(), n = a.cols();
  Matrix r = a;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Householder vectors stored per step (v, rows j..m-1).
  std::vector<std::vector<double>> hh;
  const int kmax = std::min(m, n);
  double pivot0 = 0.0;
  int rank = 0;

  for (int k = 0; k < kmax; ++k) {
    // Column norms are recomputed exactly each step; sizes here are small
    // and downdating is a classic source of rank misdetection.
    int jbest = k;
    double best = -1.0;
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < m; ++i) s += r(i, j) * r(i, j);
      if (s > best) {
        best = s;
        jbest = j;
      }
    }
    if (jbest != k) {
      for (int i = 0; i < m; ++i) std::swap(r(i, k), r(i, jbest));
      std::swap(perm[k], perm[jbest]);
    }
    double norm = std::sqrt(std::max(best, 0.0));
    if (k == 0) pivot0 = norm;
    if (!(norm > rank_tol * pivot0) || norm == 0.0) break;

    std::vector<double> v(m - k);
    double alpha = r(k, k) >= 0.0 ? -norm : norm;
    v[0] = r(k, k) - alpha;
    for (int i = k + 1; i < m; ++i) v[i - k] = r(i, k);
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 > 0.0) {
      for (int j = k; j < n; ++j) {
        double dot = 0.0;
        for (int i = k; i < m; ++i) dot += v[i - k] * r(i, j);
        double f = 2.0 * dot / vnorm2;
        for (int i = k; i < m; ++i) r(i, j) -= f * v[i - k];
      }
    }
    hh.push_back(std::move(v));
    rank = k + 1;
  }

  // Q = H_0 ... H_{rank-1} applied to the first `rank` identity columns.
  Matrix q(m, rank);
  for (int j = 0; j < rank; ++j) q(j, j) = 1.0;
  for (int k = rank - 1; k >= 0; --k) {
    const auto& v = hh[k];
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    for (int j = 0; j < rank; ++j) {
      double dot = 0.0;
      for (int i = k; i < m; ++i) dot += v[i - k] * q(i, j);
      double f = 2.0 * dot / vnorm2;
      for (int i = k; i < m; ++i) q(i, j) -= f * v[i - k];
    }
  }
  return QrResult{std::move(q), rank, std::move(perm)};
}

SvdResult jacobi_svd(Matrix a) {
  const int m = a.rows(), n = a.cols();
  if (m < n) fail("ConfigError", "jacobi_svd expects rows >= cols");
  Matrix v = Matrix::identity(n);
  const double tol = 1e-15;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (std::fabs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
        converged = false;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (int i = 0; i < m; ++i) {
          double x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (int i = 0; i < n; ++i) {
          double x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(s);
    if (sigma[j] > 0.0)
      for (int i = 0; i < m; ++i) a(i, j) /= sigma[j];
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return sigma[x] > sigma[y]; });
  Matrix u(m, n), vs(n, n);
  std::vector<double> ss(n);
  for (int j = 0; j < n; ++j) {
    ss[j] = sigma[order[j]];
    for (int i = 0; i < m; ++i) u(i, j) = a(i, order[j]);
    for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
  }
  return SvdResult{std::move(u), std::move(ss), std::move(vs)};
}

double condition_number(const Matrix& a) {
  SvdResult s = a.rows() >= a.cols() ? jacobi_svd(a) : jacobi_svd(a.transposed());
  double hi = s.sigma.front(), lo = s.sigma.back();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

TridiagEigen tridiag_eigen_ql(std::vector<double> d, std::vector<double> e) {
  // Implicit-shift QL for a symmetric tridiagonal matrix, after the Algol
  // tql2 procedure (Bowdler, Martin, Reinsch, Wilkinson; EISPACK lineage),
  // with the eigenvector accumulation reduced to the first row.
  const int n = static_cast<int>(d.size());
  if (n == 0) fail("ConfigError", "empty tridiagonal matrix");
  if (static_cast<int>(e.size()) != n - 1)
    fail("ConfigError", "offdiagonal must have n-1 entries");
  e.push_back(0.0);

  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) fail("InvalidRecurrence", "tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  TridiagEigen out;
  out.values.resize(n);
  out.first_row.resize(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = d[order[i]];
    out.first_row[i] = z[order[i]];
  }
  return out;
}

}  // namespace ttanova
