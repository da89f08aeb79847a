#pragma once

#include <span>
#include <vector>

namespace ttanova {

// Dense row-major matrix. The decompositions below are written for the
// small systems this library produces (collocation matrices, tensor-train
// core unfoldings, Jacobi matrices) -- at most a few hundred rows.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n);

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Matrix transposed() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

// LU factorization with partial pivoting, in place. Returns the pivot
// permutation. Throws SingularSystem when a pivot falls below a relative
// floor of the matrix scale.
std::vector<int> lu_factor(Matrix& a);
void lu_solve_inplace(const Matrix& lu, const std::vector<int>& piv, std::vector<double>& b);

// Solves a x = b for square a (b may have several right-hand sides as columns).
Matrix solve(Matrix a, Matrix b);
Matrix inverse(Matrix a);

// Thin Householder QR with column pivoting. Q has `rank` orthonormal
// columns spanning the numerically dominant column space; columns whose
// pivot falls below rank_tol * (largest pivot) are truncated.
struct QrResult {
  Matrix q;                // rows x rank
  int rank = 0;
  std::vector<int> perm;   // column permutation applied
};
QrResult qr_col_pivot(const Matrix& a, double rank_tol = 1e-13);

// One-sided Jacobi SVD of a tall-or-square matrix (rows >= cols):
// a = u * diag(sigma) * v^T with singular values sorted descending.
// Columns of zero norm yield sigma = 0 and a zero column in u.
struct SvdResult {
  Matrix u;                  // rows x cols
  std::vector<double> sigma; // cols
  Matrix v;                  // cols x cols
};
SvdResult jacobi_svd(Matrix a);

// 2-norm condition number; accepts any shape (transposes internally).
double condition_number(const Matrix& a);

// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift
// QL, accumulating only the first row of the eigenvector matrix (all that a
// Gauss quadrature weight needs). Output is sorted by eigenvalue ascending.
struct TridiagEigen {
  std::vector<double> values;
  std::vector<double> first_row;  // first components of the eigenvectors
};
TridiagEigen tridiag_eigen_ql(std::vector<double> diag, std::vector<double> offdiag);

}  // namespace ttanova
