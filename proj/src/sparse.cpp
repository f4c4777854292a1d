#include "curvectrl/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "curvectrl/errors.hpp"

namespace curvectrl {

double CsrMatrix::operator()(int i, int j) const {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col_idx[k] == j) return values[k];
  return 0.0;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n_rows, 0.0);
  for (int i = 0; i < n_rows; ++i) d[i] = (*this)(i, i);
  return d;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (n_rows != n_cols) return false;
  for (int i = 0; i < n_rows; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      if (std::abs(values[k] - (*this)(col_idx[k], i)) > tol) return false;
  return true;
}

CsrMatrix CsrBuilder::build() const {
  std::vector<std::size_t> order(triplets_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (triplets_[a].row != triplets_[b].row) return triplets_[a].row < triplets_[b].row;
    return triplets_[a].col < triplets_[b].col;
  });

  CsrMatrix m;
  m.n_rows = n_rows_;
  m.n_cols = n_cols_;
  m.row_ptr.assign(n_rows_ + 1, 0);
  for (std::size_t k = 0; k < order.size();) {
    const Triplet& t = triplets_[order[k]];
    if (t.row < 0 || t.row >= n_rows_ || t.col < 0 || t.col >= n_cols_)
      throw std::invalid_argument("CsrBuilder: index out of range");
    double sum = 0.0;
    std::size_t j = k;
    while (j < order.size() && triplets_[order[j]].row == t.row && triplets_[order[j]].col == t.col)
      sum += triplets_[order[j++]].value;
    m.col_idx.push_back(t.col);
    m.values.push_back(sum);
    ++m.row_ptr[t.row + 1];
    k = j;
  }
  for (int i = 0; i < n_rows_; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

std::vector<double> spmv(const CsrMatrix& A, std::span<const double> x) {
  if (static_cast<int>(x.size()) != A.n_cols)
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(A.n_rows, 0.0);
  for (int i = 0; i < A.n_rows; ++i) {
    double sum = 0.0;
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) sum += A.values[k] * x[A.col_idx[k]];
    y[i] = sum;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

CgResult cg_solve(const CsrMatrix& A, std::span<const double> b, const CgOptions& opts) {
  if (A.n_rows != A.n_cols || static_cast<int>(b.size()) != A.n_rows)
    throw std::invalid_argument("cg_solve: dimension mismatch");
  const int n = A.n_rows;
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;

  CgResult result;
  result.x.assign(n, 0.0);
  const double b_norm = norm2(b);
  if (b_norm == 0.0) return result;
  const double target = opts.rel_tol * b_norm;

  std::vector<double> inv_diag;
  if (opts.precond == Preconditioner::jacobi) {
    inv_diag = A.diagonal();
    for (double& d : inv_diag) {
      if (d <= 0.0) throw std::invalid_argument("cg_solve: non-positive diagonal, matrix not SPD");
      d = 1.0 / d;
    }
  }
  auto apply_precond = [&](const std::vector<double>& r, std::vector<double>& z) {
    if (inv_diag.empty()) {
      z = r;
    } else {
      z.resize(r.size());
      for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    }
  };

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z, p, Ap;
  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);

  for (int iter = 1; iter <= max_iter; ++iter) {
    Ap = spmv(A, p);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) throw SolverFailure("cg_solve: matrix not positive definite", norm2(r), iter);
    const double alpha = rz / pAp;
    axpy(alpha, p, result.x);
    axpy(-alpha, Ap, r);
    result.iterations = iter;
    if (norm2(r) <= target) {
      // Certify on the true residual; the recurrence can drift.
      std::vector<double> true_r = spmv(A, result.x);
      for (int i = 0; i < n; ++i) true_r[i] = b[i] - true_r[i];
      result.residual = norm2(true_r);
      if (result.residual <= target) return result;
      r = std::move(true_r);
    }
    apply_precond(r, z);
    const double rz_next = dot(r, z);
    axpy(rz_next / rz - 1.0, p, p);  // p = z + beta p, done in two steps
    axpy(1.0, z, p);
    // The update above computes p = beta*p + z via p += (beta-1)p; p += z.
    rz = rz_next;
  }
  const double final_res = norm2(r);
  throw SolverFailure("cg_solve: no convergence within max_iter", final_res, result.iterations);
}

void dump_matrix(std::ostream& out, const CsrMatrix& A) {
  char buf[64];
  for (int i = 0; i < A.n_rows; ++i)
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, A.col_idx[k], A.values[k]);
      out << buf;
    }
}

}  // namespace curvectrl
