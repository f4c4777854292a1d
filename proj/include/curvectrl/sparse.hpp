#ifndef CURVECTRL_SPARSE_HPP
#define CURVECTRL_SPARSE_HPP

#include <iosfwd>
#include <span>
#include <vector>

namespace curvectrl {

// Compressed-sparse-row matrix. col_idx strictly increasing within each row;
// immutable after assembly.
struct CsrMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_ptr;   // size n_rows + 1, row_ptr[0] = 0
  std::vector<int> col_idx;   // size nnz
  std::vector<double> values; // size nnz

  int nnz() const { return static_cast<int>(col_idx.size()); }
  double operator()(int i, int j) const;  // 0 where no entry is stored
  std::vector<double> diagonal() const;
  bool is_symmetric(double tol = 1e-14) const;
};

// Accumulates (i, j, value) triplets and compresses them into CSR, summing
// duplicates in a fixed order so assembly is deterministic.
class CsrBuilder {
 public:
  CsrBuilder(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}
  void add(int i, int j, double value) { triplets_.push_back({i, j, value}); }
  CsrMatrix build() const;

 private:
  struct Triplet {
    int row, col;
    double value;
  };
  int n_rows_, n_cols_;
  std::vector<Triplet> triplets_;
};

// y = A x, summed in index order (deterministic).
std::vector<double> spmv(const CsrMatrix& A, std::span<const double> x);

enum class Preconditioner { none, jacobi };

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double residual = 0.0;  // final true residual |Ax - b|
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0 means 10 * n
  Preconditioner precond = Preconditioner::jacobi;
};

// Conjugate gradients for SPD systems; guarantees |Ax - b| <= rel_tol |b|
// (checked on the true residual) or throws SolverFailure.
CgResult cg_solve(const CsrMatrix& A, std::span<const double> b, const CgOptions& opts = {});

// Coordinate text dump "i j value", one entry per line.
void dump_matrix(std::ostream& out, const CsrMatrix& A);

// Small dense-vector helpers shared across modules.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);  // y += alpha x

}  // namespace curvectrl

#endif
