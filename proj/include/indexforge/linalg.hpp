#pragma once

#include <cstddef>
#include <vector>

namespace indexforge {

/// Square symmetric matrix, row-major.
class SymmetricMatrix {
 public:
  /// Throws InvalidMatrix on a size mismatch, NotSymmetric when
  /// |a(i,j) - a(j,i)| > tolerance for any pair.
  SymmetricMatrix(std::size_t n, std::vector<double> entries, double tolerance = 1e-12);

  static SymmetricMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double trace() const;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
};

/// All eigenpairs by cyclic Jacobi rotation, sorted by value descending.
/// Throws NoConvergence when max_sweeps is exhausted.
std::vector<EigenPair> eigen_symmetric(const SymmetricMatrix& m, int max_sweeps = 100);

}  // namespace indexforge
