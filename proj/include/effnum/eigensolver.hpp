#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace effnum {

/// Dense square matrix, row-major. Symmetry is checked by eigensolve().
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// y = A x
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Eigenpairs sorted by ascending energy (ties keep solver order).
/// vectors[k] is the unit eigenvector belonging to energies[k].
struct EigenSystem {
  std::vector<double> energies;
  std::vector<std::vector<double>> vectors;
};

/// Full spectrum of a real symmetric matrix by Householder reduction and
/// implicit QL. Throws std::invalid_argument if `a` is not symmetric.
EigenSystem eigensolve(const SymmetricMatrix& a);

/// Full spectrum of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (size n - 1) by implicit QL.
EigenSystem eigensolve_tridiagonal(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal);

/// max_k ||A v_k - E_k v_k||_2
double max_residual(const SymmetricMatrix& a, const EigenSystem& es);

}  // namespace effnum
