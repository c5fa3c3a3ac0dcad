#pragma once

#include <vector>

namespace pihl::num {

/// Dense real symmetric matrix.  set() writes both (j,k) and (k,j), so the
/// stored matrix is symmetric exactly, never only up to roundoff.
class SymmetricMatrix {
  public:
    explicit SymmetricMatrix(int dim);

    int dim() const noexcept { return dim_; }

    double operator()(int j, int k) const { return data_[index(j, k)]; }
    void set(int j, int k, double value);

    /// Frobenius norm.
    double norm() const;

    const std::vector<double>& raw() const noexcept { return data_; }

  private:
    std::size_t index(int j, int k) const;

    int dim_;
    std::vector<double> data_; // row-major dim x dim
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector; // unit 2-norm
};

/// Minimal eigenvalue and a unit eigenvector of a symmetric matrix, with
/// residual ||A v - lambda v|| <= 1e-10 ||A||.  Dense input runs a cyclic
/// Jacobi rotation sweep; tridiagonal input (detected exactly) runs Sturm
/// bisection plus inverse iteration so large banded operators stay cheap.
EigenPair sym_eig_min(const SymmetricMatrix& a);

} // namespace pihl::num
