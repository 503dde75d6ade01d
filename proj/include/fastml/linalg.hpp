#ifndef FASTML_LINALG_HPP
#define FASTML_LINALG_HPP

#include <cstddef>
#include <span>

#include "fastml/matrix.hpp"

namespace fastml {

/// Solves A x = b by LU factorization with partial pivoting.
/// Throws Errc::SingularMatrix when a pivot falls below 1e-12 times the
/// largest absolute row sum of A.
Vector solve_linear_system(const Matrix& a, std::span<const double> b);

struct EigenDecomposition {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm drops below 1e-10 * ||S||_F
/// (at most 100 sweeps, else Errc::NoConvergence). Each eigenvector is
/// flipped so its largest-magnitude entry is positive; among entries tied
/// in magnitude the first one decides.
EigenDecomposition symmetric_eigen(const Matrix& s);

double frobenius_norm(const Matrix& m) noexcept;

}  // namespace fastml

#endif  // FASTML_LINALG_HPP
