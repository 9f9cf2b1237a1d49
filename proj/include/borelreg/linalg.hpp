#pragma once

#include <vector>

#include "borelreg/types.hpp"

namespace borelreg {

// Full spectral decomposition of a hermitian matrix.
// eigenvalues ascending, eigenvectors stored as columns of a unitary matrix.
struct HermitianEig {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;
};

// Cyclic Jacobi eigensolver for hermitian matrices.
// `tol` gates the hermiticity precondition: ||H - H*||_F <= tol * ||H||_F.
// The input is symmetrized to (H+H*)/2 before iterating.
// Throws NotHermitian / NoConvergence.
HermitianEig hermitian_eig(const CMatrix& h, double tol = 1e-13);

// Largest singular value. For hermitian input this equals max |eigenvalue|.
double spectral_norm(const CMatrix& x);

// Unique positive definite hermitian P with P*P = Y*Y (square root of Y*Y).
// Throws Singular when the smallest singular value of Y falls below
// 1e-10 * ||Y||.
CMatrix pdh_reduce(const CMatrix& y);

// ln |det X| via LU with partial pivoting. Throws Singular.
double log_abs_det(const CMatrix& x);

// Matrix inverse via LU with partial pivoting. Throws Singular.
CMatrix inverse(const CMatrix& x);

} // namespace borelreg
