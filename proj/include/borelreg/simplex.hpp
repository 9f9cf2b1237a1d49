#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "borelreg/types.hpp"

namespace borelreg {

// Signed simplex of positive definite hermitian matrices.
// depth counts subdivision generations below the original input.
struct HermitianSimplex {
    std::vector<CMatrix> vertices;
    int sign = +1;
    int depth = 0;
};

// Throws Error when shapes/sign are malformed, NotHermitian / Singular when a
// vertex fails the positive-definite-hermitian check.
void validate_simplex(const HermitianSimplex& s, double tol = 1e-9);

// max over vertex pairs of the spectral norm of the difference
double diameter(const HermitianSimplex& s);

struct SimplexBounds {
    double diameter = 0;          // d
    double vertex_norm_max = 0;   // M = max_i lambda_max(X_i)
    double inverse_norm_max = 0;  // m = max_i 1/lambda_min(X_i)
    double a_priori = 0;          // 4 d M m^2
};

SimplexBounds bounds(const HermitianSimplex& s);

// The (n+1)! signed children through prefix barycenters, permutations
// enumerated in lexicographic order.
std::vector<HermitianSimplex> barycentric_subdivide(const HermitianSimplex& s);

// Constant matrices with A(s1,s2) = U0 + s1 U1 + s2 U2.
struct UTriple {
    CMatrix u0, u1, u2;
    std::array<double, 3> norms{};
    double max_norm() const { return std::max(norms[0], std::max(norms[1], norms[2])); }
};

// With W = (X3*)^{-1} X0* X0 X3^{-1}:
//   U0 = W - I,  Uj = (X3*)^{-1} Xj* Xj X3^{-1} - W  (j = 1, 2)
// Requires a 4-vertex simplex with invertible last vertex.
UTriple u_matrices(const HermitianSimplex& s);

struct RefineOptions {
    double theta = 0.40;
    int max_depth = 8;              // levels below the input simplex
    std::size_t budget = 1'000'000; // visited-simplex cap for this call
    int force_depth = 0;            // minimum acceptance depth
};

struct RefineResult {
    std::vector<HermitianSimplex> accepted;
    bool complete = true;           // false: depth or budget stopped refinement
    bool budget_exhausted = false;
    double worst_residual = 0;      // worst max-norm among rejected leaves
    std::size_t visited = 0;
    int max_depth_used = 0;
};

// Partitions s into signed simplices with max(|U0|,|U1|,|U2|) <= theta.
// Fast path accepts on the a-priori bound 4dMm^2; otherwise the three norms
// are computed directly. Never throws on depth/budget exhaustion; see
// RefineResult.complete.
RefineResult refine(const HermitianSimplex& s, const RefineOptions& opt);

// Same, but throws DepthExceeded (carrying the worst residual norm) when the
// refinement could not complete.
std::vector<HermitianSimplex> refine_until(const HermitianSimplex& s, double theta,
                                           int max_depth);

} // namespace borelreg
