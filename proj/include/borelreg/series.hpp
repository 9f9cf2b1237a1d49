#pragma once

#include <vector>

#include "borelreg/simplex.hpp"
#include "borelreg/types.hpp"

namespace borelreg {

// Integral of s1^p s2^q over the standard 2-simplex: p! q! / (p+q+2)!.
// Throws Overflow when p+q exceeds 40.
double monomial_integral(int p, int q);

// Majorising tail E_k = 2m^2/(1-2m)^2 - sum_{j<=k} (j/2)(2m)^{j+1}, clamped
// at 0. Requires 0 <= m < 1/2 (throws NotConvergent otherwise).
double tail_bound(double m, int k);

// Level-k prefactor of the series. Fixed once against the independent
// quadrature cross-check; keep in one place.
inline double level_coefficient(int k) { return 3.0 / (k + 1); }

struct SeriesEvaluation {
    cplx value{};
    double pos_sum = 0;
    double neg_sum = 0;
    int k_reached = 0;
    double error_bound = 0;
    double u_norm_max = 0;
    bool tol_reached = true;          // false: k_max hit with tail > tol
    std::vector<cplx> level_sums;     // index k = 1..k_reached
};

// Truncated series value of the 3-simplex integrand built from a UTriple.
// The truncation level is the smallest k with tail_bound(m,k) <= tol, capped
// at k_max (tol_reached records which). Requires max norm < 1/2
// (NotConvergent otherwise). Deterministic: fixed node and level order.
//
// Production path: per level k the tuple sum collapses to
//   a_k = (-1)^k 3/(k+1) sum_j (k-2j+1) Int_{Delta^2} Tr(U1 A^{j-1} U2 A^{k-j})
// evaluated with Gauss-Legendre nodes of polynomial exactness >= the
// truncation degree, so the level sums equal the tuple enumeration exactly.
SeriesEvaluation phi_series_n3(const UTriple& u, double tol, int k_max);

// Direct depth-first tuple enumeration with a running product and the
// factorial-coefficient recursion; O(k_max) matrices of memory. Slow
// (O(3^k_max) multiplies); used as the independent reference for tests.
SeriesEvaluation phi_series_n3_reference(const UTriple& u, double tol, int k_max);

// Closed form for 1-simplices: 2 (ln|det X0| - ln|det X1|).
double phi_n1(const CMatrix& x0, const CMatrix& x1);

} // namespace borelreg
