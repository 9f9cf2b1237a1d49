#pragma once

#include <array>
#include <cstddef>

#include "borelreg/types.hpp"

namespace borelreg {

struct QuadratureResult {
    cplx value{};                 // fine-grid estimate
    std::size_t grid_points = 0;  // fine-grid node count
    cplx richardson_estimate{};   // two-level extrapolation
    double discrepancy = 0;       // |coarse - fine|
};

// Direct numerical quadrature of the 3-simplex integrand, independent of the
// series machinery: with P_i = X_i* X_i and B_j = P_j - P_0,
//   nu(y) = P_0 + sum_j y_j B_j,
//   integrand = sum_{sigma in S_3} sgn(sigma) Tr(nu^{-1}B_{s1} nu^{-1}B_{s2} nu^{-1}B_{s3})
// integrated over the standard simplex via midpoint sampling of the
// cube-to-simplex map at two resolutions (n and 2n) with Richardson
// extrapolation. The result carries the orientation that matches the
// 1-simplex closed form Tr log(1+A).
QuadratureResult quadrature_phi3(const std::array<CMatrix, 4>& vertices,
                                 int subdivisions_per_axis);

} // namespace borelreg
