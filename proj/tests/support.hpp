#pragma once

// Shared test utilities: seeded random matrices and small independent
// numerical oracles. Everything here is test-only.

#include <array>
#include <cmath>
#include <random>

#include "borelreg/linalg.hpp"
#include "borelreg/simplex.hpp"
#include "borelreg/types.hpp"

namespace testutil {

using borelreg::CMatrix;
using borelreg::cplx;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64{seed}; }

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> g;
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * cplx{g(rng), g(rng)};
    return m;
}

// random hermitian with spectral norm 1, scaled
inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    CMatrix h = borelreg::hermitian_part(random_matrix(rng, n));
    const double s = borelreg::spectral_norm(h);
    return (scale / (s > 0 ? s : 1.0)) * h;
}

// I + eps*H; positive definite for eps < 1
inline CMatrix random_pdh_near_identity(std::mt19937_64& rng, std::size_t n, double eps) {
    return CMatrix::identity(n) + random_hermitian(rng, n, eps);
}

// modified Gram-Schmidt on a random matrix
inline CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    CMatrix a = random_matrix(rng, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cplx dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(a(i, prev)) * a(i, c);
            for (std::size_t i = 0; i < n; ++i) a(i, c) -= dot * a(i, prev);
        }
        double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(a(i, c));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) a(i, c) /= nrm;
    }
    return a;
}

inline borelreg::HermitianSimplex random_pdh_simplex(std::mt19937_64& rng, std::size_t dim,
                                                     int vertices, double eps) {
    borelreg::HermitianSimplex s;
    for (int i = 0; i < vertices; ++i)
        s.vertices.push_back(random_pdh_near_identity(rng, dim, eps));
    return s;
}

// Test-only 2-simplex quadrature of the even-degree analog:
//   integrand = Tr(nu^{-1}B1 nu^{-1}B2) - Tr(nu^{-1}B2 nu^{-1}B1)
inline cplx quadrature_phi2(const std::array<CMatrix, 3>& verts, int n) {
    using borelreg::adjoint;
    using borelreg::inverse;
    using borelreg::trace_product;
    const CMatrix p0 = borelreg::hermitian_part(adjoint(verts[0]) * verts[0]);
    const CMatrix b1 = borelreg::hermitian_part(adjoint(verts[1]) * verts[1]) - p0;
    const CMatrix b2 = borelreg::hermitian_part(adjoint(verts[2]) * verts[2]) - p0;
    cplx total{};
    const double h = 1.0 / n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double x1 = (ix + 0.5) * h;
            const double x2 = (iy + 0.5) * h;
            const double y1 = x1, y2 = x2 * (1 - x1);
            const double jac = 1 - x1;
            const CMatrix nui = inverse(p0 + y1 * b1 + y2 * b2);
            const CMatrix m1 = nui * b1;
            const CMatrix m2 = nui * b2;
            total += (trace_product(m1, m2) - trace_product(m2, m1)) * jac;
        }
    return total * (h * h);
}

} // namespace testutil
