#include "borelreg/oracle.hpp"

#include <cmath>

#include "borelreg/linalg.hpp"

namespace borelreg {

namespace {

// y-coordinate quadrature is opposite to the parametrization the series (and
// the 1-simplex closed form) follow; one sign converts between them.
constexpr double kOrientation = -1.0;

cplx midpoint_level(const CMatrix& p0, const std::array<CMatrix, 3>& b, int n) {
    cplx total{};
    const double h = 1.0 / n;
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = (ix + 0.5) * h;
        for (int iy = 0; iy < n; ++iy) {
            const double x2 = (iy + 0.5) * h;
            for (int iz = 0; iz < n; ++iz) {
                const double x3 = (iz + 0.5) * h;
                const double y1 = x1;
                const double y2 = x2 * (1.0 - x1);
                const double y3 = x3 * (1.0 - x1) * (1.0 - x2);
                const double jac = (1.0 - x1) * (1.0 - x1) * (1.0 - x2);
                const CMatrix nu = p0 + y1 * b[0] + y2 * b[1] + y3 * b[2];
                const CMatrix nui = inverse(nu); // throws Singular at a bad node
                const CMatrix m1 = nui * b[0];
                const CMatrix m2 = nui * b[1];
                const CMatrix m3 = nui * b[2];
                // sum over S_3 collapses to the two cyclic classes
                const cplx t_even = trace_product(m1 * m2, m3);
                const cplx t_odd = trace_product(m2 * m1, m3);
                total += 3.0 * (t_even - t_odd) * jac;
            }
        }
    }
    return total * (h * h * h);
}

} // namespace

QuadratureResult quadrature_phi3(const std::array<CMatrix, 4>& vertices,
                                 int subdivisions_per_axis) {
    if (subdivisions_per_axis < 2)
        throw Error("quadrature_phi3: need at least 2 subdivisions per axis");
    for (const CMatrix& x : vertices)
        if (!x.all_finite()) throw Error("quadrature_phi3: non-finite vertex");

    const CMatrix p0 = hermitian_part(adjoint(vertices[0]) * vertices[0]);
    std::array<CMatrix, 3> b = {
        hermitian_part(adjoint(vertices[1]) * vertices[1]) - p0,
        hermitian_part(adjoint(vertices[2]) * vertices[2]) - p0,
        hermitian_part(adjoint(vertices[3]) * vertices[3]) - p0,
    };

    const int n = subdivisions_per_axis;
    const cplx coarse = kOrientation * midpoint_level(p0, b, n);
    const cplx fine = kOrientation * midpoint_level(p0, b, 2 * n);

    QuadratureResult r;
    r.value = fine;
    r.grid_points = static_cast<std::size_t>(2 * n) * (2 * n) * (2 * n);
    r.richardson_estimate = fine + (fine - coarse) / 3.0;
    r.discrepancy = std::abs(coarse - fine);
    return r;
}

} // namespace borelreg
