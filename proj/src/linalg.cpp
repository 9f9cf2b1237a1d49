#include "borelreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace borelreg {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagTol = 1e-13;     // relative off-diagonal Frobenius target
constexpr double kMinSingularRel = 1e-10; // invertibility cutoff, relative to ||Y||

double offdiag_frobenius(const CMatrix& h) {
    const std::size_t n = h.dim();
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(h(i, j));
    return std::sqrt(s);
}

// One unitary Jacobi rotation annihilating h(p,q); accumulates into v.
void jacobi_rotate(CMatrix& h, CMatrix& v, std::size_t p, std::size_t q) {
    const cplx gamma = h(p, q);
    const double ag = std::abs(gamma);
    if (ag == 0.0) return;
    const cplx phase = gamma / ag;
    const double alpha = h(p, p).real();
    const double beta = h(q, q).real();
    const double tau = (beta - alpha) / (2.0 * ag);
    // smaller root of t^2 - 2*tau*t - 1 = 0
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::hypot(1.0, tau))
                                  : 1.0 / (-tau + std::hypot(1.0, tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = h.dim();
    const cplx spb = s * phase;        // s * e^{i phi}
    const cplx spc = s * std::conj(phase);

    // columns p and q of H <- H U,  U = [[c, -s e^{i phi}],[s e^{-i phi}, c]]
    for (std::size_t i = 0; i < n; ++i) {
        const cplx hip = h(i, p), hiq = h(i, q);
        h(i, p) = c * hip + spc * hiq;
        h(i, q) = -spb * hip + c * hiq;
    }
    // rows p and q of H <- U* H
    for (std::size_t j = 0; j < n; ++j) {
        const cplx hpj = h(p, j), hqj = h(q, j);
        h(p, j) = c * hpj + spb * hqj;
        h(q, j) = -spc * hpj + c * hqj;
    }
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    h(p, p) = cplx(h(p, p).real(), 0.0);
    h(q, q) = cplx(h(q, q).real(), 0.0);
    // V <- V U
    for (std::size_t i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + spc * viq;
        v(i, q) = -spb * vip + c * viq;
    }
}

struct Lu {
    CMatrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;
};

Lu lu_decompose(const CMatrix& x) {
    const std::size_t n = x.dim();
    Lu r{x, std::vector<std::size_t>(n), false};
    std::iota(r.perm.begin(), r.perm.end(), std::size_t{0});
    double scale = 0;
    for (const cplx& z : x.data()) scale = std::max(scale, std::abs(z));
    const double tiny = scale * 1e-15 * static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(r.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(r.lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best <= tiny) { r.singular = true; return r; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(r.lu(k, j), r.lu(piv, j));
            std::swap(r.perm[k], r.perm[piv]);
        }
        const cplx d = r.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = r.lu(i, k) / d;
            r.lu(i, k) = m;
            if (m == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) r.lu(i, j) -= m * r.lu(k, j);
        }
    }
    return r;
}

} // namespace

HermitianEig hermitian_eig(const CMatrix& h0, double tol) {
    const std::size_t n = h0.dim();
    if (n == 0) throw Error("hermitian_eig: empty matrix");
    if (!h0.all_finite()) throw NotHermitian("hermitian_eig: non-finite entries");
    const double hn = frobenius_norm(h0);
    const double dev = frobenius_norm(h0 - adjoint(h0));
    if (dev > tol * hn + 1e-300)
        throw NotHermitian("hermitian_eig: input deviates from hermitian beyond tolerance");

    CMatrix h = hermitian_part(h0);
    CMatrix v = CMatrix::identity(n);
    const double target = kOffDiagTol * std::max(hn, 1e-300);

    bool converged = (n == 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offdiag_frobenius(h) <= target) { converged = true; break; }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(h, v, p, q);
    }
    if (!converged && offdiag_frobenius(h) > target)
        throw NoConvergence("hermitian_eig: Jacobi sweeps exhausted");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

    HermitianEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = h(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

double spectral_norm(const CMatrix& x) {
    if (!x.all_finite()) throw Error("spectral_norm: non-finite entries");
    const double fro = frobenius_norm(x);
    if (fro == 0.0) return 0.0;
    // hermitian inputs take the direct eigenvalue route
    if (frobenius_norm(x - adjoint(x)) <= 1e-12 * fro) {
        const HermitianEig e = hermitian_eig(x, 1e-10);
        return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    }
    const HermitianEig e = hermitian_eig(adjoint(x) * x, 1e-10);
    return std::sqrt(std::max(e.eigenvalues.back(), 0.0));
}

CMatrix pdh_reduce(const CMatrix& y) {
    const std::size_t n = y.dim();
    const HermitianEig e = hermitian_eig(adjoint(y) * y, 1e-8);
    const double lmax = e.eigenvalues.back();
    const double lmin = e.eigenvalues.front();
    if (!(lmax > 0.0) || lmin < kMinSingularRel * kMinSingularRel * lmax)
        throw Singular("pdh_reduce: matrix is singular within threshold");
    CMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k)
                s += e.eigenvectors(i, k) * std::sqrt(e.eigenvalues[k]) *
                     std::conj(e.eigenvectors(j, k));
            p(i, j) = s;
        }
    return hermitian_part(p);
}

double log_abs_det(const CMatrix& x) {
    if (!x.all_finite()) throw Error("log_abs_det: non-finite entries");
    const Lu f = lu_decompose(x);
    if (f.singular) throw Singular("log_abs_det: singular matrix");
    double s = 0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += std::log(std::abs(f.lu(i, i)));
    return s;
}

CMatrix inverse(const CMatrix& x) {
    const std::size_t n = x.dim();
    const Lu f = lu_decompose(x);
    if (f.singular) throw Singular("inverse: singular matrix");
    CMatrix inv(n);
    std::vector<cplx> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        // forward substitution on P e_c
        for (std::size_t i = 0; i < n; ++i) {
            cplx b = (f.perm[i] == c) ? cplx(1.0) : cplx(0.0);
            for (std::size_t j = 0; j < i; ++j) b -= f.lu(i, j) * col[j];
            col[i] = b;
        }
        // back substitution
        for (std::size_t ii = n; ii-- > 0;) {
            cplx b = col[ii];
            for (std::size_t j = ii + 1; j < n; ++j) b -= f.lu(ii, j) * col[j];
            col[ii] = b / f.lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
    }
    return inv;
}

} // namespace borelreg
