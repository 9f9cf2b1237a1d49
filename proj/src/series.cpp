#include "borelreg/series.hpp"

#include <algorithm>
#include <cmath>

#include "borelreg/linalg.hpp"

namespace borelreg {

namespace {

// 18! is the largest factorial exact in double
constexpr int kExactFactMax = 18;

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Gauss-Legendre nodes/weights on [0,1], Newton on the recurrence.
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 - t); // descending t -> ascending x
        w[i] = 1.0 / ((1.0 - t * t) * pp * pp);
    }
}

int truncation_level(double m, double tol, int k_max, bool& tol_reached) {
    tol_reached = true;
    for (int k = 0; k <= k_max; ++k)
        if (tail_bound(m, k) <= tol) return k;
    tol_reached = false;
    return k_max;
}

void classify(const cplx& term, SeriesEvaluation& ev) {
    const double re = term.real();
    if (re > 0)
        ev.pos_sum += re;
    else
        ev.neg_sum += re;
}

void finalize(SeriesEvaluation& ev) {
    cplx total{};
    for (std::size_t k = 1; k < ev.level_sums.size(); ++k) total += ev.level_sums[k];
    ev.value = total;
}

} // namespace

double monomial_integral(int p, int q) {
    if (p < 0 || q < 0) throw Error("monomial_integral: negative exponent");
    if (p + q > 40) throw Overflow("monomial_integral: p+q exceeds guard");
    if (p + q + 2 <= kExactFactMax)
        return factorial(p) * factorial(q) / factorial(p + q + 2);
    // multiplicative form: prod_{i=1..q} i/(p+i) / ((p+q+1)(p+q+2))
    double r = 1;
    for (int i = 1; i <= q; ++i) r *= static_cast<double>(i) / (p + i);
    return r / (static_cast<double>(p + q + 1) * (p + q + 2));
}

double tail_bound(double m, int k) {
    if (!(m >= 0)) throw Error("tail_bound: m must be nonnegative");
    if (m >= 0.5) throw NotConvergent("tail_bound: requires m < 1/2");
    if (k < 0) throw Error("tail_bound: negative k");
    if (m == 0) return 0.0;
    double e = 2.0 * m * m / ((1.0 - 2.0 * m) * (1.0 - 2.0 * m));
    for (int j = 1; j <= k; ++j) e -= (j / 2.0) * std::pow(2.0 * m, j + 1);
    return std::max(e, 0.0);
}

SeriesEvaluation phi_series_n3(const UTriple& u, double tol, int k_max) {
    if (k_max < 1) throw Error("phi_series_n3: k_max must be >= 1");
    if (!(tol > 0)) throw Error("phi_series_n3: tol must be positive");
    SeriesEvaluation ev;
    ev.u_norm_max = u.max_norm();
    if (ev.u_norm_max >= 0.5)
        throw NotConvergent("phi_series_n3: max |U_i| >= 1/2");

    const int K = truncation_level(ev.u_norm_max, tol, k_max, ev.tol_reached);
    ev.k_reached = K;
    ev.error_bound = tail_bound(ev.u_norm_max, K);
    ev.level_sums.assign(K + 1, cplx{});
    if (K == 0) return ev;

    // integrand degree in (s1,s2) is K-1; the collapsed-square map adds one
    const int npts = K / 2 + 1;
    std::vector<double> gx, gw;
    gauss_legendre_unit(npts, gx, gw);

    const std::size_t n = u.u0.dim();
    std::vector<CMatrix> apow(K), left(K), right(K);

    for (int ix = 0; ix < npts; ++ix) {
        const double s1 = gx[ix];
        const double duffy = 1.0 - gx[ix];
        for (int iy = 0; iy < npts; ++iy) {
            const double s2 = gx[iy] * duffy;
            const double weight = gw[ix] * gw[iy] * duffy;

            CMatrix a = u.u0 + s1 * u.u1 + s2 * u.u2;
            apow[0] = CMatrix::identity(n);
            for (int p = 1; p < K; ++p) apow[p] = apow[p - 1] * a;
            for (int p = 0; p < K; ++p) {
                left[p] = u.u1 * apow[p];
                right[p] = u.u2 * apow[p];
            }
            for (int k = 1; k <= K; ++k) {
                cplx x{};
                for (int j = 1; j <= k; ++j) {
                    const int cw = k - 2 * j + 1;
                    if (cw == 0) continue;
                    x += static_cast<double>(cw) * trace_product(left[j - 1], right[k - j]);
                }
                const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                const cplx term = sgn * level_coefficient(k) * weight * x;
                ev.level_sums[k] += term;
                classify(term, ev);
            }
        }
    }
    finalize(ev);
    return ev;
}

namespace {

struct TupleDfs {
    const CMatrix* us[3];
    int k_cap;
    SeriesEvaluation* ev;
    std::vector<CMatrix> prod_stack; // prod_stack[d] = U1 U_{i_1} ... U_{i_d}

    // f carried along the path via the factorial-coefficient recursion;
    // undefined (negative n2) prefixes carry the value primed for the first 2.
    void walk(int depth, int q1, int q2, long long pos2_sum, double f) {
        for (int j = 0; j < 3; ++j) {
            const int k = depth + 1;
            const int nq1 = q1 + (j == 1);
            const int nq2 = q2 + (j == 2);
            const long long nsum = pos2_sum + (j == 2 ? k : 0);
            double nf;
            if (j == 0)
                nf = f;
            else if (j == 1)
                nf = f * (q1 + 1.0) / (q1 + q2 + 2.0);
            else
                nf = (q2 == 0) ? monomial_integral(q1, 0) : f * q2 / (q1 + q2 + 2.0);
            prod_stack[k] = prod_stack[k - 1] * (*us[j]);
            if (nq2 >= 1) {
                const long long c = static_cast<long long>(nq2) * (k + 1) - 2 * nsum;
                if (c != 0) {
                    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                    const cplx term = sgn * level_coefficient(k) * nf *
                                      static_cast<double>(c) * trace(prod_stack[k]);
                    ev->level_sums[k] += term;
                    classify(term, *ev);
                }
            }
            if (k < k_cap) walk(k, nq1, nq2, nsum, nf);
        }
    }
};

} // namespace

SeriesEvaluation phi_series_n3_reference(const UTriple& u, double tol, int k_max) {
    if (k_max < 1) throw Error("phi_series_n3_reference: k_max must be >= 1");
    SeriesEvaluation ev;
    ev.u_norm_max = u.max_norm();
    if (ev.u_norm_max >= 0.5)
        throw NotConvergent("phi_series_n3_reference: max |U_i| >= 1/2");
    const int K = truncation_level(ev.u_norm_max, tol, k_max, ev.tol_reached);
    ev.k_reached = K;
    ev.error_bound = tail_bound(ev.u_norm_max, K);
    ev.level_sums.assign(K + 1, cplx{});
    if (K == 0) return ev;

    TupleDfs dfs;
    dfs.us[0] = &u.u0;
    dfs.us[1] = &u.u1;
    dfs.us[2] = &u.u2;
    dfs.k_cap = K;
    dfs.ev = &ev;
    dfs.prod_stack.assign(K + 1, CMatrix{});
    dfs.prod_stack[0] = u.u1;
    dfs.walk(0, 0, 0, 0, 0.0);
    finalize(ev);
    return ev;
}

double phi_n1(const CMatrix& x0, const CMatrix& x1) {
    return 2.0 * (log_abs_det(x0) - log_abs_det(x1));
}

} // namespace borelreg
