#include "borelreg/simplex.hpp"

#include <algorithm>
#include <numeric>

#include "borelreg/linalg.hpp"

namespace borelreg {

namespace {

int permutation_sign(std::vector<std::size_t> p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            s = -s;
        }
    return s;
}

} // namespace

void validate_simplex(const HermitianSimplex& s, double tol) {
    if (s.vertices.empty()) throw Error("simplex: no vertices");
    if (s.sign != 1 && s.sign != -1) throw Error("simplex: sign must be +1 or -1");
    if (s.depth < 0) throw Error("simplex: negative depth");
    const std::size_t n = s.vertices.front().dim();
    for (const CMatrix& x : s.vertices) {
        if (x.dim() != n) throw Error("simplex: mixed vertex dimensions");
        if (!x.all_finite()) throw Error("simplex: non-finite vertex");
        const double fro = frobenius_norm(x);
        if (frobenius_norm(x - adjoint(x)) > tol * fro)
            throw NotHermitian("simplex: vertex is not hermitian");
        const HermitianEig e = hermitian_eig(x, tol);
        if (!(e.eigenvalues.front() > tol * std::abs(e.eigenvalues.back())))
            throw Singular("simplex: vertex is not positive definite");
    }
}

double diameter(const HermitianSimplex& s) {
    double d = 0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            d = std::max(d, spectral_norm(s.vertices[i] - s.vertices[j]));
    return d;
}

SimplexBounds bounds(const HermitianSimplex& s) {
    SimplexBounds b;
    b.diameter = diameter(s);
    for (const CMatrix& x : s.vertices) {
        const HermitianEig e = hermitian_eig(x, 1e-9);
        b.vertex_norm_max = std::max(b.vertex_norm_max, e.eigenvalues.back());
        b.inverse_norm_max = std::max(b.inverse_norm_max, 1.0 / e.eigenvalues.front());
    }
    b.a_priori = 4.0 * b.diameter * b.vertex_norm_max * b.inverse_norm_max * b.inverse_norm_max;
    return b;
}

std::vector<HermitianSimplex> barycentric_subdivide(const HermitianSimplex& s) {
    const std::size_t nv = s.vertices.size();
    const std::size_t dim = s.vertices.front().dim();
    std::vector<std::size_t> perm(nv);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    std::vector<HermitianSimplex> out;
    do {
        HermitianSimplex child;
        child.sign = s.sign * permutation_sign(perm);
        child.depth = s.depth + 1;
        child.vertices.reserve(nv);
        CMatrix acc(dim);
        for (std::size_t m = 0; m < nv; ++m) {
            acc = acc + s.vertices[perm[m]];
            child.vertices.push_back((1.0 / static_cast<double>(m + 1)) * acc);
        }
        out.push_back(std::move(child));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

UTriple u_matrices(const HermitianSimplex& s) {
    if (s.vertices.size() != 4) throw Error("u_matrices: expected a 3-simplex (4 vertices)");
    const CMatrix x3i = inverse(s.vertices[3]);
    const CMatrix x3si = adjoint(x3i);
    const CMatrix eye = CMatrix::identity(s.vertices.front().dim());

    auto conj_gram = [&](const CMatrix& x) {
        return x3si * (adjoint(x) * x) * x3i;
    };
    const CMatrix w = conj_gram(s.vertices[0]);
    UTriple u;
    u.u0 = w - eye;
    u.u1 = conj_gram(s.vertices[1]) - w;
    u.u2 = conj_gram(s.vertices[2]) - w;
    u.norms = {spectral_norm(u.u0), spectral_norm(u.u1), spectral_norm(u.u2)};
    return u;
}

namespace {

// Depth-first refinement; children are visited in lexicographic permutation
// order so output ordering is deterministic.
void refine_rec(const HermitianSimplex& s, const RefineOptions& opt, int rel_depth,
                RefineResult& r) {
    if (r.budget_exhausted) return;
    if (++r.visited > opt.budget) {
        r.budget_exhausted = true;
        r.complete = false;
        return;
    }
    r.max_depth_used = std::max(r.max_depth_used, rel_depth);

    if (rel_depth >= opt.force_depth) {
        const SimplexBounds b = bounds(s);
        if (b.a_priori <= opt.theta) {
            r.accepted.push_back(s);
            return;
        }
        const UTriple u = u_matrices(s);
        const double mx = u.max_norm();
        if (mx <= opt.theta) {
            r.accepted.push_back(s);
            return;
        }
        if (rel_depth >= opt.max_depth) {
            r.complete = false;
            r.worst_residual = std::max(r.worst_residual, mx);
            return;
        }
    } else if (rel_depth >= opt.max_depth) {
        r.complete = false;
        r.worst_residual = std::max(r.worst_residual, u_matrices(s).max_norm());
        return;
    }

    for (const HermitianSimplex& child : barycentric_subdivide(s)) {
        refine_rec(child, opt, rel_depth + 1, r);
        if (r.budget_exhausted) return;
    }
}

} // namespace

RefineResult refine(const HermitianSimplex& s, const RefineOptions& opt) {
    if (!(opt.theta > 0)) throw Error("refine: theta must be positive");
    if (opt.max_depth < 0) throw Error("refine: max_depth must be >= 0");
    RefineResult r;
    refine_rec(s, opt, 0, r);
    return r;
}

std::vector<HermitianSimplex> refine_until(const HermitianSimplex& s, double theta,
                                           int max_depth) {
    RefineOptions opt;
    opt.theta = theta;
    opt.max_depth = max_depth;
    RefineResult r = refine(s, opt);
    if (!r.complete)
        throw DepthExceeded(r.budget_exhausted ? "refine_until: simplex budget exhausted"
                                               : "refine_until: max depth exceeded",
                            r.worst_residual);
    return std::move(r.accepted);
}

} // namespace borelreg
