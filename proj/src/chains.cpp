#include "borelreg/chains.hpp"

#include <cmath>
#include <numbers>

#include "borelreg/linalg.hpp"
#include "borelreg/parallel.hpp"

namespace borelreg {

std::vector<CMatrix> bar_to_homogeneous(const std::vector<CMatrix>& g) {
    if (g.empty()) throw Error("bar_to_homogeneous: empty tuple");
    const std::size_t n = g.front().dim();
    std::vector<CMatrix> out;
    out.reserve(g.size() + 1);
    out.push_back(CMatrix::identity(n));
    for (const CMatrix& gi : g) out.push_back(out.back() * gi);
    return out;
}

cplx borel_normalize(const cplx& phi, int n) {
    if (n < 0) throw Error("borel_normalize: negative degree");
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    const double two_pow = std::pow(2.0, 3 * n + 1);
    cplx pi_i_pow{1.0, 0.0};
    for (int i = 0; i < n; ++i) pi_i_pow *= cplx{0.0, std::numbers::pi};
    return sign / (two_pow * pi_i_pow) * phi;
}

namespace {

bool has_repeated_entry(const std::vector<CMatrix>& tuple) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            if (tuple[i] == tuple[j]) return true;
    return false;
}

void check_config(const ChainConfig& cfg) {
    if (!(cfg.theta > 0) || !(cfg.theta < 0.5))
        throw Error("phi_chain: theta must lie in (0, 1/2)");
    if (!(cfg.tol > 0)) throw Error("phi_chain: tol must be positive");
    if (cfg.k_max < 1) throw Error("phi_chain: k_max must be >= 1");
    if (cfg.max_depth < 0) throw Error("phi_chain: max_depth must be >= 0");
}

TermReport eval_term_degree3(const GroupChain::Term& term, const ChainConfig& cfg) {
    TermReport rep;
    rep.label = term.label;
    rep.coeff = term.coeff;

    if (cfg.skip_repeated && has_repeated_entry(term.tuple)) {
        rep.status = TermStatus::skipped_repeated;
        return rep;
    }

    std::vector<CMatrix> entries = term.tuple;
    if (cfg.translate) {
        const CMatrix g = inverse(entries[3]);
        for (CMatrix& x : entries) x = x * g;
    }
    HermitianSimplex root;
    root.sign = +1;
    root.depth = 0;
    root.vertices.reserve(4);
    for (const CMatrix& x : entries) root.vertices.push_back(pdh_reduce(x));

    RefineOptions opt;
    opt.theta = cfg.theta;
    opt.max_depth = cfg.max_depth;
    opt.budget = cfg.simplex_budget;
    opt.force_depth = cfg.force_depth;
    const RefineResult refined = refine(root, opt);

    if (!refined.complete)
        rep.status = refined.budget_exhausted ? TermStatus::budget_exceeded
                                              : TermStatus::depth_exceeded;
    rep.simplex_count = refined.accepted.size();
    rep.max_depth_used = refined.max_depth_used;

    std::vector<SeriesEvaluation> evals(refined.accepted.size());
    parallel_for_slots(refined.accepted.size(), cfg.workers, [&](std::size_t i) {
        evals[i] = phi_series_n3(u_matrices(refined.accepted[i]), cfg.tol, cfg.k_max);
    });

    for (std::size_t i = 0; i < evals.size(); ++i) {
        const int sgn = refined.accepted[i].sign;
        rep.value += static_cast<double>(sgn) * evals[i].value;
        if (sgn > 0) {
            rep.pos_sum += evals[i].pos_sum;
            rep.neg_sum += evals[i].neg_sum;
        } else {
            rep.pos_sum += -evals[i].neg_sum;
            rep.neg_sum += -evals[i].pos_sum;
        }
        rep.error_bound += evals[i].error_bound;
        rep.tol_reached = rep.tol_reached && evals[i].tol_reached;
    }
    return rep;
}

TermReport eval_term_degree1(const GroupChain::Term& term, const ChainConfig& cfg) {
    TermReport rep;
    rep.label = term.label;
    rep.coeff = term.coeff;
    if (cfg.skip_repeated && has_repeated_entry(term.tuple)) {
        rep.status = TermStatus::skipped_repeated;
        return rep;
    }
    const double v = phi_n1(term.tuple[0], term.tuple[1]);
    rep.value = v;
    (v > 0 ? rep.pos_sum : rep.neg_sum) = v;
    rep.simplex_count = 1;
    return rep;
}

} // namespace

PhiReport phi_chain(const GroupChain& chain, const ChainConfig& cfg) {
    check_config(cfg);
    if (chain.degree != 3 && chain.degree != 1)
        throw Error("phi_chain: only degree 3 (and degree 1) chains are supported");
    const std::size_t want = static_cast<std::size_t>(chain.degree) + 1;
    for (const GroupChain::Term& t : chain.terms) {
        if (t.coeff == 0) throw Error("phi_chain: zero coefficient term");
        if (t.tuple.size() != want) throw Error("phi_chain: tuple arity mismatch");
        for (const CMatrix& x : t.tuple)
            if (x.dim() != t.tuple.front().dim() || x.dim() == 0 ||
                x.dim() != chain.terms.front().tuple.front().dim())
                throw Error("phi_chain: mixed matrix dimensions");
    }

    PhiReport report;
    report.per_term.reserve(chain.terms.size());
    for (std::size_t i = 0; i < chain.terms.size(); ++i) {
        const GroupChain::Term& t = chain.terms[i];
        TermReport rep = (chain.degree == 3) ? eval_term_degree3(t, cfg)
                                             : eval_term_degree1(t, cfg);
        if (rep.label.empty()) rep.label = "term " + std::to_string(i + 1);
        report.per_term.push_back(std::move(rep));
    }

    for (const TermReport& rep : report.per_term) {
        report.total_value += static_cast<double>(rep.coeff) * rep.value;
        report.total_error_bound += std::abs(static_cast<double>(rep.coeff)) * rep.error_bound;
        report.tol_reached = report.tol_reached && rep.tol_reached;
        report.refinement_complete =
            report.refinement_complete && (rep.status == TermStatus::ok ||
                                           rep.status == TermStatus::skipped_repeated);
    }
    report.borel_value = borel_normalize(report.total_value, chain.degree == 3 ? 1 : 0);
    return report;
}

GroupChain build_testcase1(long long d, cplx u, long long m, long long n) {
    if (u == cplx{}) throw Error("build_testcase1: u must be nonzero");
    if (d < 0) throw Error("build_testcase1: d must be nonnegative");
    const CMatrix e = CMatrix::identity(2);
    CMatrix g1 = CMatrix::identity(2);
    g1(0, 0) = u;
    g1(1, 1) = u;
    CMatrix g2 = CMatrix::identity(2);
    g2(0, 1) = static_cast<double>(m);
    CMatrix g3 = CMatrix::identity(2);
    g3(0, 1) = cplx{0.0, static_cast<double>(n) * std::sqrt(static_cast<double>(d))};

    const CMatrix g12 = g1 * g2;
    const CMatrix g13 = g1 * g3;
    const CMatrix g23 = g2 * g3;
    const CMatrix g123 = g12 * g3;

    GroupChain z;
    z.degree = 3;
    auto add = [&](long long coeff, std::vector<CMatrix> tuple, int idx) {
        z.terms.push_back({coeff, std::move(tuple), "c_" + std::to_string(idx)});
    };
    add(+1, {e, g1, g12, g123}, 1);
    add(-1, {e, g1, g13, g123}, 2);
    add(+1, {e, g3, g13, g123}, 3);
    add(-1, {e, g2, g12, g123}, 4);
    add(+1, {e, g2, g23, g123}, 5);
    add(-1, {e, g3, g23, g123}, 6);
    return z;
}

std::pair<GroupChain, GroupChain> build_testcase2(int n, cplx v) {
    if (n < 3) throw Error("build_testcase2: n must be >= 3");
    if (v == cplx{}) throw Error("build_testcase2: v must be nonzero");
    const cplx u = std::polar(1.0, 2.0 * std::numbers::pi / n);

    CMatrix a(3), b(3), w(3);
    a(0, 0) = u;
    a(1, 1) = 1.0 / u;
    a(2, 2) = 1.0;
    b(0, 0) = u;
    b(1, 1) = 1.0;
    b(2, 2) = 1.0 / u;
    w(0, 0) = 1.0;
    w(1, 2) = v;
    w(2, 1) = -1.0 / v;
    const CMatrix e = CMatrix::identity(3);

    GroupChain z1;
    z1.degree = 3;
    auto add1 = [&](long long coeff, const std::vector<CMatrix>& bar, int idx) {
        z1.terms.push_back({coeff, bar_to_homogeneous(bar), "c_" + std::to_string(idx)});
    };
    add1(+1, {w, a, b}, 1);
    add1(-1, {a, b, w}, 2);
    add1(-1, {w, b, a}, 3);
    add1(+1, {b, a, w}, 4);
    add1(+1, {a, w, a}, 5);
    add1(-1, {b, w, b}, 6);

    GroupChain z2;
    z2.degree = 3;
    int row = 0;
    auto add2 = [&](long long coeff, const std::vector<CMatrix>& bar) {
        z2.terms.push_back({coeff, bar_to_homogeneous(bar), "d_" + std::to_string(++row)});
    };
    add2(+1, {e, e, b});
    add2(+1, {b, e, e});
    CMatrix apow = a;
    for (int r = 1; r <= n - 1; ++r) {
        add2(+1, {apow, a, b});
        add2(-1, {apow, b, a});
        add2(+1, {b, apow, a});
        apow = apow * a;
    }
    return {std::move(z1), std::move(z2)};
}

} // namespace borelreg
