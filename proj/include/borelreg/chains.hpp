#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "borelreg/series.hpp"
#include "borelreg/types.hpp"

namespace borelreg {

// Formal integer-weighted sum of homogeneous (degree+1)-tuples of invertible
// matrices.
struct GroupChain {
    struct Term {
        long long coeff = 1;
        std::vector<CMatrix> tuple;
        std::string label; // row label for reports (c_i / d_j style)
    };
    int degree = 3;
    std::vector<Term> terms;
};

// [g1|g2|...|gk] -> (e, g1, g1 g2, ..., g1 g2 ... gk)
std::vector<CMatrix> bar_to_homogeneous(const std::vector<CMatrix>& g);

struct ChainConfig {
    double theta = 0.40;
    double tol = 1e-10;
    int k_max = 14;
    int max_depth = 8;
    std::size_t simplex_budget = 1'000'000; // per term
    int force_depth = 0;
    bool skip_repeated = true;
    bool translate = true;
    int workers = 0; // 0 = hardware concurrency
};

enum class TermStatus { ok, skipped_repeated, depth_exceeded, budget_exceeded };

struct TermReport {
    std::string label;
    long long coeff = 1;
    cplx value{};
    double pos_sum = 0;
    double neg_sum = 0;
    double error_bound = 0;
    std::size_t simplex_count = 0;
    int max_depth_used = 0;
    bool tol_reached = true;
    TermStatus status = TermStatus::ok;
};

struct PhiReport {
    std::vector<TermReport> per_term;
    cplx total_value{};
    double total_error_bound = 0;
    cplx borel_value{};
    bool refinement_complete = true; // no depth/budget failures
    bool tol_reached = true;         // every series truncation met tol
};

// (-1)^{n+1} / (2^{3n+1} (pi i)^n) * phi
cplx borel_normalize(const cplx& phi, int n);

// Full pipeline per term: optional repeated-entry short-circuit, optional
// right-translation by X_n^{-1}, reduction of every entry to its positive
// definite hermitian representative, norm-driven refinement, series
// evaluation on every subsimplex. Degree 3 only (degree 1 dispatches to the
// closed form); other degrees are rejected.
PhiReport phi_chain(const GroupChain& chain, const ChainConfig& cfg);

// Six-term 3-cycle on GL_2 built from g1 = u I, g2 = [[1,m],[0,1]],
// g3 = [[1, n i sqrt(d)],[0,1]].
GroupChain build_testcase1(long long d, cplx u, long long m, long long n);

// Two chains on GL_3 built from the commuting pair a, b (diagonal, entries
// powers of e^{2 pi i/n}) and the swap w; n >= 3, v != 0.
std::pair<GroupChain, GroupChain> build_testcase2(int n, cplx v);

} // namespace borelreg
