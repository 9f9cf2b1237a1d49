#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>

#include "borelreg/linalg.hpp"
#include "borelreg/series.hpp"
#include "support.hpp"

using namespace borelreg;
using testutil::make_rng;
using testutil::random_hermitian;

namespace {

double factorial_exact(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

UTriple random_triple(std::mt19937_64& rng, std::size_t dim, double scale) {
    UTriple u;
    u.u0 = random_hermitian(rng, dim, scale);
    u.u1 = random_hermitian(rng, dim, scale);
    u.u2 = random_hermitian(rng, dim, scale);
    u.norms = {spectral_norm(u.u0), spectral_norm(u.u1), spectral_norm(u.u2)};
    return u;
}

} // namespace

TEST_CASE("monomial_integral examples") {
    CHECK(monomial_integral(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    // direct integration: int_0^1 s (1-s) ds = 1/6
    CHECK(monomial_integral(1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(monomial_integral(2, 3) == doctest::Approx(1.0 / 420.0).epsilon(1e-15));
    CHECK(monomial_integral(0, 1) == monomial_integral(1, 0));
    CHECK_THROWS_AS(monomial_integral(30, 11), Overflow);
    CHECK_THROWS_AS(monomial_integral(-1, 0), Error);
    // large arguments stay finite and positive through the multiplicative path
    CHECK(monomial_integral(20, 20) > 0);
}

TEST_CASE("tail_bound examples and monotone decay") {
    CHECK(tail_bound(0.0, 0) == 0.0);
    CHECK(tail_bound(0.0, 7) == 0.0);
    CHECK(tail_bound(0.25, 0) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = tail_bound(0.3, 0);
    for (int k = 1; k <= 60; ++k) {
        const double e = tail_bound(0.3, k);
        CHECK(e <= prev + 1e-15);
        prev = e;
    }
    CHECK(prev < 1e-10);
    CHECK_THROWS_AS(tail_bound(0.5, 1), NotConvergent);
}

TEST_CASE("degenerate triples") {
    UTriple z;
    z.u0 = z.u1 = z.u2 = CMatrix(3);
    z.norms = {0, 0, 0};
    const SeriesEvaluation ev = phi_series_n3(z, 1e-10, 14);
    CHECK(ev.value == cplx{});
    CHECK(ev.error_bound == 0.0);
    CHECK(ev.k_reached == 0);
    CHECK(ev.tol_reached);
}

TEST_CASE("U2 = 0 kills every contribution") {
    auto rng = make_rng(301);
    UTriple u = random_triple(rng, 3, 0.2);
    u.u2 = CMatrix(3);
    u.norms[2] = 0;
    const SeriesEvaluation ev = phi_series_n3(u, 1e-12, 10);
    CHECK(std::abs(ev.value) < 1e-14);
    const SeriesEvaluation ref = phi_series_n3_reference(u, 1e-12, 10);
    CHECK(std::abs(ref.value) < 1e-14);
    CHECK(ref.pos_sum == 0.0); // every tuple term is skipped outright
}

TEST_CASE("production evaluator equals the tuple enumeration level by level") {
    auto rng = make_rng(302);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const UTriple u = random_triple(rng, dim, 0.12 + 0.05 * (trial % 3));
        const SeriesEvaluation fast = phi_series_n3(u, 1e-30, 9);
        const SeriesEvaluation ref = phi_series_n3_reference(u, 1e-30, 9);
        REQUIRE(fast.k_reached == ref.k_reached);
        for (int k = 1; k <= fast.k_reached; ++k)
            CHECK(std::abs(fast.level_sums[k] - ref.level_sums[k]) <=
                  1e-13 * (1.0 + std::abs(ref.level_sums[k])));
        CHECK(std::abs(fast.value - ref.value) <= 1e-13 * (1.0 + std::abs(ref.value)));
    }
}

TEST_CASE("NotConvergent above the half threshold") {
    auto rng = make_rng(303);
    UTriple u = random_triple(rng, 2, 0.7);
    CHECK(u.max_norm() >= 0.5);
    CHECK_THROWS_AS(phi_series_n3(u, 1e-10, 14), NotConvergent);
    CHECK_THROWS_AS(phi_series_n3_reference(u, 1e-10, 14), NotConvergent);
}

TEST_CASE("k_max exhaustion is flagged, result still returned") {
    auto rng = make_rng(304);
    const UTriple u = random_triple(rng, 2, 0.45);
    const SeriesEvaluation ev = phi_series_n3(u, 1e-12, 5);
    CHECK(!ev.tol_reached);
    CHECK(ev.k_reached == 5);
    CHECK(ev.error_bound > 1e-12);
    CHECK(std::isfinite(ev.value.real()));
}

TEST_CASE("determinism: bit-identical reevaluation") {
    auto rng = make_rng(305);
    const UTriple u = random_triple(rng, 4, 0.3);
    const SeriesEvaluation a = phi_series_n3(u, 1e-10, 12);
    const SeriesEvaluation b = phi_series_n3(u, 1e-10, 12);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.pos_sum == b.pos_sum);
    CHECK(a.neg_sum == b.neg_sum);
}

TEST_CASE("certified error: |S_{k+8} - S_k| <= tail_bound(m, k)") {
    auto rng = make_rng(306);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t dim = 2 + trial % 4;
        const UTriple u = random_triple(rng, dim, 0.05);
        const double m = u.max_norm();
        const SeriesEvaluation deep = phi_series_n3(u, 1e-300, 14);
        for (int k = 3; k <= 6; ++k) {
            cplx sk{}, skk{};
            for (int j = 1; j <= k; ++j) sk += deep.level_sums[j];
            for (int j = 1; j <= k + 8; ++j) skk += deep.level_sums[j];
            CHECK(std::abs(skk - sk) <= tail_bound(m, k) + 1e-13);
        }
    }
}

TEST_CASE("term bound: |a_k| <= (k/2)(2m)^{k+1}") {
    auto rng = make_rng(307);
    for (int trial = 0; trial < 10; ++trial) {
        const UTriple u = random_triple(rng, 2 + trial % 4, 0.1);
        const double m = u.max_norm();
        const SeriesEvaluation ev = phi_series_n3(u, 1e-300, 12);
        for (int k = 1; k <= ev.k_reached; ++k)
            CHECK(std::abs(ev.level_sums[k]) <=
                  (k / 2.0) * std::pow(2 * m, k + 1) + 1e-13);
    }
}

TEST_CASE("factorial-coefficient recursion equals the closed form to depth 8") {
    // counts (q1, q2) of 1s and 2s; f = q1! (q2-1)! / (q1+q2+1)!
    struct Walker {
        double worst = 0;
        void walk(int depth, int q1, int q2, double f) {
            for (int j = 0; j < 3; ++j) {
                const int nq1 = q1 + (j == 1);
                const int nq2 = q2 + (j == 2);
                double nf;
                if (j == 0)
                    nf = f;
                else if (j == 1)
                    nf = f * (q1 + 1.0) / (q1 + q2 + 2.0);
                else
                    nf = (q2 == 0) ? monomial_integral(q1, 0) : f * q2 / (q1 + q2 + 2.0);
                if (nq2 >= 1) {
                    const double direct = factorial_exact(nq1) * factorial_exact(nq2 - 1) /
                                          factorial_exact(nq1 + nq2 + 1);
                    worst = std::max(worst, std::abs(nf - direct) / direct);
                }
                if (depth + 1 < 8) walk(depth + 1, nq1, nq2, nf);
            }
        }
    } w;
    w.walk(0, 0, 0, 0.0);
    CHECK(w.worst <= 1e-14);
}

TEST_CASE("coefficient sums over tuples stay below 2^{k-1}") {
    // dynamic programme over (q1, q2) with multiplicities
    for (int k = 1; k <= 10; ++k) {
        std::map<std::pair<int, int>, double> count{{{0, 0}, 1.0}};
        for (int step = 0; step < k; ++step) {
            std::map<std::pair<int, int>, double> next;
            for (const auto& [key, c] : count) {
                next[{key.first, key.second}] += c;
                next[{key.first + 1, key.second}] += c;
                next[{key.first, key.second + 1}] += c;
            }
            count = std::move(next);
        }
        double total = 0;
        for (const auto& [key, c] : count) {
            if (key.second < 1) continue; // tuples with no 2s carry no coefficient
            total += c * factorial_exact(key.first) * factorial_exact(key.second - 1) /
                     factorial_exact(key.first + key.second + 1);
        }
        CHECK(total <= std::pow(2.0, k - 1) + 1e-12);
    }
}

TEST_CASE("position-weight sum identity") {
    for (int k = 1; k <= 100; ++k) {
        std::int64_t s = 0;
        for (int j = 1; j <= k; ++j) s += std::abs(k - 2 * j + 1);
        const std::int64_t want = (k % 2 == 0) ? (static_cast<std::int64_t>(k) * k) / 2
                                               : (static_cast<std::int64_t>(k) * k - 1) / 2;
        CHECK(s == want);
    }
}

TEST_CASE("phi_n1") {
    auto rng = make_rng(308);
    const CMatrix x = testutil::random_pdh_near_identity(rng, 3, 0.4);
    CHECK(phi_n1(x, x) == 0.0);

    const CMatrix i2 = CMatrix::identity(2);
    CHECK(phi_n1(2.0 * i2, i2) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));

    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix x0 = testutil::random_matrix(rng, 3) + 2.5 * CMatrix::identity(3);
        const CMatrix x1 = testutil::random_matrix(rng, 3) + 2.5 * CMatrix::identity(3);
        // eigenvalue oracle: 1 + A = (X0 X1^{-1})* (X0 X1^{-1}) is PDH
        const CMatrix g = x0 * inverse(x1);
        const auto e = hermitian_eig(hermitian_part(adjoint(g) * g), 1e-9);
        double direct = 0;
        for (double l : e.eigenvalues) direct += std::log(l);
        CHECK(phi_n1(x0, x1) == doctest::Approx(direct).epsilon(1e-11));
    }
    CHECK_THROWS_AS(phi_n1(CMatrix(2), CMatrix::identity(2)), Singular);
}
