#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <tornheim/decomposer.hpp>
#include <tornheim/evaluator.hpp>

using namespace tornheim;

namespace {

const RootOfUnity one = RootOfUnity::one();
const RootOfUnity minus_one = RootOfUnity::minus_one();

// Test-side oracles: plain loops in long double, independent of the library's
// Euler-Maclaurin and residue-class machinery.

/// sum_{m<=n_max} m^-s plus the midpoint of the integral bracket for the tail.
long double brute_zeta(int s, long long n_max, long double& error) {
    long double sum = 0.0L;
    for (long long m = n_max; m >= 1; --m) {
        sum += std::pow(static_cast<long double>(m), -s);
    }
    // sum_{m>N} m^-s lies between N+1 and N based integrals
    const long double lo = std::pow(static_cast<long double>(n_max + 1), 1 - s) / (s - 1);
    const long double hi = std::pow(static_cast<long double>(n_max), 1 - s) / (s - 1);
    error = (hi - lo) / 2;
    return sum + (lo + hi) / 2;
}

/// sum_{m>n>=1, m<=m_max} x^m y^n / (m^s n^t), running inner sum.
std::complex<long double> brute_li(int s, int t, const RootOfUnity& x, const RootOfUnity& y, long long m_max) {
    std::complex<long double> inner = 0.0L;
    std::complex<long double> outer = 0.0L;
    for (long long m = 1; m <= m_max; ++m) {
        const auto xm = root_value(x.pow(m));
        const auto ym = root_value(y.pow(m));
        const long double md = static_cast<long double>(m);
        outer += std::complex<long double>(xm.real(), xm.imag()) * inner / std::pow(md, s);
        inner += std::complex<long double>(ym.real(), ym.imag()) / std::pow(md, t);
    }
    return outer;
}

/// sum_{m+n<=k_max} alpha^n beta^(m+n) / (m^p n^q (m+n)^r), straightforward double loop.
std::complex<long double> brute_mt(const MTIndex& idx, const RootOfUnity& alpha, const RootOfUnity& beta,
                                   long long k_max) {
    std::complex<long double> sum = 0.0L;
    for (long long m = 1; m < k_max; ++m) {
        for (long long n = 1; m + n <= k_max; ++n) {
            const auto c = root_value(alpha.pow(n)) * root_value(beta.pow(m + n));
            const long double w = std::pow(static_cast<long double>(m), -idx.p()) *
                                  std::pow(static_cast<long double>(n), -idx.q()) *
                                  std::pow(static_cast<long double>(m + n), -idx.r());
            sum += std::complex<long double>(c.real(), c.imag()) * w;
        }
    }
    return sum;
}

double dist(std::complex<double> a, std::complex<long double> b) {
    return static_cast<double>(std::abs(std::complex<long double>(a.real(), a.imag()) - b));
}

} // namespace

// =============================================================================
// Value type and configuration
// =============================================================================

TEST(ValueWithErrorTest, RejectsNonFinite) {
    EXPECT_THROW(ValueWithError(std::nan(""), 0.0), std::domain_error);
    EXPECT_THROW(ValueWithError(1.0, -1.0), std::domain_error);
    EXPECT_THROW(ValueWithError(1.0, INFINITY), std::domain_error);
    EXPECT_NO_THROW(ValueWithError(1.0, 0.0));
}

TEST(EvalConfigTest, Validation) {
    EvalConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.tolerance = 1e-14;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.euler_maclaurin_order = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.max_inner_terms = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

// =============================================================================
// Tails and constants
// =============================================================================

TEST(TailSumTest, ZetaTwo) {
    long double brute_error = 0;
    const long double brute = brute_zeta(2, 10000000, brute_error);
    const auto v = tail_sum(2, one, 0);
    EXPECT_LT(brute_error, 1e-14);
    EXPECT_LT(dist(v.value(), brute), 1e-12);
    EXPECT_NEAR(v.value().real(), 1.6449340668, 1e-10);
    EXPECT_NEAR(v.value().real(), std::numbers::pi * std::numbers::pi / 6, 1e-15);
    EXPECT_LT(v.error_bound(), 1e-14);
}

TEST(TailSumTest, AlternatingFour) {
    // Averaging consecutive partial sums of an alternating series with
    // decreasing terms leaves an error below the last term.
    long double partial = 0.0L;
    long double previous = 0.0L;
    const long long n_max = 200000;
    for (long long m = 1; m <= n_max; ++m) {
        previous = partial;
        partial += (m % 2 == 0 ? 1.0L : -1.0L) / std::pow(static_cast<long double>(m), 4);
    }
    const long double brute = (partial + previous) / 2;
    const auto v = tail_sum(4, minus_one, 0);
    EXPECT_LT(dist(v.value(), brute), 1e-12);
    EXPECT_NEAR(v.value().real(), -0.9470328294, 1e-10);
    EXPECT_NEAR(v.value().real(), -7.0 / 8.0 * std::pow(std::numbers::pi, 4) / 90.0, 1e-15);
    EXPECT_EQ(v.value().imag(), 0.0);
}

TEST(TailSumTest, FarTailIntegralBracket) {
    const auto v = tail_sum(2, one, 1000000);
    EXPECT_GT(v.value().real(), 9.99e-7);
    EXPECT_LT(v.value().real(), 1.01e-6);
    // 1/(N+1) < sum_{m>N} m^-2 < 1/N, and the midpoint rule is sharper still
    EXPECT_GT(v.value().real(), 1.0 / 1000001.0);
    EXPECT_LT(v.value().real(), 1.0 / 1000000.0);
    EXPECT_NEAR(v.value().real(), 1.0 / 1000000.5, 1e-18);
}

TEST(TailSumTest, ColoredTailsMatchDirectSummation) {
    for (const auto& x : {RootOfUnity(1, 3), RootOfUnity(1, 4), RootOfUnity(3, 4), RootOfUnity(2, 5)}) {
        for (const int s : {2, 3, 5}) {
            for (const std::int64_t n : {0, 7, 100}) {
                // Direct sum to m = 1e6; remainder bounded by 2/|1-x| (1e6)^-s.
                std::complex<long double> direct = 0.0L;
                for (long long m = 1000000; m > n; --m) {
                    const auto xm = root_value(x.pow(m));
                    direct += std::complex<long double>(xm.real(), xm.imag()) /
                              std::pow(static_cast<long double>(m), s);
                }
                const double remainder = 2.0 / std::abs(1.0 - root_value(x)) * std::pow(1e6, -s);
                const auto v = tail_sum(s, x, n);
                EXPECT_LT(dist(v.value(), direct), remainder + 1e-14) << to_string(x) << " s=" << s << " n=" << n;
                EXPECT_LT(v.error_bound(), 1e-14);
            }
        }
    }
}

TEST(TailSumTest, RejectsOuterExponentOne) {
    EXPECT_THROW(tail_sum(1, one, 0), std::invalid_argument);
    EXPECT_THROW(tail_sum(2, one, -1), std::invalid_argument);
}

TEST(ConstantsTest, ZetaValues) {
    for (const auto& [s, printed] : {std::pair{2, 1.6449340668}, {3, 1.2020569032}, {5, 1.0369277551}}) {
        long double brute_error = 0;
        const long double brute = brute_zeta(s, 2000000, brute_error);
        const auto v = zeta_const(s);
        EXPECT_LT(dist(v.value(), brute), 1e-12 + static_cast<double>(brute_error));
        EXPECT_NEAR(v.value().real(), printed, 5e-11);
        EXPECT_LT(v.error_bound(), 1e-12);
    }
    EXPECT_NEAR(pi_const().value().real(), 3.14159265358979323846, 1e-15);
}

// =============================================================================
// Double polylogarithms
// =============================================================================

TEST(EvalLiTest, EulerZetaTwoOne) {
    // sum_{m<=M} H_{m-1}/m^2 plus the leading tail estimate (ln M + gamma + 1)/M.
    const long long m_max = 100000;
    const auto brute = brute_li(2, 1, one, one, m_max);
    const long double tail = (std::log(static_cast<long double>(m_max)) + 0.5772156649L + 1.0L) / m_max;
    const auto v = eval_li(2, 1, one, one);
    EXPECT_LT(dist(v.value(), brute + tail), 1e-8);
    EXPECT_LT(std::abs(v.value() - zeta_const(3).value()), 1e-13);
    EXPECT_NEAR(v.value().real(), 1.2020569032, 1e-10);
    EXPECT_LE(v.error_bound(), 1e-10);
}

TEST(EvalLiTest, ZetaSixOne) {
    const auto brute = brute_li(6, 1, one, one, 100000);
    const auto v = eval_li(6, 1, one, one);
    EXPECT_LT(dist(v.value(), brute), 1e-10);
    EXPECT_LE(v.error_bound(), 1e-10);
}

TEST(EvalLiTest, ZetaThreeOneIsPiFourOver360) {
    const auto v = eval_li(3, 1, one, one);
    EXPECT_NEAR(v.value().real(), std::pow(std::numbers::pi, 4) / 360.0, 1e-13);
}

TEST(EvalLiTest, ColoredAgainstBruteForce) {
    const std::vector<RootOfUnity> colors = {one, minus_one, {1, 3}, {1, 4}, {3, 4}};
    for (const auto& x : colors) {
        for (const auto& y : colors) {
            for (const auto& [s, t] : {std::pair{4, 1}, {3, 2}, {5, 2}}) {
                // outer tail <= zeta(t) sum_{m>M} m^-s (or (1+ln m) m^-s for t=1), below 1e-11 here
                const auto brute = brute_li(s, t, x, y, 300000);
                const auto v = eval_li(s, t, x, y);
                EXPECT_LT(dist(v.value(), brute), v.error_bound() + 1e-11)
                    << s << "," << t << " " << to_string(x) << " " << to_string(y);
                EXPECT_LE(v.error_bound(), 1e-10);
            }
        }
    }
}

TEST(EvalLiTest, BudgetExhaustionIsReportedNotThrown) {
    EvalConfig cfg;
    cfg.max_inner_terms = 100;
    const auto v = eval_li(2, 1, RootOfUnity(1, 4), one, cfg);
    EXPECT_GT(v.error_bound(), cfg.tolerance);
    const auto reference = eval_li(2, 1, RootOfUnity(1, 4), one);
    EXPECT_LT(std::abs(v.value() - reference.value()), v.error_bound());
}

TEST(EvalLiTest, RejectsInvalidExponents) {
    EXPECT_THROW(eval_li(1, 1, one, one), std::invalid_argument);
    EXPECT_THROW(eval_li(2, 0, one, one), std::invalid_argument);
}

TEST(EvalLiTest, RealArgumentsGiveRealValues) {
    for (const auto& x : {one, minus_one}) {
        for (const auto& y : {one, minus_one}) {
            for (const auto& [s, t] : {std::pair{2, 1}, {3, 2}, {6, 1}}) {
                EXPECT_LT(std::abs(eval_li(s, t, x, y).value().imag()), 1e-13);
            }
        }
    }
}

// =============================================================================
// Direct series and decompositions
// =============================================================================

TEST(OracleTest, MatchesNaiveDoubleLoop) {
    EvalConfig cfg;
    cfg.oracle_cutoff = 400;
    for (const auto& idx : {MTIndex(2, 1, 2), MTIndex(0, 2, 2), MTIndex(3, 2, 0), MTIndex(1, 1, 1)}) {
        for (const auto& [a, b] : {std::pair{one, one}, {minus_one, one}, {RootOfUnity(1, 3), RootOfUnity(3, 4)}}) {
            const auto v = eval_mt_direct(idx, a, b, cfg);
            EXPECT_LT(dist(v.value(), brute_mt(idx, a, b, 400)), 1e-13);
        }
    }
}

TEST(OracleTest, R212PrintedValue) {
    const auto v = eval_mt_direct(MTIndex(2, 1, 2), minus_one, one);
    EXPECT_NEAR(v.value().real(), -0.2402184755, 5e-9);
    EXPECT_EQ(v.value().imag(), 0.0);
    EXPECT_LT(v.error_bound(), 1e-8);
}

TEST(OracleTest, TailBoundCoversPositiveSeries) {
    // All terms positive: the value can only grow with the cutoff, and by no
    // more than the bound at the smaller cutoff.
    for (const auto& idx : {MTIndex(1, 1, 1), MTIndex(2, 1, 2), MTIndex(0, 1, 2), MTIndex(2, 2, 0), MTIndex(1, 0, 3)}) {
        EvalConfig small;
        small.oracle_cutoff = 500;
        EvalConfig large;
        large.oracle_cutoff = 8000;
        const auto a = eval_mt_direct(idx, one, one, small);
        const auto b = eval_mt_direct(idx, one, one, large);
        const double growth = b.value().real() - a.value().real();
        EXPECT_GT(growth, 0.0);
        EXPECT_LT(growth, a.error_bound()) << to_string(idx);
    }
}

TEST(OracleTest, TwoCutoffsAgree) {
    EvalConfig cfg;
    const auto a = eval_mt_direct(MTIndex(2, 1, 2), one, one, cfg);
    cfg.oracle_cutoff = 10000;
    const auto b = eval_mt_direct(MTIndex(2, 1, 2), one, one, cfg);
    EXPECT_LT(std::abs(a.value() - b.value()), 1e-6);
}

TEST(OracleTest, ConjugationSymmetry) {
    EvalConfig cfg;
    cfg.oracle_cutoff = 2000;
    const std::vector<RootOfUnity> colors = {{1, 3}, {1, 4}, {2, 5}, {5, 6}};
    for (const auto& a : colors) {
        for (const auto& b : colors) {
            const auto v = eval_mt_direct(MTIndex(1, 2, 2), a, b, cfg);
            const auto w = eval_mt_direct(MTIndex(1, 2, 2), root_inv(a), root_inv(b), cfg);
            EXPECT_LT(std::abs(w.value() - std::conj(v.value())), 1e-12);
        }
    }
}

TEST(OracleTest, ZeroPMatchesSingleLi) {
    for (const auto& [a, b] : {std::pair{one, one}, {minus_one, one}, {RootOfUnity(1, 3), RootOfUnity(1, 4)}}) {
        const auto oracle = eval_mt_direct(MTIndex(0, 2, 2), a, b);
        const auto li = eval_li(2, 2, b, a);
        EXPECT_LT(std::abs(oracle.value() - li.value()), oracle.error_bound() + li.error_bound());
    }
}

TEST(OracleTest, Deterministic) {
    EvalConfig cfg;
    cfg.oracle_cutoff = 3000;
    const auto a = eval_mt_direct(MTIndex(2, 2, 1), RootOfUnity(1, 3), RootOfUnity(1, 4), cfg);
    const auto b = eval_mt_direct(MTIndex(2, 2, 1), RootOfUnity(1, 3), RootOfUnity(1, 4), cfg);
    EXPECT_EQ(a.value(), b.value());
    EXPECT_EQ(a.error_bound(), b.error_bound());
}

TEST(DiagonalSumsTest, RejectsIncompatibleAlpha) {
    const DiagonalSums table(2, 1, 4, 100);
    EXPECT_NO_THROW(table.evaluate(2, RootOfUnity(1, 2), one));
    EXPECT_THROW(table.evaluate(2, RootOfUnity(1, 3), one), std::invalid_argument);
    EXPECT_THROW(table.evaluate(0, one, one), std::invalid_argument);
}

TEST(EvalDecompositionTest, R212) {
    const auto v = eval_decomposition(decompose(MTIndex(2, 1, 2), minus_one, one));
    EXPECT_NEAR(v.value().real(), -0.2402184755, 1e-9);
    EXPECT_LE(v.error_bound(), 1e-10);
    EXPECT_EQ(v.value().imag(), 0.0);
}

TEST(EvalDecompositionTest, R113AgainstOracleAndTerms) {
    const auto d = decompose(MTIndex(1, 1, 3), minus_one, one);
    const auto v = eval_decomposition(d);
    const auto oracle = eval_mt_direct(MTIndex(1, 1, 3), minus_one, one);
    EXPECT_LT(std::abs(v.value() - oracle.value()), v.error_bound() + oracle.error_bound());
    const auto sum = eval_li(4, 1, minus_one, minus_one).value() + eval_li(4, 1, one, minus_one).value();
    EXPECT_LT(std::abs(v.value() - sum), 1e-10);
}

TEST(EvalDecompositionTest, EmptyIsZero) {
    const Decomposition d{MTIndex(1, 1, 1), one, one, {}};
    const auto v = eval_decomposition(d);
    EXPECT_EQ(v.value(), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(v.error_bound(), 0.0);
}

TEST(EvalDecompositionTest, TornheimOneOneOneIsTwoZetaThree) {
    const auto v = eval_decomposition(decompose(MTIndex(1, 1, 1), one, one));
    EXPECT_NEAR(v.value().real(), 2 * 1.2020569031595942, 1e-12);
}

TEST(EvalDecompositionTest, HalvingToleranceStaysInsideBound) {
    const std::vector<RootOfUnity> colors = {one, minus_one, {1, 3}, {3, 4}};
    for (const auto& idx : {MTIndex(1, 1, 1), MTIndex(0, 1, 2), MTIndex(3, 1, 1), MTIndex(2, 2, 2)}) {
        for (const auto& a : colors) {
            for (const auto& b : colors) {
                EvalConfig cfg;
                cfg.tolerance = 1e-8;
                const auto d = decompose(idx, a, b);
                const auto coarse = eval_decomposition(d, cfg);
                cfg.tolerance = 1e-12;
                const auto fine = eval_decomposition(d, cfg);
                EXPECT_LE(coarse.error_bound(), 1e-8);
                EXPECT_LT(std::abs(coarse.value() - fine.value()), coarse.error_bound());
            }
        }
    }
}
