#ifndef TORNHEIM_EVALUATOR_HPP
#define TORNHEIM_EVALUATOR_HPP

// Numerical evaluation with rigorous absolute error bounds (up to IEEE
// rounding, which is bounded separately and folded in).
//
// Hurwitz tails  zeta(s, a) = sum_{j>=0} (a+j)^-s  are computed by direct
// summation up to a start point a0 followed by Euler-Maclaurin:
//
//   zeta(s, a0) = a0^(1-s)/(s-1) + a0^-s/2
//               + sum_{k=1..K} B_2k/(2k)! (s)_(2k-1) a0^(1-s-2k) + E,
//
// where (s)_j is the rising factorial. x^-s is completely monotone, so |E| is
// at most the first omitted correction; that term is the reported bound.
//
// The direct-sum oracle truncates on anti-diagonals m+n <= K. Splitting each
// diagonal at m = k/2 gives
//
//   sum_{m+n=k} m^-p n^-q <= (2/k)^q h_p(k) + (2/k)^p h_q(k),
//
// with h_0(k) = k, h_1(k) = 1 + ln k, h_p(k) = p/(p-1) for p >= 2. The tail
// beyond K is bounded by integrating k^-r times that bound from K to infinity.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "decomposer.hpp"
#include "summation.hpp"

namespace tornheim {

/// Complex value with an absolute error bound. Never NaN or infinite.
class ValueWithError {
public:
    ValueWithError() = default;
    ValueWithError(std::complex<double> value, double error_bound) : value_(value), error_(error_bound) {
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw std::domain_error("non-finite value");
        }
        if (!(error_bound >= 0.0) || !std::isfinite(error_bound)) {
            throw std::domain_error("error bound must be finite and nonnegative");
        }
    }

    std::complex<double> value() const { return value_; }
    double error_bound() const { return error_; }

private:
    std::complex<double> value_{0.0, 0.0};
    double error_ = 0.0;
};

struct EvalConfig {
    double tolerance = 1e-10;
    std::int64_t oracle_cutoff = 20000;
    std::int64_t max_inner_terms = 200000;
    int euler_maclaurin_order = 8;

    void validate() const {
        if (!(tolerance >= 1e-13)) {
            throw std::invalid_argument("tolerance>=1e-13 required");
        }
        if (oracle_cutoff < 3) {
            throw std::invalid_argument("oracle cutoff>=3 required");
        }
        if (max_inner_terms < 1) {
            throw std::invalid_argument("max inner terms>=1 required");
        }
        if (euler_maclaurin_order < 2 || euler_maclaurin_order > 16 || euler_maclaurin_order % 2 != 0) {
            throw std::invalid_argument("Euler-Maclaurin order must be even, 2..16");
        }
    }
};

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

struct Bounded {
    double value = 0.0;
    double error = 0.0;
};

// B_2 .. B_18
inline constexpr std::array<double, 9> bernoulli_even = {
    1.0 / 6.0,  -1.0 / 30.0,      1.0 / 42.0, -1.0 / 30.0,    5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
};

/// B_2k/(2k)! * (s)_(2k-1), the k-th Euler-Maclaurin coefficient for x^-s.
inline double em_coefficient(int s, int k) {
    double c = bernoulli_even[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i <= 2 * k; ++i) {
        c /= static_cast<double>(i);
    }
    for (int i = 0; i < 2 * k - 1; ++i) {
        c *= static_cast<double>(s + i);
    }
    return c;
}

/// zeta(s, w) = sum_{j>=0} (w+j)^-s for s >= 2, w > 0.
inline Bounded hurwitz_zeta(int s, double w, int order) {
    const int terms = order / 2;
    const double omitted = std::abs(em_coefficient(s, terms + 1));
    // Start Euler-Maclaurin once the omitted term is ~1e-17 of the leading term.
    const double start =
        std::max(8.0, std::pow(omitted * (s - 1) / 1e-17, 1.0 / static_cast<double>(2 * terms + 2)));
    const auto direct = w < start ? static_cast<std::int64_t>(std::ceil(start - w)) : std::int64_t{0};
    const double a = w + static_cast<double>(direct);

    CompensatedSum sum;
    double corr = std::pow(a, -s - 1);
    const double a2 = a * a;
    std::array<double, 9> corrections{};
    for (int k = 1; k <= terms; ++k) {
        corrections[static_cast<std::size_t>(k - 1)] = em_coefficient(s, k) * corr;
        corr /= a2;
    }
    for (int k = terms; k >= 1; --k) {
        sum.add(corrections[static_cast<std::size_t>(k - 1)]);
    }
    sum.add(std::pow(a, -s) / 2.0);
    sum.add(std::pow(a, 1 - s) / (s - 1));
    for (std::int64_t j = direct - 1; j >= 0; --j) {
        sum.add(std::pow(w + static_cast<double>(j), -s));
    }
    const double truncation = omitted * corr;
    return {sum.value(), truncation + (s + 8) * eps * sum.magnitude()};
}

/// Upper bound on sum_{n>M} n^-a for a > 1.
inline double power_tail_bound(double a, double m) { return std::pow(m, 1.0 - a) / (a - 1.0); }

/// Cycles through x^n for n counting down, without recomputing roots.
class RootPowers {
public:
    RootPowers(const RootOfUnity& x, std::int64_t start) : order_(x.order()) {
        table_.reserve(static_cast<std::size_t>(order_));
        for (std::int64_t c = 0; c < order_; ++c) {
            table_.push_back(root_value(x.pow(c)));
        }
        index_ = start % order_;
    }
    std::complex<double> current() const { return table_[static_cast<std::size_t>(index_)]; }
    void step_down() { index_ = index_ == 0 ? order_ - 1 : index_ - 1; }

private:
    std::int64_t order_;
    std::int64_t index_;
    std::vector<std::complex<double>> table_;
};

} // namespace detail

/// T(s, x, n) = sum_{m>n} x^m / m^s, s >= 2.
///
/// Residue classes m = n + c + N j (c = 1..N, N = order of x) turn the tail
/// into x^n sum_c x^c N^-s zeta(s, (n+c)/N).
inline ValueWithError tail_sum(int s, const RootOfUnity& x, std::int64_t n, const EvalConfig& cfg = {}) {
    if (s < 2) {
        throw std::invalid_argument("tail_sum requires s>=2");
    }
    if (n < 0) {
        throw std::invalid_argument("tail_sum requires n>=0");
    }
    const std::int64_t order = x.order();
    const double scale = std::pow(static_cast<double>(order), -s);
    ComplexCompensatedSum sum;
    double error = 0.0;
    for (std::int64_t c = 1; c <= order; ++c) {
        const double w = static_cast<double>(n + c) / static_cast<double>(order);
        const auto h = detail::hurwitz_zeta(s, w, cfg.euler_maclaurin_order);
        sum.add(root_value(x.pow(n + c)) * (scale * h.value));
        error += scale * h.error;
    }
    error += 4 * detail::eps * sum.magnitude();
    return {sum.value(), error};
}

namespace detail {

// Summands y^n n^-t T(s,x,n) for n = M..1, with T(s,x,n-1) = T(s,x,n) + x^n n^-s.
// Returns the partial sum; `error` receives the propagated tail and rounding error.
inline std::complex<double> backward_li_sum(int s, int t, const RootOfUnity& x, const RootOfUnity& y,
                                            std::int64_t m, const EvalConfig& cfg, double& error) {
    const ValueWithError start = tail_sum(s, x, m, cfg);
    ComplexCompensatedSum tail;
    tail.add(start.value());
    ComplexCompensatedSum acc;
    RootPowers xs(x, m);
    RootPowers ys(y, m);
    double weight = 0.0;
    for (std::int64_t n = m; n >= 1; --n) {
        const double nd = static_cast<double>(n);
        const double inv_t = inverse_power(nd, t);
        acc.add(ys.current() * (inv_t * tail.value()));
        weight += inv_t;
        tail.add(xs.current() * inverse_power(nd, s));
        xs.step_down();
        ys.step_down();
    }
    error = start.error_bound() * weight + (s + t + 16) * eps * acc.magnitude();
    return acc.value();
}

// zeta(s, t) = Li_{s,t}(1, 1). Summand n^-t zeta(s, n+1) has a pure power
// expansion in 1/n, so the tail past M is a finite combination of Hurwitz
// values plus one bounded omitted term.
inline ValueWithError eval_mzv(int s, int t, const EvalConfig& cfg) {
    const int terms = cfg.euler_maclaurin_order / 2;
    const double omitted = std::abs(em_coefficient(s, terms + 1));
    const int top = s + t + 2 * terms + 1;
    std::int64_t m = 16;
    while (omitted * power_tail_bound(top, static_cast<double>(m)) > cfg.tolerance / 4 && m < cfg.max_inner_terms) {
        m *= 2;
    }
    m = std::min(m, cfg.max_inner_terms);

    double error = 0.0;
    const std::complex<double> head = backward_li_sum(s, t, RootOfUnity::one(), RootOfUnity::one(), m, cfg, error);

    const double start = static_cast<double>(m + 1);
    CompensatedSum tail;
    for (int k = terms; k >= 1; --k) {
        const auto h = hurwitz_zeta(s + t + 2 * k - 1, start, cfg.euler_maclaurin_order);
        const double c = em_coefficient(s, k);
        tail.add(c * h.value);
        error += std::abs(c) * h.error;
    }
    const auto half = hurwitz_zeta(s + t, start, cfg.euler_maclaurin_order);
    tail.add(-half.value / 2.0);
    error += half.error / 2.0;
    const auto lead = hurwitz_zeta(s + t - 1, start, cfg.euler_maclaurin_order);
    tail.add(lead.value / (s - 1));
    error += lead.error / (s - 1);

    const auto last = hurwitz_zeta(top, start, cfg.euler_maclaurin_order);
    error += omitted * (last.value + last.error) + 4 * eps * tail.magnitude();

    ComplexCompensatedSum total;
    total.add(tail.value());
    total.add(head);
    return {total.value(), error + 2 * eps * std::abs(total.value())};
}

inline ValueWithError eval_li_unchecked(int s, int t, const RootOfUnity& x, const RootOfUnity& y,
                                        const EvalConfig& cfg) {
    if (x.is_one() && y.is_one()) {
        return eval_mzv(s, t, cfg);
    }
    // Dirichlet bounds on the dropped n > M part:
    //   x != 1: |T(s,x,n)| <= 2/|1-x| n^-s, so the tail is <= 2/|1-x| sum_{n>M} n^-(s+t);
    //   x == 1: n^-t zeta(s, n+1) decreases, partial sums of y^n are <= 2/|1-y|.
    const double weight = s + t - 1;
    double constant = 0.0;
    double denominator = 0.0;
    if (!x.is_one()) {
        constant = 2.0 / std::abs(1.0 - root_value(x));
        denominator = weight;
    } else {
        constant = 2.0 / std::abs(1.0 - root_value(y));
        denominator = s - 1;
    }
    auto bound = [&](std::int64_t m) {
        const double base = x.is_one() ? static_cast<double>(m + 1) : static_cast<double>(m);
        return constant * std::pow(base, -weight) / denominator;
    };
    const double target = cfg.tolerance / 2;
    const double guess = std::ceil(std::pow(constant / (denominator * target), 1.0 / weight));
    std::int64_t m = guess >= static_cast<double>(cfg.max_inner_terms) ? cfg.max_inner_terms
                                                                       : std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
    while (m < cfg.max_inner_terms && bound(m) > target) {
        ++m;
    }

    double error = 0.0;
    const std::complex<double> head = backward_li_sum(s, t, x, y, m, cfg, error);
    return {head, error + bound(m)};
}

} // namespace detail

/// Li_{s,t}(x, y) = sum_{m>n>=1} x^m y^n / (m^s n^t), s >= 2, t >= 1.
///
/// The truncation point is chosen so the bound meets cfg.tolerance; if that
/// would need more than cfg.max_inner_terms inner terms, the sum stops there
/// and the bound reports what was actually achieved.
inline ValueWithError eval_li(int s, int t, const RootOfUnity& x, const RootOfUnity& y, const EvalConfig& cfg = {}) {
    cfg.validate();
    if (s < 2) {
        throw std::invalid_argument("Li requires s>=2");
    }
    if (t < 1) {
        throw std::invalid_argument("Li requires t>=1");
    }
    return detail::eval_li_unchecked(s, t, x, y, cfg);
}

/// Weighted sum of Li terms. The tolerance is split in proportion to the
/// coefficients so the combined bound still meets cfg.tolerance.
inline ValueWithError eval_decomposition(const Decomposition& d, const EvalConfig& cfg = {}) {
    cfg.validate();
    std::int64_t total = 0;
    for (const auto& term : d.terms) {
        total += term.coeff;
    }
    if (total == 0) {
        return {};
    }
    EvalConfig term_cfg = cfg;
    term_cfg.tolerance = cfg.tolerance / static_cast<double>(total);
    ComplexCompensatedSum sum;
    double error = 0.0;
    for (const auto& term : d.terms) {
        const auto v = detail::eval_li_unchecked(term.s, term.t, term.x, term.y, term_cfg);
        const double c = static_cast<double>(term.coeff);
        sum.add(c * v.value());
        error += c * v.error_bound();
    }
    return {sum.value(), error + 2 * detail::eps * sum.magnitude()};
}

inline ValueWithError zeta_const(int s, const EvalConfig& cfg = {}) {
    return tail_sum(s, RootOfUnity::one(), 0, cfg);
}

/// pi to double precision; the bound covers the representation error.
inline ValueWithError pi_const() { return {std::numbers::pi, 2e-16}; }

/// Upper bound on sum_{m+n>cutoff} 1/(m^p n^q (m+n)^r).
inline double oracle_tail_bound(const MTIndex& idx, std::int64_t cutoff) {
    const double big_k = static_cast<double>(cutoff);
    const double log_k = std::log(big_k);
    // integral_K^inf coef k^-a (1 + ln k)^[with_log]
    auto piece = [&](double coef, double a, bool with_log) {
        const double plain = std::pow(big_k, 1.0 - a) / (a - 1.0);
        if (!with_log) {
            return coef * plain;
        }
        const double logged = std::pow(big_k, 1.0 - a) * (log_k / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
        return coef * (plain + logged);
    };
    // (2/k)^u h_v(k) k^-r
    auto half = [&](int u, int v) {
        const double coef = std::pow(2.0, u);
        const double a = idx.r() + u;
        if (v == 0) {
            return piece(coef, a - 1.0, false);
        }
        if (v == 1) {
            return piece(coef, a, true);
        }
        return piece(coef * v / (v - 1.0), a, false);
    };
    return half(idx.q(), idx.p()) + half(idx.p(), idx.q());
}

/// Anti-diagonal sums A_k[c] = sum_{m+n=k, n = c mod L} m^-p n^-q for k <= cutoff.
///
/// Together with any r and any colors alpha (order dividing L) and beta this
/// gives the truncated direct series
///   sum_{k<=cutoff} beta^k k^-r sum_c alpha^c A_k[c],
/// so one table serves a whole family of oracle evaluations.
class DiagonalSums {
public:
    DiagonalSums(int p, int q, std::int64_t residues, std::int64_t cutoff)
        : p_(p), q_(q), residues_(residues), cutoff_(cutoff) {
        if (p < 0 || q < 0 || p + q == 0) {
            throw std::invalid_argument("diagonal sums need p,q>=0 and p+q>0");
        }
        if (residues < 1 || cutoff < 3) {
            throw std::invalid_argument("diagonal sums need residues>=1 and cutoff>=3");
        }
        std::vector<double> inv_p(static_cast<std::size_t>(cutoff));
        std::vector<double> inv_q(static_cast<std::size_t>(cutoff));
        for (std::int64_t i = 1; i < cutoff; ++i) {
            inv_p[static_cast<std::size_t>(i)] = inverse_power(static_cast<double>(i), p);
            inv_q[static_cast<std::size_t>(i)] = inverse_power(static_cast<double>(i), q);
        }
        const auto l = static_cast<std::size_t>(residues);
        sums_.assign(static_cast<std::size_t>(cutoff + 1) * l, 0.0);
        for (std::int64_t k = 2; k <= cutoff; ++k) {
            double* row = &sums_[static_cast<std::size_t>(k) * l];
            for (std::int64_t c = 0; c < residues; ++c) {
                const std::int64_t first = c == 0 ? residues : c;
                row[c] = strided_sum(inv_p.data(), inv_q.data(), k, first, residues);
            }
        }
    }

    std::int64_t residues() const { return residues_; }
    std::int64_t cutoff() const { return cutoff_; }

    ValueWithError evaluate(int r, const RootOfUnity& alpha, const RootOfUnity& beta) const {
        const MTIndex idx(p_, q_, r);
        if (residues_ % alpha.order() != 0) {
            throw std::invalid_argument("alpha order must divide the table's residue count");
        }
        std::vector<std::complex<double>> alpha_pow;
        for (std::int64_t c = 0; c < residues_; ++c) {
            alpha_pow.push_back(root_value(alpha.pow(c)));
        }
        std::vector<std::complex<double>> beta_pow;
        for (std::int64_t c = 0; c < beta.order(); ++c) {
            beta_pow.push_back(root_value(beta.pow(c)));
        }
        const auto l = static_cast<std::size_t>(residues_);
        ComplexCompensatedSum total;
        double magnitude = 0.0;
        for (std::int64_t k = 2; k <= cutoff_; ++k) {
            const double* row = &sums_[static_cast<std::size_t>(k) * l];
            ComplexCompensatedSum diagonal;
            double diag_abs = 0.0;
            for (std::size_t c = 0; c < l; ++c) {
                diagonal.add(alpha_pow[c] * row[c]);
                diag_abs += row[c];
            }
            const double w = inverse_power(static_cast<double>(k), r);
            total.add(beta_pow[static_cast<std::size_t>(k % beta.order())] * (w * diagonal.value()));
            magnitude += w * diag_abs;
        }
        const double rounding = (p_ + q_ + r + 16) * detail::eps * magnitude;
        return {total.value(), oracle_tail_bound(idx, cutoff_) + rounding};
    }

private:
    // Kahan sum of inv_p[k-n] inv_q[n] for n = first, first+step, ... < k, in four interleaved lanes.
    static double strided_sum(const double* inv_p, const double* inv_q, std::int64_t k, std::int64_t first,
                              std::int64_t step) {
        double s[4] = {0, 0, 0, 0};
        double c[4] = {0, 0, 0, 0};
        std::int64_t n = first;
        for (; n + 3 * step < k; n += 4 * step) {
            for (int lane = 0; lane < 4; ++lane) {
                const std::int64_t j = n + lane * step;
                const double y = inv_p[k - j] * inv_q[j] - c[lane];
                const double t = s[lane] + y;
                c[lane] = (t - s[lane]) - y;
                s[lane] = t;
            }
        }
        CompensatedSum tail;
        for (; n < k; n += step) {
            tail.add(inv_p[k - n] * inv_q[n]);
        }
        for (int lane = 0; lane < 4; ++lane) {
            tail.add(s[lane]);
            tail.add(-c[lane]);
        }
        return tail.value();
    }

    int p_;
    int q_;
    std::int64_t residues_;
    std::int64_t cutoff_;
    std::vector<double> sums_;
};

/// The defining double series summed directly over m+n <= cfg.oracle_cutoff.
/// Independent of the decomposition; used as ground truth.
inline ValueWithError eval_mt_direct(const MTIndex& idx, const RootOfUnity& alpha, const RootOfUnity& beta,
                                     const EvalConfig& cfg = {}) {
    cfg.validate();
    const DiagonalSums table(idx.p(), idx.q(), alpha.order(), cfg.oracle_cutoff);
    return table.evaluate(idx.r(), alpha, beta);
}

} // namespace tornheim

#endif // TORNHEIM_EVALUATOR_HPP
