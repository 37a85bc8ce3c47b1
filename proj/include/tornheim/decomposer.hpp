#ifndef TORNHEIM_DECOMPOSER_HPP
#define TORNHEIM_DECOMPOSER_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace tornheim {

/// One summand of 1/(x^p y^q) = sum coeff / (x^x_exp y^y_exp (x+y)^sum_exp).
/// Exactly one of x_exp, y_exp is nonzero.
struct PartialFractionTerm {
    std::int64_t coeff;
    int x_exp;
    int y_exp;
    int sum_exp;

    friend bool operator==(const PartialFractionTerm&, const PartialFractionTerm&) = default;
};

/// Splits 1/(x^p y^q) into p+q terms, each a pure power of x or of y
/// times a power of (x+y). Valid for p, q >= 1 and x+y != 0.
inline std::vector<PartialFractionTerm> partial_fraction(int p, int q) {
    if (p < 1 || q < 1) {
        throw std::invalid_argument("partial_fraction requires p>=1 and q>=1");
    }
    std::vector<PartialFractionTerm> out;
    out.reserve(static_cast<std::size_t>(p + q));
    for (int a = 0; a < p; ++a) {
        out.push_back({binomial(q + a - 1, a), p - a, 0, q + a});
    }
    for (int b = 0; b < q; ++b) {
        out.push_back({binomial(p + b - 1, b), 0, q - b, p + b});
    }
    return out;
}

/// coeff * Li_{s,t}(x, y), where
///
///     Li_{s,t}(x, y) = sum_{m > n >= 1} x^m y^n / (m^s n^t).
///
/// Note the convention: the first subscript and the first argument belong to
/// the OUTER (larger) summation variable m. Some multiple zeta literature
/// orders these the other way round.
struct LiTerm {
    std::int64_t coeff;
    int s;
    int t;
    RootOfUnity x;
    RootOfUnity y;

    bool same_key(const LiTerm& o) const { return s == o.s && t == o.t && x == o.x && y == o.y; }
    friend bool operator==(const LiTerm&, const LiTerm&) = default;
};

struct Decomposition {
    MTIndex index;
    RootOfUnity alpha;
    RootOfUnity beta;
    std::vector<LiTerm> terms;
};

namespace detail {

inline void merge_term(std::vector<LiTerm>& terms, const LiTerm& term) {
    if (term.coeff == 0) {
        return;
    }
    for (auto& existing : terms) {
        if (existing.same_key(term)) {
            existing.coeff = checked_add(existing.coeff, term.coeff);
            return;
        }
    }
    terms.push_back(term);
}

} // namespace detail

/// Rewrites zeta_MT(p,q,r; alpha, beta) as an integer combination of double
/// polylogarithms at roots of unity:
///
///     sum_{a<p} C(q+a-1, a) Li_{r+q+a, p-a}(alpha beta, 1/alpha)
///   + sum_{b<q} C(p+b-1, b) Li_{r+p+b, q-b}(beta, alpha).
///
/// p = 0 or q = 0 runs through the same loops; the falling-factorial binomial
/// leaves exactly one surviving term. Identical terms are merged, keeping the
/// position of the first occurrence.
inline Decomposition decompose(const MTIndex& idx, const RootOfUnity& alpha, const RootOfUnity& beta) {
    const int p = idx.p();
    const int q = idx.q();
    const int r = idx.r();
    Decomposition d{idx, alpha, beta, {}};

    const RootOfUnity first_outer = root_mul(alpha, beta);
    const RootOfUnity first_inner = root_inv(alpha);
    for (int a = 0; a < p; ++a) {
        detail::merge_term(d.terms, {binomial(q + a - 1, a), r + q + a, p - a, first_outer, first_inner});
    }
    for (int b = 0; b < q; ++b) {
        detail::merge_term(d.terms, {binomial(p + b - 1, b), r + p + b, q - b, beta, alpha});
    }

    for (const auto& term : d.terms) {
        if (term.s < 2 || term.t < 1 || term.s + term.t != idx.weight() || term.coeff < 1) {
            throw std::logic_error("decompose produced an invalid term for " + to_string(idx));
        }
    }
    return d;
}

/// Level-2 symbol zeta(s or s-bar, t or t-bar); a bar marks a (-1)^m or (-1)^n sign.
struct EulerTerm {
    std::int64_t coeff;
    int s;
    int t;
    bool s_bar;
    bool t_bar;

    friend bool operator==(const EulerTerm&, const EulerTerm&) = default;
    friend auto operator<=>(const EulerTerm&, const EulerTerm&) = default;
};

inline EulerTerm to_euler_term(const LiTerm& term) {
    if (!term.x.is_real() || !term.y.is_real()) {
        throw std::invalid_argument("bar notation needs arguments in {1,-1}; got Li[" + std::to_string(term.s) + "," +
                                    std::to_string(term.t) + "](" + to_string(term.x) + "," + to_string(term.y) + ")");
    }
    return {term.coeff, term.s, term.t, !term.x.is_one(), !term.y.is_one()};
}

inline std::vector<EulerTerm> to_level2(const Decomposition& d) {
    std::vector<EulerTerm> out;
    out.reserve(d.terms.size());
    for (const auto& term : d.terms) {
        out.push_back(to_euler_term(term));
    }
    return out;
}

/// R(p,q,r) = sum (-1)^n / (m^p n^q (m+n)^r), i.e. alpha = -1, beta = 1.
inline std::vector<EulerTerm> r_decomposition(int p, int q, int r) {
    return to_level2(decompose(MTIndex(p, q, r), RootOfUnity::minus_one(), RootOfUnity::one()));
}

/// S(p,q,r) = sum (-1)^(m+n) / (m^p n^q (m+n)^r), i.e. alpha = 1, beta = -1.
inline std::vector<EulerTerm> s_decomposition(int p, int q, int r) {
    return to_level2(decompose(MTIndex(p, q, r), RootOfUnity::one(), RootOfUnity::minus_one()));
}

inline bool same_multiset(std::vector<EulerTerm> a, std::vector<EulerTerm> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Text forms ---------------------------------------------------------------

namespace detail {

inline std::string coeff_prefix(std::int64_t c) { return c == 1 ? std::string() : std::to_string(c) + "*"; }

template <class Range, class Fn>
std::string join_terms(const Range& terms, Fn&& render) {
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& term : terms) {
        if (!out.empty()) {
            out += " + ";
        }
        out += render(term);
    }
    return out;
}

inline std::string overline(int v) {
    std::string out;
    for (char c : std::to_string(v)) {
        out += c;
        out += "\u0305";
    }
    return out;
}

} // namespace detail

/// "3*Li[6,1](-1,-1)"
inline std::string to_string(const LiTerm& term) {
    return detail::coeff_prefix(term.coeff) + "Li[" + std::to_string(term.s) + "," + std::to_string(term.t) + "](" +
           to_string(term.x) + "," + to_string(term.y) + ")";
}

/// "Li[4,1](-1,-1) + Li[4,1](1,-1)"
inline std::string to_string(const Decomposition& d) {
    return detail::join_terms(d.terms, [](const LiTerm& t) { return to_string(t); });
}

/// "2*z(-5,2)": a negative entry marks a barred slot.
inline std::string to_string(const EulerTerm& term) {
    return detail::coeff_prefix(term.coeff) + "z(" + std::to_string(term.s_bar ? -term.s : term.s) + "," +
           std::to_string(term.t_bar ? -term.t : term.t) + ")";
}

inline std::string to_string(const std::vector<EulerTerm>& terms) {
    return detail::join_terms(terms, [](const EulerTerm& t) { return to_string(t); });
}

/// UTF-8 rendering with combining overlines, e.g. "2ζ(5̄,2)".
inline std::string to_pretty_string(const std::vector<EulerTerm>& terms) {
    return detail::join_terms(terms, [](const EulerTerm& t) {
        const std::string c = t.coeff == 1 ? std::string() : std::to_string(t.coeff);
        const std::string s = t.s_bar ? detail::overline(t.s) : std::to_string(t.s);
        const std::string u = t.t_bar ? detail::overline(t.t) : std::to_string(t.t);
        return c + "ζ(" + s + "," + u + ")";
    });
}

} // namespace tornheim

#endif // TORNHEIM_DECOMPOSER_HPP
