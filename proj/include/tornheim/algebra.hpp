#ifndef TORNHEIM_ALGEBRA_HPP
#define TORNHEIM_ALGEBRA_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tornheim {

/// An Nth root of unity exp(2 pi i k / N), held exactly as a reduced fraction k/N.
///
/// The representation is canonical: 0 <= k < N and gcd(k, N) = 1, with the
/// identity stored as 0/1. Equal points on the unit circle therefore compare
/// equal member-wise.
class RootOfUnity {
public:
    constexpr RootOfUnity() = default;

    constexpr RootOfUnity(std::int64_t exponent, std::int64_t order) {
        if (order <= 0) {
            throw std::invalid_argument("root of unity order must be positive");
        }
        std::int64_t k = exponent % order;
        if (k < 0) {
            k += order;
        }
        const std::int64_t g = std::gcd(k, order);
        exponent_ = k / g;
        order_ = order / g;
    }

    static constexpr RootOfUnity one() { return {}; }
    static constexpr RootOfUnity minus_one() { return {1, 2}; }

    constexpr std::int64_t exponent() const { return exponent_; }
    constexpr std::int64_t order() const { return order_; }
    constexpr bool is_one() const { return order_ == 1; }

    /// True for 1 and -1, the colors expressible in bar notation.
    constexpr bool is_real() const { return order_ <= 2; }

    /// The power x^n, exact.
    constexpr RootOfUnity pow(std::int64_t n) const {
        const std::int64_t e = ((n % order_) + order_) % order_;
        return {(exponent_ * e) % order_, order_};
    }

    friend constexpr bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

    /// Total order on canonical forms (by order, then exponent); used for term keys.
    friend constexpr auto operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
        if (auto c = a.order_ <=> b.order_; c != 0) {
            return c;
        }
        return a.exponent_ <=> b.exponent_;
    }

private:
    std::int64_t exponent_ = 0;
    std::int64_t order_ = 1;
};

inline constexpr RootOfUnity root_mul(const RootOfUnity& a, const RootOfUnity& b) {
    const std::int64_t l = std::lcm(a.order(), b.order());
    return {a.exponent() * (l / a.order()) + b.exponent() * (l / b.order()), l};
}

inline constexpr RootOfUnity root_inv(const RootOfUnity& a) {
    return {a.order() - a.exponent(), a.order()};
}

/// exp(2 pi i k/N) in double precision.
///
/// Quarter turns are exact, and root_value(conj) is the exact conjugate of
/// root_value, so real colors never leak an imaginary rounding residue.
inline std::complex<double> root_value(const RootOfUnity& a) {
    const std::int64_t n = a.order();
    std::int64_t k = a.exponent();
    bool conjugate = false;
    if (2 * k > n) {
        k = n - k;
        conjugate = true;
    }
    std::complex<double> v;
    if (k == 0) {
        v = {1.0, 0.0};
    } else if (2 * k == n) {
        v = {-1.0, 0.0};
    } else if (4 * k == n) {
        v = {0.0, 1.0};
    } else {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        v = {std::cos(angle), std::sin(angle)};
    }
    return conjugate ? std::conj(v) : v;
}

/// Parses "k/N", or the shorthands "1" and "-1".
inline RootOfUnity parse_root(std::string_view text) {
    auto parse_int = [&](std::string_view part) -> std::int64_t {
        if (part.empty()) {
            throw std::invalid_argument("malformed root of unity '" + std::string(text) + "'");
        }
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(std::string(part), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed root of unity '" + std::string(text) + "'");
        }
        if (pos != part.size()) {
            throw std::invalid_argument("malformed root of unity '" + std::string(text) + "'");
        }
        return v;
    };
    if (text == "1") {
        return RootOfUnity::one();
    }
    if (text == "-1") {
        return RootOfUnity::minus_one();
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw std::invalid_argument("malformed root of unity '" + std::string(text) + "' (expected k/N)");
    }
    const std::int64_t k = parse_int(text.substr(0, slash));
    const std::int64_t n = parse_int(text.substr(slash + 1));
    if (n <= 0) {
        throw std::invalid_argument("root of unity '" + std::string(text) + "' needs N>0");
    }
    return {k, n};
}

/// Always "k/N"; the structured output format.
inline std::string root_fraction(const RootOfUnity& a) {
    return std::to_string(a.exponent()) + "/" + std::to_string(a.order());
}

/// Display form: "1" and "-1" for the real roots, "k/N" otherwise.
inline std::string to_string(const RootOfUnity& a) {
    if (a.is_one()) {
        return "1";
    }
    if (a == RootOfUnity::minus_one()) {
        return "-1";
    }
    return root_fraction(a);
}

inline std::ostream& operator<<(std::ostream& os, const RootOfUnity& a) { return os << to_string(a); }

/// Exponent triple (p, q, r) of a Tornheim double series
/// sum_{m,n>=1} alpha^n beta^(m+n) / (m^p n^q (m+n)^r).
class MTIndex {
public:
    MTIndex(int p, int q, int r) : p_(p), q_(q), r_(r) {
        if (const char* why = violated(p, q, r)) {
            throw std::invalid_argument(why);
        }
    }

    /// Name of the first violated convergence constraint, or nullptr.
    static constexpr const char* violated(int p, int q, int r) {
        if (p < 0) return "p>=0 required";
        if (q < 0) return "q>=0 required";
        if (r < 0) return "r>=0 required";
        if (p + q <= 0) return "p+q>0 required";
        if (p + r <= 1) return "p+r>1 required";
        if (q + r <= 1) return "q+r>1 required";
        if (p + q + r <= 2) return "p+q+r>2 required";
        return nullptr;
    }

    static constexpr bool valid(int p, int q, int r) { return violated(p, q, r) == nullptr; }

    int p() const { return p_; }
    int q() const { return q_; }
    int r() const { return r_; }
    int weight() const { return p_ + q_ + r_; }

    friend bool operator==(const MTIndex&, const MTIndex&) = default;

private:
    int p_;
    int q_;
    int r_;
};

inline std::string to_string(const MTIndex& idx) {
    return "(" + std::to_string(idx.p()) + "," + std::to_string(idx.q()) + "," + std::to_string(idx.r()) + ")";
}

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in exact arithmetic");
    }
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in exact arithmetic");
    }
    return out;
}

} // namespace detail

/// Binomial coefficient through the falling factorial n(n-1)...(n-k+1)/k!.
///
/// This makes binomial(-1, 0) = 1 and binomial(m, k) = 0 for 0 <= m < k,
/// which is exactly what the decomposition needs when p or q is zero.
/// For n = -1 and k > 0 the falling factorial gives (-1)^k.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (n < -1) {
        throw std::domain_error("binomial requires n >= -1");
    }
    if (k < 0) {
        throw std::domain_error("binomial requires k >= 0");
    }
    if (n >= 0 && k > n) {
        return 0;
    }
    if (n >= 0 && k > n - k) {
        k = n - k;
    }
    // c = C(n, i) stays integral at every step: C(n, i+1) = C(n, i) (n-i) / (i+1).
    std::int64_t c = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        const std::int64_t factor = n - i;
        const std::int64_t g = std::gcd(c, i + 1);
        c = detail::checked_mul(c / g, factor / ((i + 1) / g));
    }
    return c;
}

/// Exact rational with int64 parts; always reduced, denominator positive.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) {
        if (den == 0) {
            throw std::domain_error("zero denominator");
        }
        if (den < 0) {
            num = detail::checked_mul(num, -1);
            den = detail::checked_mul(den, -1);
        }
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const std::int64_t den = detail::checked_mul(a.den_ / g, b.den_);
        const std::int64_t num = detail::checked_add(detail::checked_mul(a.num_, b.den_ / g),
                                                     detail::checked_mul(b.num_, a.den_ / g));
        return {num, den};
    }
    friend Rational operator-(const Rational& a) { return {detail::checked_mul(a.num_, -1), a.den_}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const std::int64_t g1 = std::gcd(a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_, a.den_);
        return {detail::checked_mul(a.num_ / g1, b.num_ / g2), detail::checked_mul(a.den_ / g2, b.den_ / g1)};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) {
            throw std::domain_error("division by zero rational");
        }
        return a * Rational(b.den_, b.num_);
    }
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::string to_string(const Rational& x) {
    if (x.denominator() == 1) {
        return std::to_string(x.numerator());
    }
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

} // namespace tornheim

#endif // TORNHEIM_ALGEBRA_HPP
