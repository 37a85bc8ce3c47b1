#ifndef TORNHEIM_SUMMATION_HPP
#define TORNHEIM_SUMMATION_HPP

#include <cmath>
#include <complex>

namespace tornheim {

/// Neumaier (improved Kahan) compensated accumulator.
///
/// Also tracks the sum of magnitudes, which callers use to bound the
/// rounding error of the whole reduction.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
        magnitude_ += std::abs(x);
    }

    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + carry_; }
    double magnitude() const { return magnitude_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
    double magnitude_ = 0.0;
};

/// Componentwise compensated sum of complex terms.
class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }

    ComplexCompensatedSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }

    std::complex<double> value() const { return {re_.value(), im_.value()}; }

    /// Sum of |Re| + |Im| over all added terms; an upper bound for the sum of moduli times sqrt(2).
    double magnitude() const { return re_.magnitude() + im_.magnitude(); }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// x^-s for integer s >= 0 by repeated multiplication (relative error <= s ulp).
inline double inverse_power(double x, int s) {
    double p = 1.0;
    double base = x;
    unsigned e = static_cast<unsigned>(s);
    while (e != 0) {
        if (e & 1U) {
            p *= base;
        }
        base *= base;
        e >>= 1U;
    }
    return 1.0 / p;
}

} // namespace tornheim

#endif // TORNHEIM_SUMMATION_HPP
