#ifndef TORNHEIM_REPORT_HPP
#define TORNHEIM_REPORT_HPP

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

namespace tornheim {

/// Outcome of one verification case. Both sides are always carried as text
/// so a failure can be audited without rerunning.
struct Report {
    std::string label;
    bool passed = false;
    std::string lhs;
    std::string rhs;
    double absdiff = 0.0;
    double bound = 0.0;
    double ms = 0.0;
    std::string detail;
    std::vector<Report> checks;
};

inline std::string format_number(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string format_value(std::complex<double> z, int digits = 12) {
    if (z.imag() == 0.0) {
        return format_number(z.real(), digits);
    }
    return format_number(z.real(), digits) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag()), digits) +
           "i";
}

inline std::size_t count_failures(const std::vector<Report>& reports) {
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [](const Report& r) { return !r.passed; }));
}

/// Wall-clock stopwatch in milliseconds.
class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// One line per report: status, label, both sides, gap and bound.
inline std::string format_table(const std::vector<Report>& reports) {
    std::string out;
    char buf[128];
    for (const auto& r : reports) {
        out += r.passed ? "PASS  " : "FAIL  ";
        out += r.label;
        out += "\n      lhs: " + r.lhs + "\n      rhs: " + r.rhs;
        if (r.absdiff != 0.0 || r.bound != 0.0) {
            std::snprintf(buf, sizeof buf, "\n      |diff| = %.3e  bound = %.3e", r.absdiff, r.bound);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "  (%.1f ms)", r.ms);
        out += buf;
        if (!r.detail.empty()) {
            out += "\n      " + r.detail;
        }
        out += "\n";
        for (const auto& c : r.checks) {
            out += std::string("      ") + (c.passed ? "ok   " : "FAIL ") + c.label + ": " + c.lhs + " vs " + c.rhs;
            if (!c.detail.empty()) {
                out += " (" + c.detail + ")";
            }
            out += "\n";
        }
    }
    return out;
}

} // namespace tornheim

#endif // TORNHEIM_REPORT_HPP
