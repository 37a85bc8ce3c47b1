#ifndef TORNHEIM_FIXTURES_HPP
#define TORNHEIM_FIXTURES_HPP

// Symbolic fixture checks. Deliberately free of any numerics: the expected
// expansions are compared term by term against the decomposer.
//
// File format, one fixture per line, '#' starts a comment:
//
//   R(2,3,2) = z(-5,-2) + 3*z(-6,-1) + z(4,-3) + 2*z(5,-2) + 3*z(6,-1)
//
// R is alpha = -1, beta = 1; S is alpha = 1, beta = -1. A negative entry in
// z(s,t) marks a barred (alternating) slot.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "decomposer.hpp"
#include "report.hpp"

namespace tornheim {

enum class Series { R, S };

struct Fixture {
    std::string label;
    Series series;
    MTIndex index;
    std::vector<EulerTerm> expected;
};

namespace detail {

class Cursor {
public:
    Cursor(std::string_view text, std::string context) : text_(text), context_(std::move(context)) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }
    std::int64_t integer() {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            ++pos_;
        }
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == digits) {
            pos_ = start;
            fail("expected an integer");
        }
        try {
            return std::stoll(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer out of range");
        }
    }
    /// Raw token up to (not including) any of the stop characters.
    std::string token(std::string_view stops) {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected a token");
        }
        return std::string(text_.substr(start, pos_ - start));
    }
    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_ + 1, what); }
    [[noreturn]] void fail_at(std::size_t column, const std::string& what) const {
        throw std::invalid_argument(context_ + "column " + std::to_string(column) + ": " + what);
    }

private:
    std::string_view text_;
    std::string context_;
    std::size_t pos_ = 0;
};

inline std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

} // namespace detail

/// Parses one fixture line (without comment).
inline Fixture parse_fixture(std::string_view text, const std::string& context = {}) {
    detail::Cursor cur(text, context);
    Series series = Series::R;
    if (cur.accept('R')) {
        series = Series::R;
    } else if (cur.accept('S')) {
        series = Series::S;
    } else {
        cur.fail("expected R( or S(");
    }
    cur.expect('(');
    const auto p = static_cast<int>(cur.integer());
    cur.expect(',');
    const auto q = static_cast<int>(cur.integer());
    cur.expect(',');
    const auto r = static_cast<int>(cur.integer());
    cur.expect(')');
    if (const char* why = MTIndex::violated(p, q, r)) {
        cur.fail(why);
    }
    const MTIndex index(p, q, r);
    cur.expect('=');

    std::vector<EulerTerm> expected;
    do {
        std::int64_t coeff = 1;
        if (!cur.peek('z')) {
            coeff = cur.integer();
            cur.expect('*');
        }
        if (!cur.accept('z')) {
            cur.fail("expected z(s,t)");
        }
        cur.expect('(');
        const auto s = cur.integer();
        cur.expect(',');
        const auto t = cur.integer();
        cur.expect(')');
        if (coeff < 1) {
            cur.fail("coefficients must be positive");
        }
        const int sa = static_cast<int>(s < 0 ? -s : s);
        const int ta = static_cast<int>(t < 0 ? -t : t);
        if (sa < 2 || ta < 1) {
            cur.fail("z(s,t) needs |s|>=2 and |t|>=1");
        }
        if (sa + ta != index.weight()) {
            cur.fail("term weight differs from p+q+r");
        }
        expected.push_back({coeff, sa, ta, s < 0, t < 0});
    } while (cur.accept('+'));
    if (!cur.at_end()) {
        cur.fail("unexpected trailing text");
    }
    const char name = series == Series::R ? 'R' : 'S';
    std::string label = std::string(1, name) + to_string(index);
    return {std::move(label), series, index, std::move(expected)};
}

inline std::vector<Fixture> parse_fixtures(std::istream& in, const std::string& source = "fixtures") {
    std::vector<Fixture> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = detail::strip_comment(line);
        if (body.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(parse_fixture(body, source + ":" + std::to_string(number) + ": "));
    }
    return out;
}

inline std::vector<Fixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open fixture file " + path);
    }
    return parse_fixtures(in, path);
}

namespace detail {

/// "missing 3*z(-6,-1); unexpected 2*z(-6,-1)"; empty when the multisets agree.
inline std::string multiset_diff(const std::vector<EulerTerm>& expected, const std::vector<EulerTerm>& actual) {
    auto key = [](const EulerTerm& e) { return EulerTerm{1, e.s, e.t, e.s_bar, e.t_bar}; };
    std::map<EulerTerm, std::int64_t> balance;
    for (const auto& e : expected) {
        balance[key(e)] += e.coeff;
    }
    for (const auto& a : actual) {
        balance[key(a)] -= a.coeff;
    }
    std::string missing;
    std::string extra;
    for (const auto& [k, c] : balance) {
        if (c > 0) {
            missing += (missing.empty() ? "" : ", ") + to_string(EulerTerm{c, k.s, k.t, k.s_bar, k.t_bar});
        } else if (c < 0) {
            extra += (extra.empty() ? "" : ", ") + to_string(EulerTerm{-c, k.s, k.t, k.s_bar, k.t_bar});
        }
    }
    std::string out;
    if (!missing.empty()) {
        out += "missing " + missing;
    }
    if (!extra.empty()) {
        out += (out.empty() ? "" : "; ") + std::string("unexpected ") + extra;
    }
    return out;
}

} // namespace detail

/// Exact term-multiset comparison of each fixture against the decomposer.
inline std::vector<Report> verify_fixtures(const std::vector<Fixture>& fixtures) {
    std::vector<Report> reports;
    for (const auto& f : fixtures) {
        Stopwatch clock;
        const int p = f.index.p();
        const int q = f.index.q();
        const int r = f.index.r();
        const auto actual = f.series == Series::R ? r_decomposition(p, q, r) : s_decomposition(p, q, r);
        Report rep;
        rep.label = f.label;
        rep.lhs = to_string(f.expected);
        rep.rhs = to_string(actual);
        rep.passed = same_multiset(f.expected, actual);
        if (!rep.passed) {
            rep.detail = detail::multiset_diff(f.expected, actual);
            if (rep.detail.empty()) {
                rep.detail = "terms are not merged the same way";
            }
        }
        rep.ms = clock.elapsed_ms();
        reports.push_back(std::move(rep));
    }
    return reports;
}

} // namespace tornheim

#endif // TORNHEIM_FIXTURES_HPP
