#ifndef LIKEPOWERS_EXACTPOLY_HPP
#define LIKEPOWERS_EXACTPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <likepowers/errors.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/pseq.hpp>

namespace likepowers
{

// Bounds on exact expansions. Work is roughly len(P_n) * (s + 1) bignum
// multiply-adds.
struct ExpansionLimits {
    std::size_t max_exponent = 256;
    std::size_t max_work = std::size_t{1} << 30;
    std::size_t max_n = default_max_pseq_index;
};

// Dense integer polynomial, coeffs[j] multiplies x^j. Trailing zeros are
// trimmed so the zero polynomial has no coefficients.
class IntPolynomial
{
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    const std::vector<BigInt> &coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const
    {
        if (coeffs_.empty()) {
            return std::nullopt;
        }
        return coeffs_.size() - 1;
    }
    BigInt coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : BigInt(0); }

    // Horner evaluation, exact.
    Rational evaluate(const Rational &x) const
    {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + Rational(*it);
        }
        return acc;
    }

    IntPolynomial derivative() const
    {
        std::vector<BigInt> d;
        for (std::size_t j = 1; j < coeffs_.size(); ++j) {
            d.push_back(coeffs_[j] * j);
        }
        return IntPolynomial(std::move(d));
    }

    IntPolynomial scaled(const BigInt &k) const
    {
        std::vector<BigInt> c = coeffs_;
        for (auto &v : c) {
            v *= k;
        }
        return IntPolynomial(std::move(c));
    }

    friend bool operator==(const IntPolynomial &, const IntPolynomial &) = default;

    std::string to_string() const
    {
        if (coeffs_.empty()) {
            return "0";
        }
        std::string out;
        for (std::size_t j = coeffs_.size(); j-- > 0;) {
            if (coeffs_[j] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += coeffs_[j] < 0 ? " - " : " + ";
            } else if (coeffs_[j] < 0) {
                out += "-";
            }
            const BigInt mag = abs(coeffs_[j]);
            if (mag != 1 || j == 0) {
                out += mag.str();
            }
            if (j >= 1) {
                out += "x";
            }
            if (j >= 2) {
                out += "^" + std::to_string(j);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<BigInt> coeffs_;
};

// Row s of Pascal's triangle.
inline std::vector<BigInt> binomial_row(std::size_t s)
{
    std::vector<BigInt> row{BigInt(1)};
    for (std::size_t r = 1; r <= s; ++r) {
        std::vector<BigInt> next(r + 1);
        next[0] = 1;
        next[r] = 1;
        for (std::size_t j = 1; j < r; ++j) {
            next[j] = row[j - 1] + row[j];
        }
        row = std::move(next);
    }
    return row;
}

namespace detail
{

inline void check_work(std::size_t length, std::size_t s, const ExpansionLimits &limits)
{
    if (s > limits.max_exponent) {
        throw resource_error("exponent " + std::to_string(s) + " exceeds the configured maximum "
                             + std::to_string(limits.max_exponent));
    }
    if (length * (s + 1) > limits.max_work) {
        throw resource_error("expansion of length " + std::to_string(length) + " to exponent "
                             + std::to_string(s) + " exceeds the work bound");
    }
}

} // namespace detail

// moments[t] = sum_i a_i i^t for t = 0..t_max, with 0^0 = 1.
inline std::vector<BigInt> signed_moments(std::span<const Trit> a, std::size_t t_max)
{
    std::vector<BigInt> m(t_max + 1);
    BigInt pw;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        pw = 1;
        for (std::size_t t = 0; t <= t_max; ++t) {
            if (a[i] > 0) {
                m[t] += pw;
            } else {
                m[t] -= pw;
            }
            pw *= i;
        }
    }
    return m;
}

// F(x) = sum_i a_i (i + x)^s from precomputed moments: the x^j coefficient is
// C(s, j) * moments[s - j].
inline IntPolynomial f_polynomial_from_moments(std::span<const BigInt> moments, std::size_t s)
{
    if (moments.size() <= s) {
        throw domain_error("not enough moments for exponent " + std::to_string(s));
    }
    const std::vector<BigInt> binom = binomial_row(s);
    std::vector<BigInt> c(s + 1);
    for (std::size_t j = 0; j <= s; ++j) {
        c[j] = binom[j] * moments[s - j];
    }
    return IntPolynomial(std::move(c));
}

inline IntPolynomial f_polynomial(const PSequence &p, std::size_t s, const ExpansionLimits &limits = {})
{
    detail::check_work(p.size(), s, limits);
    const auto m = signed_moments(p.entries, s);
    return f_polynomial_from_moments(m, s);
}

inline IntPolynomial f_polynomial(std::size_t n, std::size_t s, const ExpansionLimits &limits = {})
{
    detail::check_pseq_index(n, limits.max_n);
    detail::check_work(pseq_length(n), s, limits);
    return f_polynomial(p_sequence(n, limits.max_n), s, limits);
}

// sum_i a_i (p i + l)^s, exact. 0^0 = 1.
inline BigInt power_sum(std::span<const Trit> a, std::size_t s, std::int64_t p, std::int64_t l)
{
    if (p == 0) {
        throw domain_error("power_sum needs a nonzero stride p");
    }
    BigInt total;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        const BigInt base = BigInt(p) * i + l;
        const BigInt term = boost::multiprecision::pow(base, static_cast<unsigned>(s));
        if (a[i] > 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

struct VanishingRow {
    std::size_t s = 0;
    bool zero = false;
};

// Identically-zero check of F_{n,s} for s = 0..n-1.
struct VanishingReport {
    std::size_t n = 0;
    std::vector<VanishingRow> rows;
    bool passed = false;
};

struct DegreeRow {
    std::size_t s = 0;
    std::optional<std::size_t> degree;
    std::size_t expected = 0;
    bool ok = false;
};

// Degree law deg F_{n,s} = s - n for s >= n, the constant F_{n,n}, and the
// sign of sum_i a_i i^n against (-1)^n.
struct DegreeReport {
    std::size_t n = 0;
    std::vector<DegreeRow> rows;
    BigInt leading_constant;  // F_{n,n}
    BigInt top_moment;        // sum_i a_i i^n
    int expected_sign = 0;
    bool constant_ok = false;
    bool sign_ok = false;
    bool passed = false;
};

// Reports for several n, mergeable across workers.
struct VerificationSummary {
    std::vector<VanishingReport> vanishing;
    std::vector<DegreeReport> degree;

    bool passed() const
    {
        for (const auto &r : vanishing) {
            if (!r.passed) {
                return false;
            }
        }
        for (const auto &r : degree) {
            if (!r.passed) {
                return false;
            }
        }
        return true;
    }

    void merge(VerificationSummary other)
    {
        for (auto &r : other.vanishing) {
            vanishing.push_back(std::move(r));
        }
        for (auto &r : other.degree) {
            degree.push_back(std::move(r));
        }
    }
};

inline VanishingReport verify_vanishing(std::size_t n, const ExpansionLimits &limits = {})
{
    detail::check_pseq_index(n, limits.max_n);
    detail::check_work(pseq_length(n), n, limits);
    const PSequence p = p_sequence(n, limits.max_n);
    const auto m = signed_moments(p.entries, n - 1);
    VanishingReport report{n, {}, true};
    for (std::size_t s = 0; s < n; ++s) {
        const bool zero = f_polynomial_from_moments(m, s).is_zero();
        report.rows.push_back({s, zero});
        report.passed = report.passed && zero;
    }
    return report;
}

inline DegreeReport verify_degree(std::size_t n, std::size_t s_max, const ExpansionLimits &limits = {})
{
    detail::check_pseq_index(n, limits.max_n);
    if (s_max < n) {
        throw domain_error("verify_degree needs s_max >= n");
    }
    detail::check_work(pseq_length(n), s_max, limits);
    const PSequence p = p_sequence(n, limits.max_n);
    const auto m = signed_moments(p.entries, s_max);

    DegreeReport report;
    report.n = n;
    bool rows_ok = true;
    for (std::size_t s = n; s <= s_max; ++s) {
        const IntPolynomial f = f_polynomial_from_moments(m, s);
        DegreeRow row{s, f.degree(), s - n, false};
        row.ok = row.degree.has_value() && *row.degree == row.expected;
        rows_ok = rows_ok && row.ok;
        report.rows.push_back(row);
    }
    const IntPolynomial fnn = f_polynomial_from_moments(m, n);
    report.constant_ok = fnn.degree() == std::optional<std::size_t>(0);
    report.leading_constant = fnn.coeff(0);
    // For s = n >= 1 the i = 0 term is 0^n = 0, so the i >= 1 and i >= 0 forms agree.
    report.top_moment = m[n];
    report.expected_sign = (n % 2 == 0) ? 1 : -1;
    const int sign = report.top_moment > 0 ? 1 : (report.top_moment < 0 ? -1 : 0);
    report.sign_ok = sign == report.expected_sign;
    report.passed = rows_ok && report.constant_ok && report.sign_ok;
    return report;
}

} // namespace likepowers

#endif
