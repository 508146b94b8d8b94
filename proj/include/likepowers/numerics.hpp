#ifndef LIKEPOWERS_NUMERICS_HPP
#define LIKEPOWERS_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <ios>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <likepowers/errors.hpp>

namespace likepowers
{

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Variable-precision binary float. Values created inside a ScopedPrecision
// get that precision.
using HpReal = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Sets the default HpReal precision for the lifetime of the guard.
class ScopedPrecision
{
public:
    explicit ScopedPrecision(unsigned bits) : saved_(HpReal::default_precision())
    {
        HpReal::default_precision(bits_to_digits10(bits));
    }
    ~ScopedPrecision() { HpReal::default_precision(saved_); }

    ScopedPrecision(const ScopedPrecision &) = delete;
    ScopedPrecision &operator=(const ScopedPrecision &) = delete;

private:
    unsigned saved_;
};

// Mantissa bits a freshly constructed Real carries right now.
template <typename Real>
unsigned working_bits()
{
    if constexpr (std::is_floating_point_v<Real>) {
        return static_cast<unsigned>(std::numeric_limits<Real>::digits);
    } else {
        Real probe(0);
        return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
    }
}

inline unsigned precision_bits(const HpReal &x)
{
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

// Correctly rounded at the current default precision.
inline HpReal to_hp(const BigInt &v)
{
    HpReal out;
    mpfr_set_z(out.backend().data(), v.backend().data(), MPFR_RNDN);
    return out;
}

inline HpReal to_hp(const Rational &q)
{
    HpReal out;
    mpfr_set_q(out.backend().data(), q.backend().data(), MPFR_RNDN);
    return out;
}

// Product of a range of integers by pairwise splitting, so the large
// multiplications are balanced.
template <typename It, typename Fn>
BigInt product_tree(It first, It last, const Fn &value)
{
    const auto n = last - first;
    if (n == 0) {
        return BigInt(1);
    }
    if (n <= 16) {
        BigInt acc(1);
        for (; first != last; ++first) {
            acc *= value(*first);
        }
        return acc;
    }
    const It mid = first + n / 2;
    return product_tree(first, mid, value) * product_tree(mid, last, value);
}

// Exact binary value of a finite double as a rational.
inline Rational to_rational(double x)
{
    if (!std::isfinite(x)) {
        throw domain_error("non-finite value has no rational form");
    }
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    // 53 mantissa bits fit exactly in int64.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r{BigInt(scaled)};
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

template <typename Real>
std::string to_decimal(const Real &x, int digits = 0)
{
    if constexpr (std::is_floating_point_v<Real>) {
        return HpReal(x).str(digits > 0 ? digits : 17, std::ios_base::scientific);
    } else {
        const int d = digits > 0 ? digits : static_cast<int>(bits_to_digits10(precision_bits(x)));
        return x.str(d, std::ios_base::scientific);
    }
}

inline std::string to_decimal(const BigInt &x)
{
    return x.str();
}

// Expressions accepted by hp_eval.
struct PowerExpr {
    Rational base;
    Rational exponent;
};
struct LnExpr {
    Rational argument;
};
struct ProductExpr {
    std::vector<Rational> factors;
};
using HpExpr = std::variant<PowerExpr, LnExpr, ProductExpr>;

// Evaluates with 32 guard bits and rounds once to the requested precision, so
// the result is within one ulp (two in the worst double-rounding case).
inline HpReal hp_eval(const HpExpr &expr, unsigned bits)
{
    if (bits < 2) {
        throw domain_error("hp_eval needs at least 2 bits of precision");
    }
    HpReal wide;
    {
        ScopedPrecision guard(bits + 32);
        wide = std::visit(
            [](const auto &e) -> HpReal {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, PowerExpr>) {
                    if (e.base < 0 || (e.base == 0 && e.exponent <= 0)) {
                        throw domain_error("power needs a positive base");
                    }
                    if (e.base == 0) {
                        return HpReal(0);
                    }
                    if (boost::multiprecision::denominator(e.exponent) == 1) {
                        // Integral exponents stay exact until the final division.
                        const auto p = boost::multiprecision::numerator(e.exponent);
                        if (abs(p) <= 4096) {
                            const long k = p.template convert_to<long>();
                            const BigInt num = boost::multiprecision::pow(
                                boost::multiprecision::numerator(e.base), static_cast<unsigned>(k < 0 ? -k : k));
                            const BigInt den = boost::multiprecision::pow(
                                boost::multiprecision::denominator(e.base), static_cast<unsigned>(k < 0 ? -k : k));
                            return k < 0 ? to_hp(den) / to_hp(num) : to_hp(num) / to_hp(den);
                        }
                    }
                    return boost::multiprecision::pow(to_hp(e.base), to_hp(e.exponent));
                } else if constexpr (std::is_same_v<E, LnExpr>) {
                    if (e.argument <= 0) {
                        throw domain_error("ln needs a positive argument");
                    }
                    return boost::multiprecision::log(to_hp(e.argument));
                } else {
                    Rational prod(1);
                    for (const auto &f : e.factors) {
                        prod *= f;
                    }
                    return to_hp(prod);
                }
            },
            expr);
    }
    ScopedPrecision guard(bits);
    HpReal out(0);
    mpfr_set_prec(out.backend().data(), bits);
    mpfr_set(out.backend().data(), wide.backend().data(), MPFR_RNDN);
    return out;
}

// Distance of one unit in the last place of x at its own precision.
inline HpReal ulp(const HpReal &x)
{
    const unsigned bits = precision_bits(x);
    HpReal one(1);
    if (x == 0) {
        return boost::multiprecision::ldexp(one, -static_cast<int>(bits));
    }
    const long e = mpfr_get_exp(x.backend().data());
    return boost::multiprecision::ldexp(one, static_cast<int>(e - static_cast<long>(bits)));
}

} // namespace likepowers

#endif
