#ifndef LIKEPOWERS_SEQUENCE_HPP
#define LIKEPOWERS_SEQUENCE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <likepowers/errors.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/primes.hpp>
#include <likepowers/pseq.hpp>

namespace likepowers
{

struct SequenceSpec;

// E(n) = 1/(n+1), n >= 0.
struct Harmonic {
};
// E(n) = ln(1 + 1/(2n)), n >= 1.
struct LnBlock {
};
// E(n) = sum_i a_i (n - i)^delta over P_m, m = ceil(delta), n > k.
// Positive only beyond an empirically located threshold.
struct PowerDelta {
    double delta = 0.5;
};
// E(n) = -ln(1 - 1/p_n), n >= 1 (p_1 = 2).
struct TotientLog {
};
// E(n) = p_{n+1}^delta - p_n^delta, n >= 1.
struct PrimePower {
    double delta = 0.5;
};
// E(n) = r + base(n).
struct ShiftedConstant {
    double r = 0;
    std::shared_ptr<const SequenceSpec> base;
};

struct SequenceSpec {
    std::variant<Harmonic, LnBlock, PowerDelta, TotientLog, PrimePower, ShiftedConstant> kind;
};

inline SequenceSpec shifted(double r, SequenceSpec base)
{
    return {ShiftedConstant{r, std::make_shared<const SequenceSpec>(std::move(base))}};
}

namespace detail
{

inline bool is_integral(double x)
{
    return std::floor(x) == x;
}

inline std::size_t power_delta_order(double delta)
{
    if (!(delta > 0) || is_integral(delta) || !std::isfinite(delta)) {
        throw domain_error("PowerDelta needs a positive non-integer delta");
    }
    return static_cast<std::size_t>(std::ceil(delta));
}

} // namespace detail

inline std::uint64_t first_index(const SequenceSpec &spec)
{
    return std::visit(
        [](const auto &s) -> std::uint64_t {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Harmonic>) {
                return 0;
            } else if constexpr (std::is_same_v<S, PowerDelta>) {
                return pseq_length(detail::power_delta_order(s.delta));  // k + 1
            } else if constexpr (std::is_same_v<S, ShiftedConstant>) {
                return first_index(*s.base);
            } else {
                return 1;
            }
        },
        spec.kind);
}

inline std::string label(const SequenceSpec &spec)
{
    return std::visit(
        [](const auto &s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Harmonic>) {
                return "harmonic";
            } else if constexpr (std::is_same_v<S, LnBlock>) {
                return "ln-block";
            } else if constexpr (std::is_same_v<S, PowerDelta>) {
                return "power-delta:" + HpReal(s.delta).str();
            } else if constexpr (std::is_same_v<S, TotientLog>) {
                return "totient-log";
            } else if constexpr (std::is_same_v<S, PrimePower>) {
                return "prime-power:" + HpReal(s.delta).str();
            } else {
                return "shifted:" + HpReal(s.r).str() + "+" + label(*s.base);
            }
        },
        spec.kind);
}

// Evaluates one spec repeatedly; holds the P_m entries for PowerDelta.
template <typename Real>
class SequenceEvaluator
{
public:
    explicit SequenceEvaluator(SequenceSpec spec) : spec_(std::move(spec))
    {
        if (const auto *pd = std::get_if<PowerDelta>(&spec_.kind)) {
            const std::size_t m = detail::power_delta_order(pd->delta);
            const PSequence p = p_sequence(m);
            signs_ = p.entries;
        }
        if (const auto *sc = std::get_if<ShiftedConstant>(&spec_.kind)) {
            if (!sc->base) {
                throw domain_error("shifted sequence has no base");
            }
            base_ = std::make_shared<SequenceEvaluator>(*sc->base);
        }
        if (const auto *pp = std::get_if<PrimePower>(&spec_.kind)) {
            if (!(pp->delta > 0)) {
                throw domain_error("PrimePower needs delta > 0");
            }
        }
        first_ = first_index(spec_);
    }

    const SequenceSpec &spec() const { return spec_; }
    std::uint64_t first() const { return first_; }

    // Index from which the values are known to be non-increasing, if any.
    // PowerDelta is only ultimately monotone and PrimePower follows the prime
    // gaps, so neither claims it.
    std::optional<std::uint64_t> monotone_from() const
    {
        return std::visit(
            [&](const auto &s) -> std::optional<std::uint64_t> {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, PowerDelta> || std::is_same_v<S, PrimePower>) {
                    return std::nullopt;
                } else if constexpr (std::is_same_v<S, ShiftedConstant>) {
                    return base_->monotone_from();
                } else {
                    return first_;
                }
            },
            spec_.kind);
    }

    Real operator()(std::uint64_t n) const
    {
        using std::expm1;
        using std::log;
        using std::log1p;
        using std::pow;
        if (n < first_) {
            throw domain_error("index " + std::to_string(n) + " is below the first valid index "
                               + std::to_string(first_) + " of " + label(spec_));
        }
        return std::visit(
            [&](const auto &s) -> Real {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Harmonic>) {
                    return Real(1) / Real(n + 1);
                } else if constexpr (std::is_same_v<S, LnBlock>) {
                    return log1p(Real(1) / Real(2 * n));
                } else if constexpr (std::is_same_v<S, PowerDelta>) {
                    // n^d * sum_i a_i ((1 - i/n)^d - 1); the -1 is free since
                    // sum a_i = 0, and it removes the leading cancellation.
                    const Real nn(n);
                    const Real d(s.delta);
                    Real acc(0);
                    for (std::size_t i = 1; i < signs_.size(); ++i) {
                        if (signs_[i] == 0) {
                            continue;
                        }
                        const Real t = expm1(d * log1p(-Real(i) / nn));
                        if (signs_[i] > 0) {
                            acc += t;
                        } else {
                            acc -= t;
                        }
                    }
                    return pow(nn, d) * acc;
                } else if constexpr (std::is_same_v<S, TotientLog>) {
                    const auto p = nth_prime(n);
                    return -log1p(Real(-1) / Real(p));
                } else if constexpr (std::is_same_v<S, PrimePower>) {
                    const Real d(s.delta);
                    return pow(Real(nth_prime(n + 1)), d) - pow(Real(nth_prime(n)), d);
                } else {
                    return Real(s.r) + (*base_)(n);
                }
            },
            spec_.kind);
    }

private:
    SequenceSpec spec_;
    std::vector<Trit> signs_;
    std::shared_ptr<SequenceEvaluator> base_;
    std::uint64_t first_ = 0;
};

template <typename Real = HpReal>
Real eval_sequence(const SequenceSpec &spec, std::uint64_t n)
{
    return SequenceEvaluator<Real>(spec)(n);
}

// Leading coefficient C of PowerDelta: E(n) ~ C n^(delta - m).
inline double power_delta_leading_constant(double delta)
{
    const std::size_t m = detail::power_delta_order(delta);
    const PSequence p = p_sequence(m);
    double moment = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        moment += p.entries[i] * std::pow(static_cast<double>(i), static_cast<double>(m));
    }
    double binom = 1;
    for (std::size_t j = 0; j < m; ++j) {
        binom *= (delta - static_cast<double>(j)) / static_cast<double>(j + 1);
    }
    return ((m % 2 == 0) ? 1.0 : -1.0) * binom * moment;
}

// First index from which PowerDelta values stay within half of the leading
// term C n^(delta-m), hence positive. Located by scanning: the threshold is
// confirmed once the bound holds on a window four times as long as the
// prefix examined so far.
template <typename Real = HpReal>
std::uint64_t power_delta_positive_from(double delta)
{
    using std::abs;
    using std::pow;
    const SequenceEvaluator<Real> e(SequenceSpec{PowerDelta{delta}});
    const double c = power_delta_leading_constant(delta);
    const double expo = delta - static_cast<double>(detail::power_delta_order(delta));
    std::uint64_t start = e.first();
    std::uint64_t horizon = 4 * start + 256;
    for (std::uint64_t n = start; n <= horizon; ++n) {
        const Real lead = Real(c) * pow(Real(n), Real(expo));
        const Real v = e(n);
        if (!(abs(v - lead) <= Real(0.5) * lead)) {
            start = n + 1;
            horizon = 4 * start + 256;
        }
    }
    return start;
}

} // namespace likepowers

#endif
