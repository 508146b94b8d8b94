#ifndef LIKEPOWERS_DENSE_HPP
#define LIKEPOWERS_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <likepowers/errors.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/primes.hpp>
#include <likepowers/pseq.hpp>
#include <likepowers/selection.hpp>
#include <likepowers/sequence.hpp>

namespace likepowers
{

inline constexpr std::uint64_t default_greedy_budget = 1'000'000;
inline constexpr std::uint64_t default_signed_budget = 100'000;

// Working precision that keeps accumulated rounding under eps/10 for
// max_terms additions of values up to 2^48 in magnitude.
inline unsigned default_working_bits(double eps, std::uint64_t max_terms)
{
    const double need = std::log2(10.0 / eps) + std::log2(static_cast<double>(std::max<std::uint64_t>(max_terms, 1)));
    return std::max(64u, static_cast<unsigned>(std::ceil(need)) + 48u);
}

namespace detail
{

// Comparisons against the target tolerate a few ulps so that exact hits
// (ln 2 + ln 3/2 against ln 3) are not lost to rounding.
template <typename Real>
Real rounding_slack(const Real &c)
{
    using std::abs;
    using std::ldexp;
    Real mag = abs(c);
    if (mag < Real(1)) {
        mag = Real(1);
    }
    return ldexp(mag, 4 - static_cast<int>(working_bits<Real>()));
}

template <typename Real>
void check_tolerance(const Real &eps)
{
    if (!(eps > Real(0))) {
        throw domain_error("tolerance eps must be positive");
    }
}

// First index >= start whose term satisfies pred, assuming pred stays true
// once it holds (a non-increasing tail). Exponential probe, then bisection.
template <typename TermFn, typename Pred>
std::uint64_t first_where(const TermFn &term, std::uint64_t start, const Pred &pred)
{
    if (pred(term(start))) {
        return start;
    }
    std::uint64_t lo = start;
    std::uint64_t step = 1;
    std::uint64_t hi = start + 1;
    while (!pred(term(hi))) {
        if (step > (std::uint64_t{1} << 60)) {
            throw resource_error("no qualifying term within 2^61 indices");
        }
        lo = hi;
        step *= 2;
        hi = lo + step;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (pred(term(mid))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// First index >= start with term < threshold, assuming the tail decreases.
template <typename Real, typename TermFn>
std::uint64_t first_below(const TermFn &term, std::uint64_t start, const Real &threshold)
{
    return first_where(term, start, [&](const Real &v) { return v < threshold; });
}

// Greedy of the subset-sum continuity argument: scan upward and keep every
// term that still fits under c. Requires c >= 0. The budget counts term
// evaluations. From index monotone_from on the terms are taken to be
// non-increasing, so a term that does not fit is followed by a jump to the
// first index that does; the kept set is the one a linear scan would keep.
template <typename Real, typename TermFn>
Selection<Real> greedy_core(const TermFn &term, std::uint64_t first, const Real &c, const Real &eps,
                            std::uint64_t max_terms, std::string label,
                            std::optional<std::uint64_t> monotone_from = std::nullopt)
{
    Selection<Real> sel;
    sel.sequence = std::move(label);
    sel.target = c;
    const Real slack = rounding_slack(c);
    if (c - sel.achieved < eps) {
        sel.finish();
        return sel;
    }
    struct budget_spent {
    };
    std::uint64_t evaluations = 0;
    auto counted = [&](std::uint64_t i) {
        if (evaluations >= max_terms) {
            throw budget_spent{};
        }
        ++evaluations;
        return term(i);
    };
    try {
        for (std::uint64_t n = first;;) {
            Real v = counted(n);
            const Real room = c + slack - sel.achieved;
            if (v <= room) {
                sel.push(n, 1, std::move(v));
                if (c - sel.achieved < eps) {
                    sel.finish();
                    return sel;
                }
                ++n;
            } else if (monotone_from && n >= *monotone_from) {
                n = first_where(counted, n + 1, [&](const Real &x) { return x <= room; });
            } else {
                ++n;
            }
        }
    } catch (const budget_spent &) {
    } catch (const resource_error &e) {
        // e.g. the prime stream cap was reached while jumping ahead
        sel.finish();
        throw convergence_failure<Real>(std::string("greedy stopped: ") + e.what(), std::move(sel));
    }
    sel.finish();
    throw convergence_failure<Real>("greedy exhausted its budget of " + std::to_string(max_terms) + " terms",
                                    std::move(sel));
}

// Greedy on |c|, signs flipped afterwards when c < 0.
template <typename Real, typename TermFn>
Selection<Real> signed_greedy(const TermFn &term, std::uint64_t first, const Real &c, const Real &eps,
                              std::uint64_t max_terms, std::string label,
                              std::optional<std::uint64_t> monotone_from = std::nullopt)
{
    using std::abs;
    const bool negative = c < Real(0);
    auto finalize = [&](Selection<Real> sel) {
        if (negative) {
            sel.flip_signs();
        }
        sel.target = c;
        sel.finish();
        return sel;
    };
    try {
        return finalize(greedy_core(term, first, Real(abs(c)), eps, max_terms, std::move(label), monotone_from));
    } catch (const convergence_failure<Real> &e) {
        throw convergence_failure<Real>(e.what(), finalize(e.partial()));
    }
}

template <typename Real>
Real to_real(double x)
{
    return Real(x);
}

} // namespace detail

// mu_E realization: all signs +1, achieved <= c (up to a few ulps) and
// c - achieved < eps. Needs lim E = 0 and sum E = infinity to terminate.
template <typename Real = HpReal>
Selection<Real> greedy_subset(const SequenceSpec &spec, const Real &c, const Real &eps,
                              std::uint64_t max_terms = default_greedy_budget)
{
    detail::check_tolerance(eps);
    if (c < Real(0)) {
        throw domain_error("greedy_subset needs a nonnegative target");
    }
    const SequenceEvaluator<Real> e(spec);
    return detail::greedy_core(e, e.first(), c, eps, max_terms, label(spec), e.monotone_from());
}

// Signed sum over r + E within eps of c, by the explicit construction: a run
// E(n..m+1) that first overshoots |c| by q < eps/2, then, when r > 0, l
// negatively signed tail terms each below q/(2l) so the l copies of r cancel.
// With r = 0 there is nothing to cancel and the tail is omitted.
template <typename Real = HpReal>
Selection<Real> signed_approx(const SequenceSpec &base, double r, const Real &c, const Real &eps,
                              std::uint64_t max_terms = default_signed_budget)
{
    using std::abs;
    detail::check_tolerance(eps);
    if (!(r >= 0) || !std::isfinite(r)) {
        throw domain_error("shift r must be a finite nonnegative real");
    }
    if (std::holds_alternative<ShiftedConstant>(base.kind)) {
        throw domain_error("signed_approx needs a base sequence with lim E = 0 and divergent sum; a shifted "
                           "sequence does not tend to 0 (the constant-1 sequence only reaches the integers)");
    }
    const SequenceEvaluator<Real> e(base);
    Selection<Real> sel;
    sel.sequence = r == 0 ? label(base) : label(shifted(r, base));
    sel.target = c;
    const Real mag = abs(c);
    if (mag < eps) {
        sel.finish();
        return sel;
    }
    const int sign = c < Real(0) ? -1 : 1;
    const Real rr = detail::to_real<Real>(r);

    const std::uint64_t n = detail::first_below(e, e.first(), Real(eps / 2));
    std::vector<std::pair<std::uint64_t, Real>> head;
    Real run(0);
    for (std::uint64_t i = n;; ++i) {
        if (head.size() >= max_terms) {
            for (auto &[idx, v] : head) {
                sel.push(idx, sign, rr + v);
            }
            sel.finish();
            throw convergence_failure<Real>("signed construction needs more than " + std::to_string(max_terms)
                                                + " positive terms",
                                            std::move(sel));
        }
        Real v = e(i);
        run += v;
        head.emplace_back(i, std::move(v));
        if (run > mag) {
            break;
        }
    }
    const Real q = run - mag;
    const std::uint64_t l = head.size();

    std::vector<std::pair<std::uint64_t, Real>> tail;
    if (r > 0) {
        const Real bound = q / Real(2 * l);
        std::uint64_t k = detail::first_below(e, head.back().first + 1, bound);
        std::uint64_t evaluations = 0;
        while (tail.size() < l) {
            const std::uint64_t j = k + tail.size();
            Real v = e(j);
            if (++evaluations > 4 * max_terms) {
                sel.finish();
                throw convergence_failure<Real>("no run of small tail terms found", std::move(sel));
            }
            if (v < bound) {
                tail.emplace_back(j, std::move(v));
            } else {
                tail.clear();
                k = detail::first_below(e, j + 1, bound);
            }
        }
    }
    for (auto &[idx, v] : head) {
        sel.push(idx, sign, rr + v);
    }
    for (auto &[idx, v] : tail) {
        sel.push(idx, -sign, rr + v);
    }
    sel.finish();
    if (!(abs(sel.residual) < eps)) {
        throw convergence_failure<Real>("signed construction missed the tolerance; the base tail is not "
                                        "decreasing",
                                        std::move(sel));
    }
    return sel;
}

namespace detail
{

template <typename Real>
Selection<Real> expand_ln_blocks(const Selection<Real> &blocks)
{
    using std::log;
    Selection<Real> out;
    out.sequence = "ln";
    out.target = blocks.target;
    for (const auto &t : blocks.terms) {
        // ln(1 + 1/(2n)) = ln(2n+1) - ln(2n)
        out.push(2 * t.index + 1, t.sign, log(Real(2 * t.index + 1)));
        out.push(2 * t.index, -t.sign, log(Real(2 * t.index)));
    }
    out.finish();
    return out;
}

} // namespace detail

// Signed ln k terms (k >= 2, distinct) within eps of c, via the ln(1 + 1/(2n))
// blocks on the disjoint pairs {2n, 2n+1}.
template <typename Real = HpReal>
Selection<Real> ln_expand(const Real &c, const Real &eps, std::uint64_t max_terms = default_signed_budget)
{
    using std::abs;
    Selection<Real> blocks;
    try {
        blocks = signed_approx<Real>(SequenceSpec{LnBlock{}}, 0.0, c, eps, max_terms);
    } catch (const convergence_failure<Real> &e) {
        throw convergence_failure<Real>(e.what(), detail::expand_ln_blocks(e.partial()));
    }
    Selection<Real> out = detail::expand_ln_blocks(blocks);
    if (!(abs(out.residual) < eps)) {
        throw convergence_failure<Real>("ln expansion lost the tolerance to rounding", std::move(out));
    }
    return out;
}

inline void check_power_delta_exponent(double delta)
{
    if (!std::isfinite(delta)) {
        throw domain_error("delta must be finite");
    }
    if (delta < -1) {
        throw domain_error("<n^delta> is dense-expandable iff delta = -1 or delta > -1 is not an integer; for "
                           "delta < -1 the series converges and the signed sums are bounded");
    }
    if (detail::is_integral(delta) && delta != -1) {
        throw domain_error("<n^delta> is dense-expandable iff delta = -1 or delta > -1 is not an integer; for "
                           "integer delta >= 0 every signed sum is an integer");
    }
}

// Signed powers j^delta (distinct j >= 1) within eps of c.
// delta in [-1, 0): greedy directly on j^delta. delta > 0: greedy on the
// telescoped blocks E(stride * b) = sum_i a_i (stride*b - i)^delta over
// P_ceil(delta), each expanded back to its k+1 integers.
template <typename Real = HpReal>
Selection<Real> expand_power_delta(double delta, const Real &c, const Real &eps,
                                   std::uint64_t max_terms = default_greedy_budget)
{
    using std::pow;
    detail::check_tolerance(eps);
    check_power_delta_exponent(delta);
    const std::string name = "power:" + HpReal(delta).str();
    const Real d(delta);
    if (delta < 0) {
        auto term = [&](std::uint64_t j) { return pow(Real(j), d); };
        return detail::signed_greedy(term, 1, c, eps, max_terms, name, std::uint64_t{1});
    }

    const std::size_t m = detail::power_delta_order(delta);
    const PSequence p = p_sequence(m);
    const std::uint64_t k = p.last();
    // Blocks {N - k, ..., N} with N a multiple of k + 1 never share an integer.
    const std::uint64_t stride = k + 1;
    const std::uint64_t positive_from = power_delta_positive_from<Real>(delta);
    const std::uint64_t b0 = std::max<std::uint64_t>(k + 1, (positive_from + stride - 1) / stride);
    const SequenceEvaluator<Real> e(SequenceSpec{PowerDelta{delta}});
    auto block = [&](std::uint64_t b) { return e(stride * b); };

    auto expand = [&](const Selection<Real> &blocks) {
        Selection<Real> out;
        out.sequence = name;
        out.target = c;
        for (const auto &t : blocks.terms) {
            const std::uint64_t top = stride * t.index;
            for (std::uint64_t i = 0; i <= k; ++i) {
                if (p.entries[i] == 0) {
                    continue;
                }
                const std::uint64_t j = top - i;
                out.push(j, t.sign * p.entries[i], pow(Real(j), d));
            }
        }
        out.finish();
        return out;
    };
    Selection<Real> blocks;
    try {
        blocks = detail::signed_greedy(block, b0, c, eps, max_terms, name + ":blocks", b0);
    } catch (const convergence_failure<Real> &err) {
        throw convergence_failure<Real>(err.what(), expand(err.partial()));
    }
    Selection<Real> out = expand(blocks);
    using std::abs;
    if (!(abs(out.residual) < eps)) {
        throw convergence_failure<Real>("power expansion lost the tolerance to rounding; raise the precision",
                                        std::move(out));
    }
    return out;
}

template <typename Real>
struct TotientResult {
    std::vector<std::uint64_t> primes;
    Rational ratio{1};
    // prod primes, omitted above composite_bit_cap bits.
    std::optional<BigInt> composite;
    Selection<Real> log_selection;
};

inline constexpr std::size_t composite_bit_cap = 4096;

// Squarefree n with |phi(n)/n - t| < eps: greedy on -ln(1 - 1/p) toward -ln t,
// then the product of (1 - 1/p) is formed exactly.
template <typename Real = HpReal>
TotientResult<Real> totient_approx(double t, double eps, std::uint64_t max_primes = default_greedy_budget)
{
    using std::log;
    using std::log1p;
    if (!(t > 0 && t <= 1)) {
        throw domain_error("totient target must lie in (0, 1]");
    }
    if (!(eps > 0)) {
        throw domain_error("tolerance eps must be positive");
    }
    const Real target = -log(Real(t));
    // ratio in [t, t * sqrt(1 + eps/t)) keeps |ratio - t| < eps/2.
    const Real log_eps = log1p(Real(eps) / Real(t)) / 2;
    const SequenceEvaluator<Real> e(SequenceSpec{TotientLog{}});

    TotientResult<Real> out;
    if (t == 1) {
        out.log_selection.sequence = label(e.spec());
        out.composite = BigInt(1);
        return out;
    }
    out.log_selection =
        detail::greedy_core(e, e.first(), target, log_eps, max_primes, label(e.spec()), e.monotone_from());
    for (const auto &term : out.log_selection.terms) {
        out.primes.push_back(nth_prime(term.index));
    }
    const BigInt composite =
        product_tree(out.primes.begin(), out.primes.end(), [](std::uint64_t p) { return BigInt(p); });
    const BigInt totient =
        product_tree(out.primes.begin(), out.primes.end(), [](std::uint64_t p) { return BigInt(p - 1); });
    out.ratio = Rational(totient, composite);
    if (msb(composite) + 1 <= composite_bit_cap) {
        out.composite = composite;
    }
    const Rational gap = abs(out.ratio - to_rational(t));
    if (!(gap < to_rational(eps))) {
        throw convergence_failure<Real>("exact totient ratio misses the tolerance", out.log_selection);
    }
    return out;
}

// Signed prime powers p^delta (distinct primes) within eps of c, from a greedy
// on u_n = p_{n+1}^delta - p_n^delta. A run of consecutive chosen n..n'
// telescopes to p_{n'+1}^delta - p_n^delta, so runs become disjoint
// consecutive-prime blocks.
template <typename Real = HpReal>
Selection<Real> prime_power_expand(double delta, const Real &c, const Real &eps,
                                   std::uint64_t max_terms = default_greedy_budget)
{
    using std::pow;
    detail::check_tolerance(eps);
    if (!(delta > 0 && delta <= 0.5)) {
        throw domain_error("prime-power expansion needs delta in (0, 1/2]");
    }
    const std::string name = "prime-power:" + HpReal(delta).str();
    const Real d(delta);
    const SequenceEvaluator<Real> e(SequenceSpec{PrimePower{delta}});

    auto collapse = [&](const Selection<Real> &gaps) {
        Selection<Real> out;
        out.sequence = name;
        out.target = c;
        std::vector<std::pair<std::uint64_t, int>> picked;
        for (const auto &t : gaps.terms) {
            picked.emplace_back(t.index, t.sign);
        }
        std::sort(picked.begin(), picked.end());
        for (std::size_t a = 0; a < picked.size();) {
            std::size_t b = a;
            while (b + 1 < picked.size() && picked[b + 1].first == picked[b].first + 1
                   && picked[b + 1].second == picked[a].second) {
                ++b;
            }
            const int sign = picked[a].second;
            const auto hi = nth_prime(picked[b].first + 1);
            const auto lo = nth_prime(picked[a].first);
            out.push(hi, sign, pow(Real(hi), d));
            out.push(lo, -sign, pow(Real(lo), d));
            a = b + 1;
        }
        out.finish();
        return out;
    };
    Selection<Real> gaps;
    try {
        gaps = detail::signed_greedy(e, e.first(), c, eps, max_terms, name + ":gaps");
    } catch (const convergence_failure<Real> &err) {
        throw convergence_failure<Real>(err.what(), collapse(err.partial()));
    }
    Selection<Real> out = collapse(gaps);
    using std::abs;
    if (!(abs(out.residual) < eps)) {
        throw convergence_failure<Real>("prime-power expansion lost the tolerance to rounding", std::move(out));
    }
    return out;
}

// Independent check: recompute each term from its index at `bits` precision
// and return target - sum.
template <typename Real, typename ValueFn>
HpReal recompute_residual(const Selection<Real> &sel, const ValueFn &value_of, unsigned bits)
{
    ScopedPrecision guard(bits);
    HpReal acc(0);
    for (const auto &t : sel.terms) {
        const HpReal v = value_of(t.index);
        if (t.sign > 0) {
            acc += v;
        } else {
            acc -= v;
        }
    }
    const HpReal target(sel.target);
    return target - acc;
}

// Term formulas for recompute_residual, evaluated at the ambient precision.
inline auto integer_power_value(double delta)
{
    return [delta](std::uint64_t j) { return boost::multiprecision::pow(HpReal(j), HpReal(delta)); };
}

inline auto integer_log_value()
{
    return [](std::uint64_t k) { return boost::multiprecision::log(HpReal(k)); };
}

inline auto sequence_value(const SequenceSpec &spec)
{
    auto e = std::make_shared<const SequenceEvaluator<HpReal>>(spec);
    return [e](std::uint64_t n) { return (*e)(n); };
}

} // namespace likepowers

#endif
