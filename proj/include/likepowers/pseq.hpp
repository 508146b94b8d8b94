#ifndef LIKEPOWERS_PSEQ_HPP
#define LIKEPOWERS_PSEQ_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <likepowers/errors.hpp>

namespace likepowers
{

using Trit = std::int8_t;

// P_24 has about 1.4e7 entries.
inline constexpr std::size_t default_max_pseq_index = 24;

// The n-th P-sequence: a +1/0/-1 list whose signed power sums
// sum_i a_i (i + x)^s vanish identically for s < n.
struct PSequence {
    std::size_t n = 0;
    std::vector<Trit> entries;

    std::size_t size() const { return entries.size(); }
    // Largest position (the k in a_0..a_k).
    std::size_t last() const { return entries.size() - 1; }
};

// Convolution of P_n with the mask <1, 0, 1>.
struct QSequence {
    std::size_t n = 0;
    std::vector<Trit> entries;
};

// Positions i >= 1 of P_n holding -1 (x) and +1 (y), ascending.
struct IndexSets {
    std::vector<std::size_t> x;
    std::vector<std::size_t> y;
};

namespace detail
{

inline void check_pseq_index(std::size_t n, std::size_t max_n, std::size_t min_n = 1)
{
    if (n < min_n) {
        throw domain_error("P-sequence index must be at least " + std::to_string(min_n) + ", got "
                           + std::to_string(n));
    }
    if (n > max_n) {
        throw domain_error("P-sequence index " + std::to_string(n) + " exceeds the configured maximum "
                           + std::to_string(max_n));
    }
}

// One step of the recursion. Exactly one rule applies because both endpoints
// are always +-1.
inline std::vector<Trit> next_pseq(const std::vector<Trit> &a)
{
    const Trit first = a.front();
    const Trit last = a.back();
    if (first == 0 || last == 0) {
        throw invariant_violation("P-sequence endpoint is zero");
    }
    std::vector<Trit> out;
    if (first == -last) {
        // <a_0..a_k, a_k..a_0>
        out.reserve(2 * a.size());
        out.insert(out.end(), a.begin(), a.end());
        out.insert(out.end(), a.rbegin(), a.rend());
    } else {
        // <a_0..a_{k-1}, 0, -a_{k-1}..-a_0>
        out.reserve(2 * a.size() - 1);
        out.insert(out.end(), a.begin(), a.end() - 1);
        out.push_back(0);
        for (auto it = a.rbegin() + 1; it != a.rend(); ++it) {
            out.push_back(static_cast<Trit>(-*it));
        }
    }
    return out;
}

} // namespace detail

// Length of P_n without building it: 2, 4, 7, 14, 27, 54, ...
inline std::size_t pseq_length(std::size_t n)
{
    std::size_t len = 2;
    for (std::size_t i = 1; i < n; ++i) {
        len = (i % 2 == 1) ? 2 * len : 2 * len - 1;
    }
    return len;
}

inline PSequence p_sequence(std::size_t n, std::size_t max_n = default_max_pseq_index)
{
    detail::check_pseq_index(n, max_n);
    std::vector<Trit> a{1, -1};
    for (std::size_t i = 1; i < n; ++i) {
        a = detail::next_pseq(a);
    }
    return {n, std::move(a)};
}

// Applies whichever rule's guard holds to p.
inline PSequence next_p_sequence(const PSequence &p)
{
    return {p.n + 1, detail::next_pseq(p.entries)};
}

// b_i = a_i + a_{i-2}, out-of-range terms zero. The tabulated Q_3 fixes this
// reading; the closed form printed next to it (a_i + a_{i+2}) does not
// reproduce the table.
inline QSequence q_sequence(std::size_t n, std::size_t max_n = default_max_pseq_index)
{
    detail::check_pseq_index(n, max_n, 2);
    const PSequence p = p_sequence(n, max_n);
    std::vector<Trit> b(p.size() + 2, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        int v = 0;
        if (i < p.size()) {
            v += p.entries[i];
        }
        if (i >= 2) {
            v += p.entries[i - 2];
        }
        if (v < -1 || v > 1) {
            throw invariant_violation("Q-sequence entry outside {-1,0,1}");
        }
        b[i] = static_cast<Trit>(v);
    }
    return {n, std::move(b)};
}

inline IndexSets index_sets(const PSequence &p)
{
    IndexSets sets;
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p.entries[i] == -1) {
            sets.x.push_back(i);
        } else if (p.entries[i] == 1) {
            sets.y.push_back(i);
        }
    }
    return sets;
}

inline IndexSets index_sets(std::size_t n, std::size_t max_n = default_max_pseq_index)
{
    return index_sets(p_sequence(n, max_n));
}

} // namespace likepowers

#endif
