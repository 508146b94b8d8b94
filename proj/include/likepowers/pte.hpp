#ifndef LIKEPOWERS_PTE_HPP
#define LIKEPOWERS_PTE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <likepowers/errors.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/pseq.hpp>

namespace likepowers
{

enum class PteMethod { shift, convolution, difference, merged };

inline std::string_view to_string(PteMethod m)
{
    switch (m) {
    case PteMethod::shift:
        return "shift";
    case PteMethod::convolution:
        return "convolution";
    case PteMethod::difference:
        return "difference";
    case PteMethod::merged:
        return "merged";
    }
    return "unknown";
}

struct PowerSumRow {
    std::size_t s = 0;
    BigInt sum_u;
    BigInt sum_v;
    bool equal = false;
};

struct VerificationReport {
    std::vector<PowerSumRow> rows;
    // First exponent at which the sums differ; nullopt means they agree
    // through s_max, i.e. the degree is at least s_max + 1.
    std::optional<std::size_t> certified_degree;
};

struct PteParams {
    std::size_t n = 0;
    std::optional<std::int64_t> p;
    std::optional<std::int64_t> l;
};

// Disjoint, equal-size integer sets whose power sums agree for s < degree
// and differ at s = degree.
struct PtePair {
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
    std::size_t degree = 0;
    PteMethod method = PteMethod::shift;
    PteParams params;
    VerificationReport report;
    // Set by merge_pairs when the union agrees beyond the inputs' degree.
    bool degree_raised = false;
};

namespace detail
{

inline void check_pair_sets(std::span<const std::int64_t> u, std::span<const std::int64_t> v)
{
    if (u.size() != v.size()) {
        throw domain_error("PTE sets must have equal cardinality (" + std::to_string(u.size()) + " vs "
                           + std::to_string(v.size()) + ")");
    }
    std::vector<std::int64_t> su(u.begin(), u.end());
    std::vector<std::int64_t> sv(v.begin(), v.end());
    std::sort(su.begin(), su.end());
    std::sort(sv.begin(), sv.end());
    if (std::adjacent_find(su.begin(), su.end()) != su.end()
        || std::adjacent_find(sv.begin(), sv.end()) != sv.end()) {
        throw domain_error("PTE sets must not repeat elements");
    }
    std::vector<std::int64_t> common;
    std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(), std::back_inserter(common));
    if (!common.empty()) {
        throw domain_error("PTE sets overlap at " + std::to_string(common.front()));
    }
}

} // namespace detail

inline VerificationReport verify_pair(std::span<const std::int64_t> u, std::span<const std::int64_t> v,
                                      std::size_t s_max)
{
    detail::check_pair_sets(u, v);
    VerificationReport report;
    std::vector<BigInt> pu(u.size(), BigInt(1));
    std::vector<BigInt> pv(v.size(), BigInt(1));
    for (std::size_t s = 0; s <= s_max; ++s) {
        PowerSumRow row;
        row.s = s;
        for (std::size_t i = 0; i < u.size(); ++i) {
            row.sum_u += pu[i];
            pu[i] *= u[i];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            row.sum_v += pv[i];
            pv[i] *= v[i];
        }
        row.equal = row.sum_u == row.sum_v;
        if (!row.equal && !report.certified_degree) {
            report.certified_degree = s;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace detail
{

inline PtePair certify(std::vector<std::int64_t> u, std::vector<std::int64_t> v, std::size_t degree,
                       PteMethod method, PteParams params)
{
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    VerificationReport report = verify_pair(u, v, degree);
    if (report.certified_degree != degree) {
        throw invariant_violation(std::string("certification failed for ") + std::string(to_string(method))
                                  + " pair: expected degree " + std::to_string(degree));
    }
    return {std::move(u), std::move(v), degree, method, params, std::move(report), false};
}

} // namespace detail

// U = {p i + l : a_i = -1}, V = {p i + l : a_i = +1} over P_n.
inline PtePair method_shift(std::size_t n, std::int64_t p, std::int64_t l,
                            std::size_t max_n = default_max_pseq_index)
{
    detail::check_pseq_index(n, max_n, 2);
    if (p == 0) {
        throw domain_error("shift method needs a nonzero stride p");
    }
    const PSequence seq = p_sequence(n, max_n);
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const std::int64_t x = p * static_cast<std::int64_t>(i) + l;
        if (seq.entries[i] == -1) {
            u.push_back(x);
        } else if (seq.entries[i] == 1) {
            v.push_back(x);
        }
    }
    return detail::certify(std::move(u), std::move(v), n, PteMethod::shift, {n, p, l});
}

// U = {i + 1 : b_i = +1}, V = {i + 1 : b_i = -1} over Q_n.
inline PtePair method_convolution(std::size_t n, std::size_t max_n = default_max_pseq_index)
{
    const QSequence q = q_sequence(n, max_n);
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < q.entries.size(); ++i) {
        const auto x = static_cast<std::int64_t>(i) + 1;
        if (q.entries[i] == 1) {
            u.push_back(x);
        } else if (q.entries[i] == -1) {
            v.push_back(x);
        }
    }
    return detail::certify(std::move(u), std::move(v), n, PteMethod::convolution, {n, {}, {}});
}

// U = X_{2m+2} \ X_{2m+1}, V = Y_{2m+2} \ Y_{2m+1}; degree 2m + 1.
inline PtePair method_difference(std::size_t m, std::size_t max_n = default_max_pseq_index)
{
    if (m == 0) {
        throw domain_error("difference method needs m >= 1");
    }
    detail::check_pseq_index(2 * m + 2, max_n);
    const PSequence small = p_sequence(2 * m + 1, max_n);
    const PSequence big = next_p_sequence(small);
    const IndexSets lo = index_sets(small);
    const IndexSets hi = index_sets(big);

    auto difference = [](const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
        if (!std::includes(a.begin(), a.end(), b.begin(), b.end())) {
            throw invariant_violation("index sets of P_{2m+1} are not contained in those of P_{2m+2}");
        }
        std::vector<std::size_t> d;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
        return std::vector<std::int64_t>(d.begin(), d.end());
    };
    return detail::certify(difference(hi.x, lo.x), difference(hi.y, lo.y), 2 * m + 1, PteMethod::difference,
                           {m, {}, {}});
}

// Union of pairwise-disjoint pairs sharing a degree. The union is re-certified;
// if its sums happen to agree at the shared degree too, the reported degree is
// raised and degree_raised is set.
inline PtePair merge_pairs(std::span<const PtePair> pairs)
{
    if (pairs.empty()) {
        throw domain_error("merge_pairs needs at least one pair");
    }
    const std::size_t degree = pairs.front().degree;
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
    for (const auto &pr : pairs) {
        if (pr.degree != degree) {
            throw domain_error("merge_pairs needs equal degrees (" + std::to_string(degree) + " vs "
                               + std::to_string(pr.degree) + ")");
        }
        u.insert(u.end(), pr.u.begin(), pr.u.end());
        v.insert(v.end(), pr.v.begin(), pr.v.end());
    }
    std::vector<std::int64_t> all = u;
    all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw domain_error("merge_pairs needs pairwise disjoint sets");
    }
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());

    PteParams params{degree, {}, {}};
    if (pairs.size() == 1) {
        PtePair same = pairs.front();
        return same;
    }
    // Distinct sets of size N cannot share power sums for s = 1..N, so the
    // doubling below stops by s = N.
    std::size_t s_max = degree;
    VerificationReport report = verify_pair(u, v, s_max);
    while (!report.certified_degree) {
        if (s_max >= u.size()) {
            throw invariant_violation("merged sets agree through their cardinality");
        }
        s_max = std::min(2 * s_max, u.size());
        report = verify_pair(u, v, s_max);
    }
    const std::size_t certified = *report.certified_degree;
    if (certified < degree) {
        throw invariant_violation("merged pair lost equality below the input degree");
    }
    report.rows.resize(certified + 1);
    return {std::move(u), std::move(v), certified, PteMethod::merged, params, std::move(report), certified != degree};
}

inline PtePair merge_pairs(std::initializer_list<PtePair> pairs)
{
    return merge_pairs(std::span<const PtePair>(pairs.begin(), pairs.size()));
}

} // namespace likepowers

#endif
