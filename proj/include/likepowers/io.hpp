#ifndef LIKEPOWERS_IO_HPP
#define LIKEPOWERS_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include <likepowers/exactpoly.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/pseq.hpp>
#include <likepowers/pte.hpp>
#include <likepowers/selection.hpp>

// JSON records. Arbitrary-precision integers and all reals travel as decimal
// strings so nothing is lost in transport.

namespace likepowers
{

using json = nlohmann::ordered_json;

inline json to_json(const PSequence &p)
{
    json entries = json::array();
    for (const Trit t : p.entries) {
        entries.push_back(static_cast<int>(t));
    }
    return {{"n", p.n}, {"length", p.size()}, {"entries", std::move(entries)}};
}

inline json to_json(const VerificationReport &r)
{
    json sums = json::array();
    for (const auto &row : r.rows) {
        sums.push_back({{"s", row.s}, {"sumU", row.sum_u.str()}, {"sumV", row.sum_v.str()}, {"equal", row.equal}});
    }
    return {{"certified_degree", r.certified_degree ? json(*r.certified_degree) : json(nullptr)},
            {"power_sums", std::move(sums)}};
}

inline json to_json(const PtePair &pair)
{
    json params = {{"n", pair.params.n}};
    if (pair.params.p) {
        params["p"] = *pair.params.p;
    }
    if (pair.params.l) {
        params["l"] = *pair.params.l;
    }
    const json report = to_json(pair.report);
    return {{"method", std::string(to_string(pair.method))},
            {"params", std::move(params)},
            {"U", pair.u},
            {"V", pair.v},
            {"certified_degree", pair.degree},
            {"degree_raised", pair.degree_raised},
            {"power_sums", report["power_sums"]}};
}

struct ParsedPair {
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
    std::size_t certified_degree = 0;
};

inline ParsedPair pair_from_json(const json &j)
{
    return {j.at("U").get<std::vector<std::int64_t>>(), j.at("V").get<std::vector<std::int64_t>>(),
            j.at("certified_degree").get<std::size_t>()};
}

inline json to_json(const VanishingReport &r)
{
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"s", row.s}, {"zero", row.zero}});
    }
    return {{"n", r.n}, {"passed", r.passed}, {"rows", std::move(rows)}};
}

inline json to_json(const DegreeReport &r)
{
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"s", row.s},
                        {"degree", row.degree ? json(*row.degree) : json(nullptr)},
                        {"expected", row.expected},
                        {"ok", row.ok}});
    }
    return {{"n", r.n},
            {"passed", r.passed},
            {"F_nn", r.leading_constant.str()},
            {"moment_n", r.top_moment.str()},
            {"expected_sign", r.expected_sign},
            {"rows", std::move(rows)}};
}

inline json to_json(const VerificationSummary &s)
{
    json vanishing = json::array();
    for (const auto &r : s.vanishing) {
        vanishing.push_back(to_json(r));
    }
    json degree = json::array();
    for (const auto &r : s.degree) {
        degree.push_back(to_json(r));
    }
    return {{"passed", s.passed()}, {"vanishing", std::move(vanishing)}, {"degree", std::move(degree)}};
}

template <typename Real>
json to_json(const Selection<Real> &sel, const json &params, const std::string &eps)
{
    json terms = json::array();
    for (const auto &t : sel.terms) {
        terms.push_back({{"index", t.index}, {"sign", t.sign}, {"value", to_decimal(t.value)}});
    }
    return {{"sequence", sel.sequence},
            {"params", params},
            {"target", to_decimal(sel.target)},
            {"eps", eps},
            {"terms", std::move(terms)},
            {"achieved", to_decimal(sel.achieved)},
            {"residual", to_decimal(sel.residual)}};
}

struct ParsedTerm {
    std::uint64_t index = 0;
    int sign = 1;
    std::string value;
};

struct ParsedSelection {
    std::string sequence;
    std::string target;
    std::string eps;
    std::vector<ParsedTerm> terms;
};

inline ParsedSelection selection_from_json(const json &j)
{
    ParsedSelection out{j.at("sequence").get<std::string>(), j.at("target").get<std::string>(),
                        j.at("eps").get<std::string>(), {}};
    for (const auto &t : j.at("terms")) {
        out.terms.push_back({t.at("index").get<std::uint64_t>(), t.at("sign").get<int>(),
                             t.at("value").get<std::string>()});
    }
    return out;
}

} // namespace likepowers

#endif
