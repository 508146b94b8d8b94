// likepowers: P-sequences, exact power-sum verification, Prouhet-Tarry-Escott
// pairs and dense signed expansions from the command line.
//
// Exit codes: 0 success, 1 usage or domain error (stderr only), 2 resource
// bound or convergence failure, 3 failed certification (a bug).

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <likepowers/dense.hpp>
#include <likepowers/exactpoly.hpp>
#include <likepowers/io.hpp>
#include <likepowers/pseq.hpp>
#include <likepowers/pte.hpp>

namespace lp = likepowers;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_resource = 2;
constexpr int exit_bug = 3;

constexpr const char *precision_env = "LIKEPOWERS_PRECISION_BITS";

struct Format {
    std::string value = "text";
    bool json() const { return value == "json"; }
};

lp::json envelope(const std::string &command, lp::json params, lp::json result, const std::string &status)
{
    return {{"command", command}, {"parameters", std::move(params)}, {"status", status}, {"result", std::move(result)}};
}

void print_json(const lp::json &j)
{
    std::cout << j.dump(2) << '\n';
}

std::string join_ints(const std::vector<std::int64_t> &xs)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << (i ? "," : "") << xs[i];
    }
    return "{" + out.str() + "}";
}

// ---- pseq --------------------------------------------------------------

struct PseqArgs {
    std::size_t n = 0;
    std::size_t max_n = lp::default_max_pseq_index;
    Format format;
};

int run_pseq(const PseqArgs &a)
{
    const lp::PSequence p = lp::p_sequence(a.n, a.max_n);
    if (a.format.json()) {
        print_json(envelope("pseq", {{"n", a.n}}, lp::to_json(p), "ok"));
        return exit_ok;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::cout << (i ? " " : "") << static_cast<int>(p.entries[i]);
    }
    std::cout << '\n';
    return exit_ok;
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
    std::size_t n_max = 8;
    std::size_t s_extra = 3;
    Format format;
};

int run_verify(const VerifyArgs &a)
{
    lp::VerificationSummary summary;
    for (std::size_t n = 1; n <= a.n_max; ++n) {
        lp::VerificationSummary part;
        part.vanishing.push_back(lp::verify_vanishing(n));
        part.degree.push_back(lp::verify_degree(n, n + a.s_extra));
        summary.merge(std::move(part));
    }
    const bool ok = summary.passed();
    if (a.format.json()) {
        print_json(envelope("verify", {{"n_max", a.n_max}, {"s_extra", a.s_extra}}, lp::to_json(summary),
                            ok ? "ok" : "failed"));
    } else {
        std::cout << "   n  vanishing(s<n)  degrees(s=n..n+" << a.s_extra << ")  F_nn  sign\n";
        for (std::size_t i = 0; i < summary.vanishing.size(); ++i) {
            const auto &v = summary.vanishing[i];
            const auto &d = summary.degree[i];
            std::cout << std::setw(4) << v.n << "  " << std::setw(14) << (v.passed ? "zero" : "NONZERO") << "  "
                      << std::setw(17) << (d.constant_ok && d.passed ? "s-n" : "MISMATCH") << "  "
                      << d.leading_constant.str() << "  " << (d.sign_ok ? (d.expected_sign > 0 ? "+" : "-") : "WRONG")
                      << '\n';
        }
        std::cout << (ok ? "all identities hold" : "FAILED") << '\n';
    }
    return ok ? exit_ok : exit_bug;
}

// ---- pte ---------------------------------------------------------------

struct PteArgs {
    std::string method;
    std::size_t n = 0;
    std::int64_t p = 1;
    std::int64_t l = 0;
    std::optional<std::size_t> s_max;
    Format format;
};

int run_pte(const PteArgs &a)
{
    lp::PtePair pair;
    if (a.method == "shift") {
        pair = lp::method_shift(a.n, a.p, a.l);
    } else if (a.method == "conv" || a.method == "convolution") {
        pair = lp::method_convolution(a.n);
    } else if (a.method == "diff" || a.method == "difference") {
        pair = lp::method_difference(a.n);
    } else {
        throw lp::domain_error("unknown method '" + a.method + "' (expected shift, conv or diff)");
    }
    const std::size_t s_max = a.s_max.value_or(pair.degree + 1);
    const lp::VerificationReport report = lp::verify_pair(pair.u, pair.v, s_max);
    if (report.certified_degree && *report.certified_degree != pair.degree) {
        throw lp::invariant_violation("report disagrees with the certified degree");
    }
    if (a.format.json()) {
        lp::json result = lp::to_json(pair);
        result["power_sums"] = lp::to_json(report)["power_sums"];
        print_json(envelope("pte", {{"method", a.method}, {"n", a.n}, {"p", a.p}, {"l", a.l}, {"s_max", s_max}},
                            std::move(result), "ok"));
        return exit_ok;
    }
    std::cout << "method " << lp::to_string(pair.method) << "  degree " << pair.degree << '\n';
    std::cout << "U = " << join_ints(pair.u) << '\n';
    std::cout << "V = " << join_ints(pair.v) << '\n';
    std::cout << "   s  sum over U  sum over V  equal\n";
    for (const auto &row : report.rows) {
        std::cout << std::setw(4) << row.s << "  " << row.sum_u.str() << "  " << row.sum_v.str() << "  "
                  << (row.equal ? "yes" : "no") << '\n';
    }
    std::cout << "certified degree " << pair.degree << '\n';
    return exit_ok;
}

// ---- approx ------------------------------------------------------------

struct ApproxArgs {
    std::string sequence;
    std::optional<double> target;
    double eps = 1e-6;
    std::uint64_t max_terms = 1'000'000;
    std::string base = "harmonic";
    Format format;
};

double parse_real(const std::string &text, const std::string &what)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw lp::domain_error("cannot parse " + what + " '" + text + "'");
    }
    return v;
}

lp::SequenceSpec parse_base(const std::string &name)
{
    if (name == "harmonic") {
        return {lp::Harmonic{}};
    }
    if (name == "ln-block") {
        return {lp::LnBlock{}};
    }
    if (name == "totient-log") {
        return {lp::TotientLog{}};
    }
    throw lp::domain_error("unknown base sequence '" + name + "' (expected harmonic, ln-block or totient-log)");
}

unsigned working_precision(double eps, std::uint64_t max_terms)
{
    if (const char *env = std::getenv(precision_env)) {
        const double bits = parse_real(env, precision_env);
        if (bits < 24 || bits > 1u << 16) {
            throw lp::domain_error(std::string(precision_env) + " must lie in [24, 65536]");
        }
        return static_cast<unsigned>(bits);
    }
    return lp::default_working_bits(eps, max_terms);
}

template <typename ValueFn>
int report_selection(const ApproxArgs &a, const std::string &kind, lp::json params,
                     const lp::Selection<lp::HpReal> &sel, const ValueFn &value_of, unsigned bits, bool converged)
{
    const lp::HpReal check = lp::recompute_residual(sel, value_of, 2 * bits);
    const bool within = abs(check) < lp::HpReal(a.eps);
    const bool ok = converged && within;
    const std::string status = !converged ? "convergence_failure" : (within ? "ok" : "residual_check_failed");
    std::ostringstream eps_text;
    eps_text << std::setprecision(17) << a.eps;
    if (a.format.json()) {
        lp::json result = lp::to_json(sel, params, eps_text.str());
        result["recomputed_residual"] = lp::to_decimal(check, 20);
        result["precision_bits"] = bits;
        params["sequence"] = a.sequence;
        print_json(envelope("approx", std::move(params), std::move(result), status));
    } else {
        std::cout << "sequence " << kind << "  target " << lp::to_decimal(sel.target, 20) << "  eps " << a.eps
                  << "  precision " << bits << " bits\n";
        std::cout << "terms " << sel.terms.size() << '\n';
        std::cout << "      index  sign  value\n";
        for (const auto &t : sel.terms) {
            std::cout << std::setw(11) << t.index << "  " << (t.sign > 0 ? "   +" : "   -") << "  "
                      << lp::to_decimal(t.value, 20) << '\n';
        }
        std::cout << "achieved " << lp::to_decimal(sel.achieved, 20) << '\n';
        std::cout << "residual " << lp::to_decimal(sel.residual, 6) << "  (recomputed at " << 2 * bits
                  << " bits: " << lp::to_decimal(check, 6) << ")\n";
        std::cout << "status " << status << '\n';
    }
    return ok ? exit_ok : exit_resource;
}

int run_approx(const ApproxArgs &a)
{
    if (!(a.eps > 0)) {
        throw lp::domain_error("--eps must be positive");
    }
    const auto colon = a.sequence.find(':');
    const std::string kind = a.sequence.substr(0, colon);
    const std::optional<std::string> arg =
        colon == std::string::npos ? std::nullopt : std::optional<std::string>(a.sequence.substr(colon + 1));

    auto need_target = [&]() {
        if (!a.target) {
            throw lp::domain_error("--target is required for sequence '" + kind + "'");
        }
        return *a.target;
    };
    auto need_arg = [&](const char *what) {
        if (!arg) {
            throw lp::domain_error("sequence '" + kind + "' needs a parameter, e.g. " + kind + ":" + what);
        }
        return parse_real(*arg, kind + " parameter");
    };

    const unsigned bits = working_precision(a.eps, a.max_terms);
    lp::ScopedPrecision precision(bits);
    const lp::HpReal eps(a.eps);
    lp::json params = {{"eps", a.eps}, {"max_terms", a.max_terms}};

    // Runs one construction and reports it, printing the partial result on
    // convergence failure.
    auto attempt = [&](const std::string &label, auto &&make, const auto &value_of) {
        try {
            const auto sel = make();
            return report_selection(a, label, params, sel, value_of, bits, true);
        } catch (const lp::convergence_failure<lp::HpReal> &e) {
            std::cerr << "convergence failure: " << e.what() << '\n';
            report_selection(a, label, params, e.partial(), value_of, bits, false);
            return exit_resource;
        }
    };

    if (kind == "harmonic") {
        const double c = need_target();
        params["target"] = c;
        const lp::SequenceSpec spec{lp::Harmonic{}};
        return attempt(
            "harmonic", [&] { return lp::greedy_subset<lp::HpReal>(spec, lp::HpReal(c), eps, a.max_terms); },
            lp::sequence_value(spec));
    }
    if (kind == "ln") {
        const double c = need_target();
        params["target"] = c;
        return attempt(
            "ln", [&] { return lp::ln_expand<lp::HpReal>(lp::HpReal(c), eps, a.max_terms); }, lp::integer_log_value());
    }
    if (kind == "power") {
        const double delta = need_arg("0.5");
        const double c = need_target();
        params["delta"] = delta;
        params["target"] = c;
        lp::check_power_delta_exponent(delta);
        return attempt(
            "power", [&] { return lp::expand_power_delta<lp::HpReal>(delta, lp::HpReal(c), eps, a.max_terms); },
            lp::integer_power_value(delta));
    }
    if (kind == "prime-power") {
        const double delta = need_arg("0.5");
        const double c = need_target();
        params["delta"] = delta;
        params["target"] = c;
        return attempt(
            "prime-power",
            [&] { return lp::prime_power_expand<lp::HpReal>(delta, lp::HpReal(c), eps, a.max_terms); },
            lp::integer_power_value(delta));
    }
    if (kind == "shifted") {
        const double r = need_arg("1");
        const double c = need_target();
        params["r"] = r;
        params["base"] = a.base;
        params["target"] = c;
        const lp::SequenceSpec base = parse_base(a.base);
        return attempt(
            "shifted", [&] { return lp::signed_approx<lp::HpReal>(base, r, lp::HpReal(c), eps, a.max_terms); },
            lp::sequence_value(lp::shifted(r, base)));
    }
    if (kind == "totient") {
        const double t = arg ? parse_real(*arg, "totient parameter") : need_target();
        params["target"] = t;
        const lp::SequenceSpec spec{lp::TotientLog{}};
        try {
            const auto res = lp::totient_approx<lp::HpReal>(t, a.eps, a.max_terms);
            std::vector<std::int64_t> primes(res.primes.begin(), res.primes.end());
            const lp::HpReal ratio = lp::to_hp(res.ratio);
            const lp::Rational gap = abs(res.ratio - lp::to_rational(t));
            const bool ok = gap < lp::to_rational(a.eps);
            lp::json summary = {{"primes", primes},
                                {"ratio", res.ratio.str()},
                                {"ratio_decimal", lp::to_decimal(ratio, 20)},
                                {"abs_error", lp::to_decimal(lp::to_hp(gap), 6)},
                                {"n", res.composite ? lp::json(res.composite->str()) : lp::json(nullptr)}};
            if (a.format.json()) {
                std::ostringstream eps_text;
                eps_text << std::setprecision(17) << a.eps;
                lp::json result = summary;
                result["log_selection"] = lp::to_json(res.log_selection, params, eps_text.str());
                result["precision_bits"] = bits;
                params["sequence"] = a.sequence;
                print_json(envelope("approx", params, std::move(result), ok ? "ok" : "residual_check_failed"));
            } else {
                std::cout << "primes " << join_ints(primes) << '\n';
                std::cout << "phi(n)/n = " << res.ratio.str() << " = " << lp::to_decimal(ratio, 20) << '\n';
                std::cout << "|ratio - t| = " << lp::to_decimal(lp::to_hp(gap), 6) << "  (eps " << a.eps << ")\n";
                if (res.composite) {
                    std::cout << "n = " << res.composite->str() << '\n';
                }
                std::cout << "status " << (ok ? "ok" : "residual_check_failed") << '\n';
            }
            return ok ? exit_ok : exit_resource;
        } catch (const lp::convergence_failure<lp::HpReal> &e) {
            std::cerr << "convergence failure: " << e.what() << '\n';
            report_selection(a, "totient-log", params, e.partial(), lp::sequence_value(spec), bits, false);
            return exit_resource;
        }
    }
    throw lp::domain_error("unknown sequence '" + a.sequence
                           + "' (expected harmonic, ln, power:<d>, totient[:<t>], prime-power:<d>, shifted:<r>)");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"P-sequences, Prouhet-Tarry-Escott pairs and dense signed expansions"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"text", "json"};

    PseqArgs pseq;
    auto *pseq_cmd = app.add_subcommand("pseq", "print the n-th P-sequence");
    pseq_cmd->add_option("--n", pseq.n, "sequence index (>= 1)")->required();
    pseq_cmd->add_option("--max-n", pseq.max_n, "largest index allowed")->capture_default_str();
    pseq_cmd->add_option("--format", pseq.format.value, "text or json")->check(CLI::IsMember(formats));

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "check vanishing and degree laws of F_{n,s} exactly");
    verify_cmd->add_option("--n-max", verify.n_max, "check n = 1..n-max")->required();
    verify_cmd->add_option("--s-extra", verify.s_extra, "degree law for s = n..n+s-extra")->capture_default_str();
    verify_cmd->add_option("--format", verify.format.value, "text or json")->check(CLI::IsMember(formats));

    PteArgs pte;
    auto *pte_cmd = app.add_subcommand("pte", "generate and certify a Prouhet-Tarry-Escott pair");
    pte_cmd->add_option("--method", pte.method, "shift, conv or diff")->required();
    pte_cmd->add_option("--n", pte.n, "P-sequence index (m for diff)")->required();
    pte_cmd->add_option("--p", pte.p, "stride for shift")->capture_default_str();
    pte_cmd->add_option("--l", pte.l, "offset for shift")->capture_default_str();
    pte_cmd->add_option("--s-max", pte.s_max, "largest exponent reported (default degree + 1)");
    pte_cmd->add_option("--format", pte.format.value, "text or json")->check(CLI::IsMember(formats));

    ApproxArgs approx;
    auto *approx_cmd = app.add_subcommand("approx", "approximate a target by a signed finite sum");
    approx_cmd
        ->add_option("--sequence", approx.sequence,
                     "harmonic, ln, power:<d>, totient[:<t>], prime-power:<d>, shifted:<r>")
        ->required();
    approx_cmd->add_option("--target", approx.target, "real target (t for totient)");
    approx_cmd->add_option("--eps", approx.eps, "tolerance")->capture_default_str();
    approx_cmd->add_option("--max-terms", approx.max_terms, "term budget")->capture_default_str();
    approx_cmd->add_option("--base", approx.base, "base sequence for shifted: harmonic, ln-block, totient-log")
        ->capture_default_str();
    approx_cmd->add_option("--format", approx.format.value, "text or json")->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    try {
        if (*pseq_cmd) {
            return run_pseq(pseq);
        }
        if (*verify_cmd) {
            return run_verify(verify);
        }
        if (*pte_cmd) {
            return run_pte(pte);
        }
        return run_approx(approx);
    } catch (const lp::domain_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const lp::resource_error &e) {
        std::cerr << "resource bound: " << e.what() << '\n';
        return exit_resource;
    } catch (const lp::invariant_violation &e) {
        std::cerr << "certification failure: " << e.what() << '\n';
        return exit_bug;
    }
}
