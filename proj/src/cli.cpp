#include "perind/cli.hpp"

#include "perind/ahss.hpp"
#include "perind/bounds.hpp"
#include "perind/error.hpp"
#include "perind/homology.hpp"
#include "perind/json_io.hpp"
#include "perind/numtheory.hpp"
#include "perind/report_json.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>

namespace perind::cli {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::uint64_t>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

void print_report(std::ostream& out, const BoundReport& r, const std::string& indent = "")
{
    out << indent << r.statement() << "  [" << r.theorem << "]\n";
    out << indent << "  period: " << r.period << "\n";
    for (const auto& f : r.factors) {
        out << indent << "  factor " << f.index << ": "
            << (f.entry.known() ? f.entry.value->get_str() : std::string("unknown")) << "  ("
            << to_string(f.entry.provenance) << (f.entry.composite ? ", composite" : "") << ": " << f.entry.source
            << ")\n";
    }
    for (const auto& a : r.assumptions) out << indent << "  assumes: " << a << "\n";
    for (const auto& c : r.contributors) {
        out << indent << "  contributor:\n";
        print_report(out, c, indent + "    ");
    }
}

std::vector<std::string> citations_of(const BoundReport& r)
{
    std::vector<std::string> out{r.theorem};
    for (const auto& c : r.contributors)
        for (auto& t : citations_of(c))
            if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return out;
}

// Human and JSON renderings of one command's result.
struct Outcome {
    OutputEnvelope envelope;
    std::function<void(std::ostream&)> human;
};

Outcome value_outcome(std::string command, json inputs, const Integer& value, std::vector<std::string> citations)
{
    Outcome o;
    o.envelope = {std::move(command), std::move(inputs), {{"value", integer_to_json(value)}}, std::move(citations)};
    o.human = [value](std::ostream& out) { out << value.get_str() << "\n"; };
    return o;
}

Outcome report_outcome(std::string command, json inputs, const BoundReport& r)
{
    Outcome o;
    o.envelope = {std::move(command), std::move(inputs), to_json(r), citations_of(r)};
    o.human = [r](std::ostream& out) { print_report(out, r); };
    return o;
}

json groups_json(const std::vector<CohomologyGroup>& gs)
{
    json arr = json::array();
    for (const auto& g : gs) arr.push_back(to_json(g));
    return arr;
}

ChainComplex load_complex(const std::string& file, const std::string& fixture)
{
    if (!fixture.empty()) return fixtures::by_name(fixture);
    return ChainComplex::load(file);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact period-index bounds for Brauer classes on finite CW-complexes", "perind"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit a JSON output envelope");

    std::uint64_t a = 0, b = 0, s = 0, p = 0;
    auto* m_cmd = app.add_subcommand("m", "m(A,S) = gcd of binom(A,1..S)");
    m_cmd->add_option("A", a)->required();
    m_cmd->add_option("S", s)->required();
    bool use_oracle = false;
    m_cmd->add_flag("--oracle", use_oracle, "Compute from literal binomials instead of the closed form");

    auto* n_cmd = app.add_subcommand("n", "n(B,S) = prod p^(n_p + [log_p S])");
    n_cmd->add_option("B", b)->required();
    n_cmd->add_option("S", s)->required();

    auto* kummer_cmd = app.add_subcommand("kummer", "Carries when adding A and B in base P");
    kummer_cmd->add_option("P", p)->required();
    kummer_cmd->add_option("A", a)->required();
    kummer_cmd->add_option("B", b)->required();

    auto* factor_cmd = app.add_subcommand("factorize", "Prime factorization of A");
    factor_cmd->add_option("A", a)->required();

    std::uint64_t dim = 0, period = 0, skeleton = 0, degree = 0, cap = 0, index = 0;
    std::string table_file;
    bool prime_power = false;
    auto* upper_cmd = app.add_subcommand("upper-bound", "ind_K divides prod e_j (or per^[d/2] with --prime-power)");
    upper_cmd->add_option("--dim", dim, "Dimension d")->required();
    upper_cmd->add_option("--period", period, "Period r")->required();
    upper_cmd->add_flag("--prime-power", prime_power, "Use the per^[d/2] bound (needs r = l^k with 2l > d+1)");
    upper_cmd->add_option("--table", table_file, "Stable-stem table extension (JSON)");

    auto* lower_cmd = app.add_subcommand("lower-bound", "n(r,[(a-1)/2]) divides ind(gamma_a) on sk_{a+1} K(Z/r,2)");
    lower_cmd->add_option("--period", period)->required();
    lower_cmd->add_option("--skeleton", skeleton, "Skeleton parameter a >= 3")->required();

    auto* sandwich_cmd = app.add_subcommand("sandwich", "Lower and upper bounds for gamma_a, checked for divisibility");
    sandwich_cmd->add_option("--period", period)->required();
    sandwich_cmd->add_option("--skeleton", skeleton)->required();
    sandwich_cmd->add_option("--table", table_file);

    auto* pu_cmd = app.add_subcommand("pu-order", "Order of eta^S in H^{2S}(PU_N; Z)");
    pu_cmd->add_option("N", a)->required();
    pu_cmd->add_option("S", s)->required();

    std::vector<std::uint64_t> orders;
    auto* adm_cmd = app.add_subcommand("admissible", "Can a degree-N algebra carry these cup-power orders?");
    adm_cmd->add_option("--degree", degree)->required();
    adm_cmd->add_option("--orders", orders, "o_1,o_2,... with o_s = ord(alpha^s)")->required()->delimiter(',');

    auto* min_cmd = app.add_subcommand("min-degree", "Smallest admissible degree up to a cap");
    min_cmd->add_option("--orders", orders)->required()->delimiter(',');
    min_cmd->add_option("--cap", cap)->required();

    auto* cons_cmd = app.add_subcommand("consistency", "per | ind with matching prime divisors");
    cons_cmd->add_option("--period", period)->required();
    cons_cmd->add_option("--index", index)->required();

    auto* stable_cmd = app.add_subcommand("stable-exponent", "Exponent of pi_j^s(BZ/r)");
    stable_cmd->add_option("--period", period)->required();
    stable_cmd->add_option("--degree", degree)->required();
    stable_cmd->add_option("--table", table_file);

    std::string file, fixture;
    std::optional<std::uint64_t> modulus, which_degree;
    auto* coh_cmd = app.add_subcommand("cohomology", "Cellular cohomology of a chain complex");
    coh_cmd->add_option("FILE", file, "ChainComplex JSON");
    coh_cmd->add_option("--fixture", fixture, "Built-in complex: bz<r>-skel<D>, sphere<n>, rp<n>");
    coh_cmd->add_option("--mod", modulus, "Coefficients Z/R instead of Z");
    coh_cmd->add_option("--degree", which_degree);

    auto* bock_cmd = app.add_subcommand("bockstein", "Bockstein H^K(X;Z/R) -> H^{K+1}(X;Z)");
    bock_cmd->add_option("FILE", file);
    bock_cmd->add_option("--fixture", fixture);
    bock_cmd->add_option("--degree", degree)->required();
    bock_cmd->add_option("--mod", modulus)->required();

    std::string shape_file;
    std::optional<std::uint64_t> ahss_period;
    auto* ahss_cmd = app.add_subcommand("ahss-bound", "Spectral-sequence upper bound from integral cohomology");
    ahss_cmd->add_option("FILE", file);
    ahss_cmd->add_option("--fixture", fixture);
    ahss_cmd->add_option("--shape", shape_file, "TwistedShape JSON");
    ahss_cmd->add_option("--period", ahss_period);
    ahss_cmd->add_option("--table", table_file);

    std::string fixture_action;
    auto* fix_cmd = app.add_subcommand("fixtures", "Emit built-in complexes as JSON");
    fix_cmd->add_option("ACTION", fixture_action)->required()->check(CLI::IsMember({"emit"}));
    fix_cmd->add_option("NAME", fixture)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto usage = [&](const std::string& msg) {
        err << "usage error: " << msg << "\n";
        return 2;
    };

    try {
        const StableTable table = table_file.empty() ? StableTable() : StableTable::load(table_file);
        Outcome o;
        if (m_cmd->parsed()) {
            const Integer v = use_oracle ? m_oracle(a, s) : Integer(m_closed(a, s));
            o = value_outcome("m", {{"a", a}, {"s", s}, {"oracle", use_oracle}}, v, {"binomial-gcd"});
        } else if (n_cmd->parsed()) {
            o = value_outcome("n", {{"b", b}, {"s", s}}, n_func(b, s), {"forced-degree-divisor"});
        } else if (kummer_cmd->parsed()) {
            o = value_outcome("kummer", {{"p", p}, {"a", a}, {"b", b}}, kummer_carries(p, a, b), {"kummer-carries"});
        } else if (factor_cmd->parsed()) {
            const Factorization f = factorize(a);
            json pairs = json::array();
            std::string text;
            for (const auto& [q, e] : f.pairs()) {
                pairs.push_back({q, e});
                text += (text.empty() ? "" : " * ") + std::to_string(q) + (e > 1 ? "^" + std::to_string(e) : "");
            }
            o.envelope = {"factorize", {{"a", a}}, {{"pairs", pairs}}, {}};
            o.human = [text](std::ostream& os) { os << (text.empty() ? "1" : text) << "\n"; };
        } else if (upper_cmd->parsed()) {
            BoundReport r;
            if (prime_power) {
                if (period < 2) throw Error(ErrorKind::InvalidArgument, "period must be at least 2");
                const Factorization f = factorize(period);
                if (!f.is_prime_power())
                    throw Error(ErrorKind::HypothesisViolated, std::to_string(period) + " is not a prime power");
                r = upper_bound_prime_power(dim, f.pairs()[0].prime, f.pairs()[0].exponent);
            } else {
                r = upper_bound_product(dim, period, table);
            }
            o = report_outcome("upper-bound", {{"dim", dim}, {"period", period}, {"prime_power", prime_power}}, r);
        } else if (lower_cmd->parsed()) {
            o = report_outcome("lower-bound", {{"period", period}, {"skeleton", skeleton}},
                               lower_bound_skeleton(period, skeleton));
        } else if (sandwich_cmd->parsed()) {
            const BoundReport lower = lower_bound_skeleton(period, skeleton);
            const BoundReport upper = upper_bound_product(skeleton + 1, period, table);
            std::optional<bool> holds;
            if (upper.known()) holds = divides(*lower.bound, *upper.bound);
            if (holds == false)
                throw Error(ErrorKind::InvariantViolation, "sandwich violated: " + lower.bound->get_str() +
                                                               " does not divide " + upper.bound->get_str());
            o.envelope = {"sandwich",
                          {{"period", period}, {"skeleton", skeleton}, {"dim", skeleton + 1}},
                          {{"lower", to_json(lower)},
                           {"upper", to_json(upper)},
                           {"lower_divides_upper", holds ? json(*holds) : json(nullptr)}},
                          {lower.theorem, upper.theorem}};
            o.human = [lower, upper, holds](std::ostream& os) {
                print_report(os, lower);
                print_report(os, upper);
                if (holds)
                    os << "lower bound " << lower.bound->get_str() << " divides upper bound "
                       << upper.bound->get_str() << "\n";
                else
                    os << "upper bound unknown; divisibility not checked\n";
            };
        } else if (pu_cmd->parsed()) {
            o = value_outcome("pu-order", {{"n", a}, {"s", s}}, pu_eta_power_order(a, s), {"pu-eta-power-order"});
        } else if (adm_cmd->parsed()) {
            const OrdersProfile profile(orders);
            const bool ok = degree_admissible(degree, profile);
            o.envelope = {"admissible", {{"degree", degree}, {"orders", orders}}, {{"admissible", ok}},
                          {"pu-factorization-obstruction"}};
            o.human = [=](std::ostream& os) {
                os << (ok ? "admissible" : "not admissible") << ": degree " << degree << " vs orders " << join(orders)
                   << "\n";
            };
        } else if (min_cmd->parsed()) {
            const OrdersProfile profile(orders);
            const auto n = min_admissible_degree(profile, cap);
            json result = {{"degree", n ? json(*n) : json(nullptr)}};
            if (profile.is_constant())
                result["forced_divisor"] = integer_to_json(n_func(profile.period(), profile.length()));
            o.envelope = {"min-degree", {{"orders", orders}, {"cap", cap}}, result,
                          {"pu-factorization-obstruction", "forced-degree-divisor"}};
            o.human = [=](std::ostream& os) {
                if (n)
                    os << *n << "\n";
                else
                    os << "none found up to " << cap << "\n";
            };
        } else if (cons_cmd->parsed()) {
            const bool ok = check_per_ind_consistency(period, index);
            o.envelope = {"consistency", {{"period", period}, {"index", index}}, {{"consistent", ok}},
                          {std::string(theorem::PrimesAgree)}};
            o.human = [=](std::ostream& os) {
                os << (ok ? "consistent" : "inconsistent") << ": per=" << period << ", ind=" << index << "\n";
            };
        } else if (stable_cmd->parsed()) {
            const ExponentEntry e = table.exponent_BZr(period, degree);
            o.envelope = {"stable-exponent", {{"period", period}, {"degree", degree}}, to_json(e),
                          {"stable-stems-of-BZr"}};
            o.human = [e](std::ostream& os) {
                os << (e.known() ? e.value->get_str() : "unknown") << "  (" << to_string(e.provenance) << ": "
                   << e.source << ")\n";
            };
        } else if (coh_cmd->parsed()) {
            if (file.empty() == fixture.empty()) return usage("cohomology needs exactly one of FILE or --fixture");
            const ChainComplex c = load_complex(file, fixture);
            std::vector<CohomologyGroup> groups;
            std::vector<std::size_t> degrees;
            if (which_degree) {
                degrees.push_back(*which_degree);
            } else {
                for (std::size_t k = 0; k <= c.top_dim(); ++k) degrees.push_back(k);
            }
            for (auto k : degrees)
                groups.push_back(modulus ? cohomology_mod(c, k, Integer(*modulus)) : cohomology_Z(c, k));
            json inputs = {{"complex", c.name()}};
            if (modulus) inputs["mod"] = *modulus;
            if (which_degree) inputs["degree"] = *which_degree;
            o.envelope = {"cohomology", inputs, {{"groups", groups_json(groups)}}, {"cellular-cohomology"}};
            const std::string coeff = modulus ? "Z/" + std::to_string(*modulus) : "Z";
            o.human = [groups, coeff, name = c.name()](std::ostream& os) {
                for (const auto& g : groups)
                    os << "H^" << g.degree << "(" << name << "; " << coeff << ") = " << g.group.to_string() << "\n";
            };
        } else if (bock_cmd->parsed()) {
            if (file.empty() == fixture.empty()) return usage("bockstein needs exactly one of FILE or --fixture");
            const ChainComplex c = load_complex(file, fixture);
            const BocksteinMap beta = bockstein(c, degree, Integer(*modulus));
            json matrix = json::array();
            for (std::size_t i = 0; i < beta.matrix.rows(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < beta.matrix.cols(); ++j) row.push_back(integer_to_json(beta.matrix(i, j)));
                matrix.push_back(std::move(row));
            }
            const bool finite = beta.source.group.group.is_finite();
            json result = {{"source", to_json(beta.source.group)},
                           {"target", to_json(beta.target.group)},
                           {"matrix", matrix},
                           {"zero", beta.is_zero()}};
            if (finite) {
                result["injective"] = beta.is_injective();
                result["surjective"] = beta.is_surjective();
            }
            o.envelope = {"bockstein", {{"complex", c.name()}, {"degree", degree}, {"mod", *modulus}}, result,
                          {"unreduced-bockstein"}};
            o.human = [beta, result, name = c.name()](std::ostream& os) {
                os << "beta: H^" << beta.degree << "(" << name << "; Z/" << beta.modulus.get_str()
                   << ") = " << beta.source.group.group.to_string() << "  ->  H^" << beta.degree + 1 << "(" << name
                   << "; Z) = " << beta.target.group.group.to_string() << "\n";
                os << "  matrix: " << result["matrix"].dump() << "\n";
                if (result.contains("injective"))
                    os << "  injective: " << (result["injective"].get<bool>() ? "yes" : "no")
                       << ", surjective: " << (result["surjective"].get<bool>() ? "yes" : "no") << "\n";
            };
        } else if (ahss_cmd->parsed()) {
            const int sources = int(!file.empty()) + int(!fixture.empty()) + int(!shape_file.empty());
            if (sources != 1) return usage("ahss-bound needs exactly one of FILE, --fixture or --shape");
            TwistedShape shape;
            if (!shape_file.empty()) {
                shape = TwistedShape::load(shape_file);
                if (ahss_period && *ahss_period != shape.period)
                    throw Error(ErrorKind::InvalidArgument, "--period disagrees with the shape's r");
            } else {
                if (!ahss_period) return usage("ahss-bound on a complex needs --period");
                shape = TwistedShape::from_complex(load_complex(file, fixture), *ahss_period);
            }
            const BoundReport best = best_upper_bound(shape, table);
            o = report_outcome("ahss-bound", {{"shape", shape.to_json()}}, best);
        } else if (fix_cmd->parsed()) {
            const ChainComplex c = fixtures::by_name(fixture);
            o.envelope = {"fixtures", {{"action", fixture_action}, {"name", fixture}}, c.to_json(), {}};
            o.human = [doc = c.to_json()](std::ostream& os) { os << doc.dump(2) << "\n"; };
        } else {
            return usage("no subcommand");
        }

        if (as_json)
            out << o.envelope.to_json().dump(2) << "\n";
        else
            o.human(out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace perind::cli
