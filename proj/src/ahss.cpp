#include "perind/ahss.hpp"

#include "perind/error.hpp"
#include "perind/json_io.hpp"
#include "perind/numtheory.hpp"

#include <algorithm>

namespace perind {

void TwistedShape::validate() const
{
    if (period < 2) throw Error(ErrorKind::InvalidArgument, "period must be at least 2");
    if (cohomology.size() != dimension + 1)
        throw Error(ErrorKind::InvalidArgument, "shape of dimension " + std::to_string(dimension) + " needs " +
                                                    std::to_string(dimension + 1) + " cohomology groups, got " +
                                                    std::to_string(cohomology.size()));
    if (cohomology.front().free_rank() < 1)
        throw Error(ErrorKind::InvalidArgument, "H^0 must have free rank at least 1");
}

TwistedShape TwistedShape::from_complex(const ChainComplex& c, std::uint64_t r)
{
    TwistedShape shape;
    shape.dimension = c.top_dim();
    shape.period = r;
    for (std::size_t k = 0; k <= c.top_dim(); ++k) shape.cohomology.push_back(cohomology_Z(c, k).group);
    shape.validate();
    return shape;
}

TwistedShape TwistedShape::from_json(const nlohmann::json& doc)
{
    TwistedShape shape;
    try {
        shape.dimension = doc.at("d").get<std::uint64_t>();
        shape.period = doc.at("r").get<std::uint64_t>();
        for (const auto& h : doc.at("h")) {
            std::vector<Integer> torsion;
            for (const auto& t : h.value("torsion", nlohmann::json::array())) torsion.push_back(integer_from_json(t));
            shape.cohomology.push_back(
                FinAbGroup::from_cyclic_orders(h.value("free_rank", std::size_t{0}), std::move(torsion)));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("shape: ") + e.what());
    }
    shape.validate();
    return shape;
}

TwistedShape TwistedShape::load(const std::string& path)
{
    return from_json(read_json_file(path));
}

nlohmann::json TwistedShape::to_json() const
{
    nlohmann::json h = nlohmann::json::array();
    for (const auto& g : cohomology) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& d : g.invariant_factors()) t.push_back(integer_to_json(d));
        h.push_back({{"free_rank", g.free_rank()}, {"torsion", std::move(t)}});
    }
    return {{"d", dimension}, {"r", period}, {"h", std::move(h)}};
}

BoundReport ku_ahss_upper_bound(const TwistedShape& shape)
{
    shape.validate();
    const std::uint64_t r = shape.period;
    BoundReport report;
    report.kind = BoundKind::Upper;
    report.theorem = theorem::KuDifferentials;
    report.period = r;
    if (shape.dimension < 3) {
        report.assumptions.emplace_back("H^3 vanishes below dimension 3, so alpha = 0");
        assemble(report);
        return report;
    }
    report.assumptions.emplace_back("alpha in H^3 has order exactly " + std::to_string(r));
    report.factors.push_back({3, ExponentEntry::of(r, Provenance::Arithmetic, "d_3(1) = alpha has order per(alpha)")});
    // KU has coefficients Z, 0, Z, 0, ... so only odd-length differentials
    // leave E^{0,0}; d_k lands in a subquotient of H^k(X; Z).
    for (std::uint64_t k = 5; k <= shape.dimension; k += 2) {
        const FinAbGroup& h = shape.cohomology[k];
        report.factors.push_back(
            {k, ExponentEntry::of(r_primary_exponent(h, Integer(r)), Provenance::Cohomology,
                                  "r-primary exponent of H^" + std::to_string(k) + " = " + h.to_string())});
    }
    assemble(report);
    return report;
}

BoundReport best_upper_bound(const TwistedShape& shape, const StableTable& table)
{
    shape.validate();
    const std::uint64_t d = shape.dimension;
    const std::uint64_t r = shape.period;

    BoundReport report;
    report.kind = BoundKind::Upper;
    report.theorem = theorem::BestOf;
    report.period = r;
    report.contributors.push_back(ku_ahss_upper_bound(shape));
    if (d >= 1) report.contributors.push_back(upper_bound_product(d, r, table));
    const Factorization f = factorize(r);
    if (f.is_prime_power() && 2 * f.pairs()[0].prime > d + 1 && d >= 1)
        report.contributors.push_back(upper_bound_prime_power(d, f.pairs()[0].prime, f.pairs()[0].exponent));
    if (d >= 3 && period_equals_index_in_dimension(d))
        report.contributors.push_back(dimension_at_most_four_bound(d, r));

    Integer g = 0;
    std::string source = "gcd of";
    for (const auto& c : report.contributors) {
        for (const auto& a : c.assumptions)
            if (std::find(report.assumptions.begin(), report.assumptions.end(), a) == report.assumptions.end())
                report.assumptions.push_back(a);
        if (!c.known()) {
            source += " [" + c.theorem + ": unknown]";
            continue;
        }
        g = gcd(g, *c.bound);
        source += " [" + c.theorem + ": " + c.bound->get_str() + "]";
    }
    report.factors.push_back({0, ExponentEntry::of(g, Provenance::Arithmetic, source)});
    assemble(report);
    return report;
}

} // namespace perind
