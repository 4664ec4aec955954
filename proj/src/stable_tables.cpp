#include "perind/stable_tables.hpp"

#include "perind/error.hpp"
#include "perind/json_io.hpp"
#include "perind/numtheory.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace perind {

FinAbGroup::FinAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors))
{
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2)
            throw Error(ErrorKind::InvalidArgument,
                        "invariant factor " + factors_[i].get_str() + " is below 2");
        if (i > 0 && !divides(factors_[i - 1], factors_[i]))
            throw Error(ErrorKind::InvalidArgument, "invariant factors " + factors_[i - 1].get_str() +
                                                        ", " + factors_[i].get_str() +
                                                        " break the divisibility chain");
    }
}

FinAbGroup FinAbGroup::from_cyclic_orders(std::size_t free_rank, std::vector<Integer> orders)
{
    std::vector<Integer> finite;
    for (auto& o : orders) {
        if (o < 0) throw Error(ErrorKind::InvalidArgument, "negative cyclic order");
        if (o == 0)
            ++free_rank;
        else if (o > 1)
            finite.push_back(std::move(o));
    }
    // (a, b) -> (gcd, lcm) on every pair leaves a divisibility chain.
    for (std::size_t i = 0; i < finite.size(); ++i)
        for (std::size_t j = i + 1; j < finite.size(); ++j) {
            Integer g = gcd(finite[i], finite[j]);
            Integer l = lcm(finite[i], finite[j]);
            finite[i] = std::move(g);
            finite[j] = std::move(l);
        }
    std::erase_if(finite, [](const Integer& x) { return x == 1; });
    return FinAbGroup(free_rank, std::move(finite));
}

Integer FinAbGroup::torsion_order() const
{
    Integer out = 1;
    for (const auto& d : factors_) out *= d;
    return out;
}

std::string FinAbGroup::to_string() const
{
    if (is_trivial()) return "0";
    std::ostringstream os;
    const char* sep = "";
    if (free_rank_ == 1) {
        os << "Z";
        sep = " + ";
    } else if (free_rank_ > 1) {
        os << "Z^" << free_rank_;
        sep = " + ";
    }
    for (const auto& d : factors_) {
        os << sep << "Z/" << d.get_str();
        sep = " + ";
    }
    return os.str();
}

Integer exponent(const FinAbGroup& g)
{
    if (!g.is_finite())
        throw Error(ErrorKind::InfiniteExponent, "group " + g.to_string() + " has infinite exponent");
    return g.invariant_factors().empty() ? Integer(1) : g.invariant_factors().back();
}

Integer r_primary_part(const Integer& n, const Integer& r)
{
    if (n <= 0 || r <= 0) throw Error(ErrorKind::InvalidArgument, "r-primary part needs positive integers");
    Integer rest = n;
    for (Integer g = gcd(rest, r); g > 1; g = gcd(rest, g))
        rest /= g;
    return n / rest;
}

Integer r_primary_exponent(const FinAbGroup& g, const Integer& r)
{
    Integer out = 1;
    for (const auto& d : g.invariant_factors())
        out = lcm(out, r_primary_part(d, r));
    return out;
}

std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::FormulaRange: return "formula-range";
    case Provenance::ShippedTable: return "shipped-table";
    case Provenance::Configured: return "configured";
    case Provenance::Arithmetic: return "arithmetic";
    case Provenance::Cohomology: return "cohomology";
    case Provenance::Unknown: return "unknown";
    }
    return "unknown";
}

Provenance provenance_from_string(std::string_view name)
{
    for (auto p : {Provenance::FormulaRange, Provenance::ShippedTable, Provenance::Configured,
                   Provenance::Arithmetic, Provenance::Cohomology, Provenance::Unknown})
        if (to_string(p) == name) return p;
    throw Error(ErrorKind::MalformedInput, "unknown provenance tag '" + std::string(name) + "'");
}

ExponentEntry ExponentEntry::unknown(std::string why)
{
    return ExponentEntry{std::nullopt, Provenance::Unknown, std::move(why), false};
}

ExponentEntry ExponentEntry::of(Integer v, Provenance p, std::string source)
{
    return ExponentEntry{std::move(v), p, std::move(source), false};
}

namespace {

// Exponents of pi_j^s(BZ/2), j = 1..5: Z/2, Z/2, Z/8, Z/2, 0.
constexpr std::array<unsigned, 5> kBZ2Exponents = {2, 2, 8, 2, 1};

int provenance_rank(Provenance p)
{
    switch (p) {
    case Provenance::FormulaRange: return 0;
    case Provenance::ShippedTable: return 1;
    case Provenance::Configured: return 2;
    default: return 3;
    }
}

} // namespace

const StableTable& StableTable::shipped()
{
    static const StableTable table;
    return table;
}

void StableTable::configure(std::uint64_t r, std::uint64_t j, FinAbGroup group)
{
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "table entries need r >= 2");
    if (j < 1) throw Error(ErrorKind::InvalidArgument, "table entries need j >= 1");
    if (!group.is_finite())
        throw Error(ErrorKind::InvalidArgument, "pi_j^s(BZ/r) is finite; got " + group.to_string());
    if (!prime_support_within(group.torsion_order(), Integer(r)))
        throw Error(ErrorKind::InvalidArgument, "configured group " + group.to_string() +
                                                    " is not " + std::to_string(r) + "-primary");
    configured_[{r, j}] = std::move(group);
}

std::optional<ExponentEntry> StableTable::configured_entry(std::uint64_t r, std::uint64_t j) const
{
    auto it = configured_.find({r, j});
    if (it == configured_.end()) return std::nullopt;
    return ExponentEntry::of(exponent(it->second), Provenance::Configured,
                             "configured pi_" + std::to_string(j) + "^s(BZ/" + std::to_string(r) +
                                 ") = " + it->second.to_string());
}

ExponentEntry StableTable::prime_power_entry(std::uint64_t prime, unsigned exponent,
                                             std::uint64_t j) const
{
    const Integer r = pow(Integer(prime), exponent);
    const std::uint64_t rr = to_u64(r);
    const std::string name = "pi_" + std::to_string(j) + "^s(BZ/" + r.get_str() + ")";
    if (j < 2 * prime - 2) {
        if (j % 2 == 1)
            return ExponentEntry::of(r, Provenance::FormulaRange, name + " = Z/" + r.get_str() + " (odd j < 2l-2)");
        return ExponentEntry::of(1, Provenance::FormulaRange, name + " = 0 (even j < 2l-2)");
    }
    if (rr == 2 && j <= kBZ2Exponents.size()) {
        const unsigned e = kBZ2Exponents[j - 1];
        return ExponentEntry::of(e, Provenance::ShippedTable,
                                 name + (e == 1 ? " = 0" : " has exponent " + std::to_string(e)));
    }
    if (auto c = configured_entry(rr, j)) return *c;
    return ExponentEntry::unknown(name + " outside the formula range and the shipped table");
}

ExponentEntry StableTable::exponent_BZr(std::uint64_t r, std::uint64_t j) const
{
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "stable exponents need r >= 2");
    if (j < 1) throw Error(ErrorKind::InvalidArgument, "stable exponents need j >= 1");
    const Factorization f = factorize(r);
    if (f.is_prime_power()) return prime_power_entry(f.pairs()[0].prime, f.pairs()[0].exponent, j);

    if (auto c = configured_entry(r, j)) return *c;
    Integer product = 1;
    Provenance weakest = Provenance::FormulaRange;
    std::string source = "product over prime-power components:";
    for (const auto& [p, e] : f.pairs()) {
        ExponentEntry part = prime_power_entry(p, e, j);
        if (!part.known()) {
            ExponentEntry out = ExponentEntry::unknown("component " + part.source);
            out.composite = true;
            return out;
        }
        product *= *part.value;
        if (provenance_rank(part.provenance) > provenance_rank(weakest)) weakest = part.provenance;
        source += " [" + part.source + "]";
    }
    ExponentEntry out = ExponentEntry::of(product, weakest, source);
    out.composite = true;
    return out;
}

StableTable StableTable::from_json(const nlohmann::json& doc)
{
    const nlohmann::json* body = &doc;
    if (doc.is_object() && doc.contains("result") && doc["result"].is_object()) body = &doc["result"];
    if (!body->is_object() || !body->contains("stable_table") || !(*body)["stable_table"].is_array())
        throw Error(ErrorKind::MalformedInput, "table extension needs a \"stable_table\" array");
    StableTable table;
    try {
        for (const auto& row : (*body)["stable_table"]) {
            std::vector<Integer> factors;
            for (const auto& f : row.at("invariant_factors")) factors.push_back(integer_from_json(f));
            table.configure(row.at("r").get<std::uint64_t>(), row.at("j").get<std::uint64_t>(),
                            FinAbGroup(0, std::move(factors)));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("table extension: ") + e.what());
    }
    return table;
}

StableTable StableTable::load(const std::string& path)
{
    return from_json(read_json_file(path));
}

ExponentEntry stable_exponent_BZr(std::uint64_t r, std::uint64_t j)
{
    return StableTable::shipped().exponent_BZr(r, j);
}

} // namespace perind
