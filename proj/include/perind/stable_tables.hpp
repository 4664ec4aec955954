#pragma once

#include "perind/integer.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perind {

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k with
/// d_1 | d_2 | ... | d_k and every d_i >= 2.
class FinAbGroup {
public:
    FinAbGroup() = default;
    FinAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors);

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    /// Orders equal to 1 are dropped; 0 counts as a free summand.
    static FinAbGroup from_cyclic_orders(std::size_t free_rank, std::vector<Integer> orders);
    static FinAbGroup cyclic(const Integer& n) { return from_cyclic_orders(0, {n}); }
    static FinAbGroup free(std::size_t rank) { return FinAbGroup(rank, {}); }

    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_trivial() const noexcept { return free_rank_ == 0 && factors_.empty(); }

    /// Order of the torsion subgroup.
    Integer torsion_order() const;

    /// "0", "Z", "Z^2 + Z/2 + Z/8", ...
    std::string to_string() const;

    bool operator==(const FinAbGroup&) const = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> factors_;
};

/// Largest invariant factor; 1 for the trivial group. Throws
/// ErrorKind::InfiniteExponent when the group has a free part.
Integer exponent(const FinAbGroup& g);

/// Largest divisor of n whose prime factors all divide r.
Integer r_primary_part(const Integer& n, const Integer& r);

/// Exponent of the r-primary torsion subgroup. Free summands are ignored.
Integer r_primary_exponent(const FinAbGroup& g, const Integer& r);

enum class Provenance {
    FormulaRange,  // prime-power range formula for pi_j^s(BZ/l^n)
    ShippedTable,  // low stems of BZ/2
    Configured,    // user-supplied literature value
    Arithmetic,    // closed-form number theory (n(b,s), d_3 order)
    Cohomology,    // r-primary exponent of a computed cohomology group
    Unknown,
};

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view name);

/// One factor of a bound: a known positive value with its justification, or
/// Unknown.
struct ExponentEntry {
    std::optional<Integer> value;
    Provenance provenance = Provenance::Unknown;
    std::string source;
    /// Assembled from prime-power components of a composite period.
    bool composite = false;

    bool known() const noexcept { return value.has_value(); }

    static ExponentEntry unknown(std::string why);
    static ExponentEntry of(Integer v, Provenance p, std::string source);

    bool operator==(const ExponentEntry&) const = default;
};

/// Exponents e_j of pi_j^s(BZ/r). Lookup order for a prime power r = l^n:
/// the range formula for 0 < j < 2l-2, the shipped BZ/2 stems for j <= 5,
/// then configured entries. A composite r uses a configured entry for r
/// itself, else the product over its prime-power components.
class StableTable {
public:
    StableTable() = default;

    static const StableTable& shipped();

    /// Registers pi_j^s(BZ/r) = group. The group must be finite and
    /// r-primary.
    void configure(std::uint64_t r, std::uint64_t j, FinAbGroup group);

    ExponentEntry exponent_BZr(std::uint64_t r, std::uint64_t j) const;

    std::size_t configured_count() const noexcept { return configured_.size(); }

    /// Accepts {"stable_table": [{"r":R,"j":J,"invariant_factors":[...]}...]},
    /// optionally wrapped in an output envelope's "result" member.
    static StableTable from_json(const nlohmann::json& doc);
    static StableTable load(const std::string& path);

private:
    ExponentEntry prime_power_entry(std::uint64_t prime, unsigned exponent, std::uint64_t j) const;
    std::optional<ExponentEntry> configured_entry(std::uint64_t r, std::uint64_t j) const;

    std::map<std::pair<std::uint64_t, std::uint64_t>, FinAbGroup> configured_;
};

/// Entry from the shipped table only.
ExponentEntry stable_exponent_BZr(std::uint64_t r, std::uint64_t j);

} // namespace perind
