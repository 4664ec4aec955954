#pragma once

#include "perind/integer.hpp"
#include "perind/stable_tables.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perind {

/// Direction of a divisibility bound. Upper: "subject divides bound".
/// Lower: "bound divides subject".
enum class BoundKind { Upper, Lower };

std::string_view to_string(BoundKind k);
BoundKind bound_kind_from_string(std::string_view name);

// Tags naming the result each report rests on.
namespace theorem {
inline constexpr std::string_view StableExponentProduct = "stable-exponent-product";
inline constexpr std::string_view PrimePowerPeriod = "prime-power-period";
inline constexpr std::string_view SkeletonObstruction = "skeleton-obstruction";
inline constexpr std::string_view KuDifferentials = "ku-ahss-differentials";
inline constexpr std::string_view DimensionAtMostFour = "dimension-at-most-4";
inline constexpr std::string_view BestOf = "gcd-of-upper-bounds";
inline constexpr std::string_view PuEtaOrder = "pu-eta-power-order";
inline constexpr std::string_view PrimesAgree = "period-index-primes-agree";
} // namespace theorem

struct BoundFactor {
    std::uint64_t index;
    ExponentEntry entry;

    bool operator==(const BoundFactor&) const = default;
};

struct BoundReport {
    /// Empty when some factor is Unknown; partial_product then holds the
    /// product of the known factors.
    std::optional<Integer> bound;
    Integer partial_product = 1;
    BoundKind kind = BoundKind::Upper;
    std::string theorem;
    /// "ind_K" or "ind": the quantity the statement is about.
    std::string subject = "ind_K";
    std::uint64_t period = 0;
    std::vector<BoundFactor> factors;
    std::vector<std::string> assumptions;
    /// Component reports a combined bound was assembled from.
    std::vector<BoundReport> contributors;

    bool known() const noexcept { return bound.has_value(); }

    /// "ind_K(alpha) divides 64", "4 divides ind(alpha)", or the unknown form.
    std::string statement() const;

    bool operator==(const BoundReport&) const = default;
};

/// Multiplies the factors into bound/partial_product. Any Unknown factor
/// leaves the bound empty.
void assemble(BoundReport& report);

/// ind_K | prod_{j=1}^{d-1} e_j with e_j the exponent of pi_j^s(BZ/r).
BoundReport upper_bound_product(std::uint64_t d, std::uint64_t r,
                                const StableTable& table = StableTable::shipped());

/// ind_K | (l^k)^[d/2]; ErrorKind::HypothesisViolated unless 2l > d+1.
BoundReport upper_bound_prime_power(std::uint64_t d, std::uint64_t ell, std::uint64_t k);

/// n(r, [(a-1)/2]) | ind(gamma_a) for the class on sk_{a+1} K(Z/r,2); a >= 3.
BoundReport lower_bound_skeleton(std::uint64_t r, std::uint64_t a);

/// Finite complexes of dimension at most 4 have per = ind.
constexpr bool period_equals_index_in_dimension(std::uint64_t d) { return d <= 4; }

/// Upper bound r from the low-dimension collapse; d must be at most 4.
BoundReport dimension_at_most_four_bound(std::uint64_t d, std::uint64_t r);

/// Order of eta^s in H^{2s}(PU_n; Z), which is m(n, s).
std::uint64_t pu_eta_power_order(std::uint64_t n, std::uint64_t s);

/// o_s = ord(alpha^s) for s = 1..S, with o_1 = r and every o_s | r.
class OrdersProfile {
public:
    explicit OrdersProfile(std::vector<std::uint64_t> orders);

    static OrdersProfile constant(std::uint64_t r, std::size_t length);

    std::uint64_t period() const noexcept { return orders_.front(); }
    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    std::size_t length() const noexcept { return orders_.size(); }
    bool is_constant() const noexcept;

private:
    std::vector<std::uint64_t> orders_;
};

/// True iff o_s | m(N, s) for every s; false rules out degree-N
/// representatives.
bool degree_admissible(std::uint64_t degree, const OrdersProfile& profile);

/// Smallest admissible N <= cap, searched exhaustively. For a constant
/// profile the result is checked to be a multiple of n(r, S).
std::optional<std::uint64_t> min_admissible_degree(const OrdersProfile& profile, std::uint64_t cap);

/// per | ind and both have the same prime divisors.
bool check_per_ind_consistency(const Integer& per, const Integer& ind);

} // namespace perind
