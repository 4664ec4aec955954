#include "perind/bounds.hpp"

#include "perind/error.hpp"
#include "perind/numtheory.hpp"

#include <algorithm>

namespace perind {

std::string_view to_string(BoundKind k)
{
    return k == BoundKind::Upper ? "upper" : "lower";
}

BoundKind bound_kind_from_string(std::string_view name)
{
    if (name == "upper") return BoundKind::Upper;
    if (name == "lower") return BoundKind::Lower;
    throw Error(ErrorKind::MalformedInput, "bound kind must be upper or lower, got '" + std::string(name) + "'");
}

std::string BoundReport::statement() const
{
    const std::string who = subject + "(alpha)";
    const std::string value = bound ? bound->get_str() : "an unknown multiple of " + partial_product.get_str();
    if (kind == BoundKind::Upper) return who + " divides " + value;
    return value + " divides " + who;
}

void assemble(BoundReport& report)
{
    Integer product = 1;
    bool all_known = true;
    for (const auto& f : report.factors) {
        if (f.entry.known())
            product *= *f.entry.value;
        else
            all_known = false;
        if (f.entry.composite &&
            std::find(report.assumptions.begin(), report.assumptions.end(), "composite-period-product-rule") ==
                report.assumptions.end())
            report.assumptions.emplace_back("composite-period-product-rule");
    }
    report.partial_product = product;
    if (all_known)
        report.bound = product;
    else
        report.bound.reset();
}

BoundReport upper_bound_product(std::uint64_t d, std::uint64_t r, const StableTable& table)
{
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "period must be at least 2");
    BoundReport report;
    report.kind = BoundKind::Upper;
    report.theorem = theorem::StableExponentProduct;
    report.period = r;
    for (std::uint64_t j = 1; j < d; ++j) report.factors.push_back({j, table.exponent_BZr(r, j)});
    assemble(report);
    return report;
}

BoundReport upper_bound_prime_power(std::uint64_t d, std::uint64_t ell, std::uint64_t k)
{
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
    if (!is_prime(ell)) throw Error(ErrorKind::InvalidArgument, std::to_string(ell) + " is not prime");
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "period exponent must be at least 1");
    if (2 * ell <= d + 1)
        throw Error(ErrorKind::HypothesisViolated,
                    "prime-power bound needs 2l > d+1; got l=" + std::to_string(ell) + ", d=" + std::to_string(d));
    const Integer period = pow(Integer(ell), static_cast<unsigned long>(k));

    BoundReport report;
    report.kind = BoundKind::Upper;
    report.theorem = theorem::PrimePowerPeriod;
    report.period = to_u64(period);
    // One factor per = l^k for each odd j < d; there are [d/2] of them.
    for (std::uint64_t j = 1; j < d; j += 2)
        report.factors.push_back({j, ExponentEntry::of(period, Provenance::FormulaRange,
                                                       "per(alpha) for odd j = " + std::to_string(j))});
    assemble(report);
    if (report.bound != pow(period, d / 2))
        throw Error(ErrorKind::InvariantViolation, "prime-power bound is not per^[d/2]");
    return report;
}

BoundReport lower_bound_skeleton(std::uint64_t r, std::uint64_t a)
{
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "period must be at least 2");
    if (a < 3) throw Error(ErrorKind::InvalidArgument, "skeleton parameter a must be at least 3");
    const std::uint64_t s = (a - 1) / 2;

    BoundReport report;
    report.kind = BoundKind::Lower;
    report.theorem = theorem::SkeletonObstruction;
    report.subject = "ind";
    report.period = r;
    const Factorization f = factorize(r);
    for (const auto& [p, n] : f.pairs()) {
        const unsigned e = n + floor_log(p, s);
        report.factors.push_back(
            {p, ExponentEntry::of(pow(Integer(p), e), Provenance::Arithmetic,
                                  std::to_string(p) + "^(" + std::to_string(n) + "+[log_" + std::to_string(p) +
                                      " " + std::to_string(s) + "])")});
    }
    assemble(report);
    report.assumptions.push_back("class gamma_a on sk_" + std::to_string(a + 1) + " K(Z/" + std::to_string(r) +
                                 ",2) has period " + std::to_string(r));
    if (report.bound != n_func(r, s))
        throw Error(ErrorKind::InvariantViolation, "skeleton bound disagrees with n(r,s)");
    return report;
}

BoundReport dimension_at_most_four_bound(std::uint64_t d, std::uint64_t r)
{
    if (!period_equals_index_in_dimension(d))
        throw Error(ErrorKind::HypothesisViolated, "per = ind is only known in dimension at most 4");
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "period must be at least 2");
    BoundReport report;
    report.kind = BoundKind::Upper;
    report.theorem = theorem::DimensionAtMostFour;
    report.subject = "ind";
    report.period = r;
    report.factors.push_back({3, ExponentEntry::of(r, Provenance::Arithmetic, "per(alpha); no room for d_5")});
    assemble(report);
    return report;
}

std::uint64_t pu_eta_power_order(std::uint64_t n, std::uint64_t s)
{
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "PU_n needs n >= 2");
    return m_closed(n, s);
}

OrdersProfile::OrdersProfile(std::vector<std::uint64_t> orders) : orders_(std::move(orders))
{
    if (orders_.empty()) throw Error(ErrorKind::InvalidProfile, "orders profile is empty");
    const std::uint64_t r = orders_.front();
    if (r < 1) throw Error(ErrorKind::InvalidProfile, "o_1 must be positive");
    for (std::size_t s = 0; s < orders_.size(); ++s)
        if (orders_[s] == 0 || r % orders_[s] != 0)
            throw Error(ErrorKind::InvalidProfile, "o_" + std::to_string(s + 1) + " = " +
                                                       std::to_string(orders_[s]) + " does not divide o_1 = " +
                                                       std::to_string(r));
}

OrdersProfile OrdersProfile::constant(std::uint64_t r, std::size_t length)
{
    if (length == 0) throw Error(ErrorKind::InvalidProfile, "orders profile is empty");
    return OrdersProfile(std::vector<std::uint64_t>(length, r));
}

bool OrdersProfile::is_constant() const noexcept
{
    return std::all_of(orders_.begin(), orders_.end(), [&](auto o) { return o == orders_.front(); });
}

bool degree_admissible(std::uint64_t degree, const OrdersProfile& profile)
{
    if (degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
    const auto& o = profile.orders();
    for (std::size_t s = 0; s < o.size(); ++s)
        if (m_closed(degree, s + 1) % o[s] != 0) return false;
    return true;
}

std::optional<std::uint64_t> min_admissible_degree(const OrdersProfile& profile, std::uint64_t cap)
{
    if (cap < 2) throw Error(ErrorKind::InvalidArgument, "search cap must be at least 2");
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (!degree_admissible(n, profile)) continue;
        if (profile.is_constant() && !divides(n_func(profile.period(), profile.length()), Integer(n)))
            throw Error(ErrorKind::InvariantViolation,
                        "admissible degree " + std::to_string(n) + " is not a multiple of n(r,S)");
        return n;
    }
    return std::nullopt;
}

bool check_per_ind_consistency(const Integer& per, const Integer& ind)
{
    if (per < 1 || ind < 1) throw Error(ErrorKind::InvalidArgument, "period and index must be positive");
    return divides(per, ind) && prime_support_within(ind, per) && prime_support_within(per, ind);
}

} // namespace perind
