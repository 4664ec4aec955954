#pragma once

#include "perind/integer.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace perind {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    auto operator<=>(const PrimePower&) const = default;
};

/// A positive integer as a strictly increasing list of prime powers. The
/// empty list is 1.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> pairs);

    const std::vector<PrimePower>& pairs() const noexcept { return pairs_; }
    bool empty() const noexcept { return pairs_.empty(); }
    bool is_prime_power() const noexcept { return pairs_.size() == 1; }

    /// Product of the prime powers.
    Integer value() const;

    bool operator==(const Factorization&) const = default;

private:
    std::vector<PrimePower> pairs_;
};

bool is_prime(std::uint64_t n);

/// Trial division; inputs in this domain are periods and Azumaya degrees.
Factorization factorize(std::uint64_t a);

/// Largest v with p^v | x.
unsigned padic_valuation(std::uint64_t p, const Integer& x);

/// [log_p s] by repeated division, exact at powers of p.
unsigned floor_log(std::uint64_t p, std::uint64_t s);

/// Number of carries when adding a and b in base p.
unsigned kummer_carries(std::uint64_t p, std::uint64_t a, std::uint64_t b);

Integer binomial(std::uint64_t n, std::uint64_t k);

/// gcd of binom(a,1), ..., binom(a,s) through the prime factorization of a:
///   prod p_i^max(n_i - [log_{p_i} s], 0).
std::uint64_t m_closed(std::uint64_t a, std::uint64_t s);

/// The same gcd computed literally from big-integer binomials. Terms with
/// i > a vanish and are skipped.
Integer m_oracle(std::uint64_t a, std::uint64_t s);

/// prod p_i^(n_i + [log_{p_i} s]) over the factorization of b.
Integer n_func(std::uint64_t b, std::uint64_t s);

/// True when every prime dividing x also divides r (x, r > 0).
bool prime_support_within(const Integer& x, const Integer& r);

} // namespace perind
