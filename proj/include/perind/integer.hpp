#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace perind {

/// Arbitrary-precision integer used for every group order, binomial and bound.
using Integer = mpz_class;

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline bool divides(const Integer& a, const Integer& b)
{
    if (a == 0) return b == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer pow(const Integer& base, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// Parses a decimal string; throws std::invalid_argument on garbage.
Integer parse_integer(const std::string& text);

inline bool fits_u64(const Integer& x) { return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Integer& x);

} // namespace perind
