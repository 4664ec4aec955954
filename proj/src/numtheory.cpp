#include "perind/numtheory.hpp"

#include "perind/error.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace perind {

std::string_view error_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::HypothesisViolated: return "hypothesis-violated";
    case ErrorKind::InfiniteExponent: return "infinite-exponent";
    case ErrorKind::DegreeOutOfRange: return "degree-out-of-range";
    case ErrorKind::InvalidComplex: return "invalid-complex";
    case ErrorKind::InvalidProfile: return "invalid-profile";
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    }
    return "error";
}

Integer parse_integer(const std::string& text)
{
    Integer x;
    if (text.empty() || x.set_str(text, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + text + "'");
    return x;
}

std::uint64_t to_u64(const Integer& x)
{
    if (!fits_u64(x))
        throw Error(ErrorKind::InvalidArgument, "integer out of 64-bit range: " + x.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

Factorization::Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs))
{
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (!is_prime(pairs_[i].prime))
            throw Error(ErrorKind::InvalidArgument, std::to_string(pairs_[i].prime) + " is not prime");
        if (pairs_[i].exponent == 0)
            throw Error(ErrorKind::InvalidArgument, "zero exponent in factorization");
        if (i > 0 && pairs_[i - 1].prime >= pairs_[i].prime)
            throw Error(ErrorKind::InvalidArgument, "factorization primes must be strictly increasing");
    }
}

Integer Factorization::value() const
{
    Integer out = 1;
    for (const auto& [p, e] : pairs_)
        out *= pow(Integer(p), e);
    return out;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

Factorization factorize(std::uint64_t a)
{
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "cannot factorize 0");
    std::vector<PrimePower> pairs;
    for (std::uint64_t p = 2; p <= a / p; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        if (e > 0) pairs.push_back({p, e});
    }
    if (a > 1) pairs.push_back({a, 1});
    return Factorization(std::move(pairs));
}

unsigned padic_valuation(std::uint64_t p, const Integer& x)
{
    if (p < 2) throw Error(ErrorKind::InvalidArgument, "valuation base must be prime");
    if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of 0 is infinite");
    Integer rest;
    Integer prime(p);
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

unsigned floor_log(std::uint64_t p, std::uint64_t s)
{
    if (p < 2) throw Error(ErrorKind::InvalidArgument, "logarithm base must be at least 2");
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "logarithm of 0");
    unsigned e = 0;
    while (s >= p) {
        s /= p;
        ++e;
    }
    return e;
}

unsigned kummer_carries(std::uint64_t p, std::uint64_t a, std::uint64_t b)
{
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    unsigned carries = 0;
    std::uint64_t carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        const std::uint64_t digit = a % p + b % p + carry;
        carry = digit >= p ? 1 : 0;
        carries += static_cast<unsigned>(carry);
        a /= p;
        b /= p;
    }
    return carries;
}

Integer binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

std::uint64_t m_closed(std::uint64_t a, std::uint64_t s)
{
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "m(a,s) needs a >= 1");
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "m(a,s) needs s >= 1 (gcd over an empty set)");
    std::uint64_t out = 1;
    const Factorization f = factorize(a);
    for (const auto& [p, n] : f.pairs()) {
        const unsigned drop = floor_log(p, s);
        for (unsigned i = drop; i < n; ++i) out *= p;
    }
    return out;
}

Integer m_oracle(std::uint64_t a, std::uint64_t s)
{
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "m(a,s) needs a >= 1");
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "m(a,s) needs s >= 1 (gcd over an empty set)");
    Integer g = 0;
    const std::uint64_t top = std::min(a, s);
    for (std::uint64_t i = 1; i <= top; ++i) {
        g = gcd(g, binomial(a, i));
        if (g == 1) break;
    }
    return g;
}

Integer n_func(std::uint64_t b, std::uint64_t s)
{
    if (b == 0) throw Error(ErrorKind::InvalidArgument, "n(b,s) needs b >= 1");
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "n(b,s) needs s >= 1");
    Integer out = 1;
    const Factorization f = factorize(b);
    for (const auto& [p, n] : f.pairs())
        out *= pow(Integer(p), n + floor_log(p, s));
    return out;
}

bool prime_support_within(const Integer& x, const Integer& r)
{
    if (x <= 0 || r <= 0) throw Error(ErrorKind::InvalidArgument, "prime support needs positive integers");
    Integer rest = x;
    for (Integer g = gcd(rest, r); g > 1; g = gcd(rest, g))
        rest /= g;
    return rest == 1;
}

} // namespace perind
