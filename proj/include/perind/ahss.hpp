#pragma once

#include "perind/bounds.hpp"
#include "perind/homology.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace perind {

/// Integral cohomology H^0..H^d of a d-dimensional complex together with the
/// period r of a class alpha in H^3. That alpha has order exactly r is the
/// caller's assertion and is recorded in every report.
struct TwistedShape {
    std::uint64_t dimension = 0;
    std::uint64_t period = 0;
    std::vector<FinAbGroup> cohomology;

    /// Checks r >= 2, one group per degree 0..d, and H^0 with free rank >= 1.
    void validate() const;

    static TwistedShape from_complex(const ChainComplex& c, std::uint64_t r);

    /// {"d": D, "r": R, "h": [{"free_rank": F, "torsion": [...]}, ...]}
    static TwistedShape from_json(const nlohmann::json& doc);
    static TwistedShape load(const std::string& path);
    nlohmann::json to_json() const;
};

/// ind_K(alpha) | r * prod over odd k in [5, d] of the r-primary exponent of
/// H^k(X; Z). The d_3 factor is exactly r; later differentials from E^{0,0}
/// land in r-primary subquotients of H^k(X; Z), bounded by their E_2 exponent.
/// The bound is 1 below dimension 3.
BoundReport ku_ahss_upper_bound(const TwistedShape& shape);

/// gcd of every applicable known upper bound. Unknown contributors are listed
/// but do not enter the gcd.
BoundReport best_upper_bound(const TwistedShape& shape, const StableTable& table = StableTable::shipped());

} // namespace perind
