#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "perind/error.hpp"
#include "perind/homology.hpp"
#include "perind/numtheory.hpp"

#include <random>
#include <set>

using namespace perind;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, int bound)
{
    std::uniform_int_distribution<std::size_t> dim(0, max_dim);
    std::uniform_int_distribution<int> entry(-bound, bound);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    return m;
}

FinAbGroup expected_group(const oracle::KnownComplex& kc, std::size_t k)
{
    return FinAbGroup::from_cyclic_orders(kc.free_ranks[k], kc.torsion[k]);
}

// H^k(Z/r) = H^k(Z) (x) Z/r + Tor(H^{k+1}(Z), Z/r).
FinAbGroup universal_coefficients(const FinAbGroup& hk, const FinAbGroup& hk1, const Integer& r)
{
    std::vector<Integer> orders(hk.free_rank(), r);
    for (const auto& d : hk.invariant_factors()) orders.push_back(gcd(d, r));
    for (const auto& d : hk1.invariant_factors()) orders.push_back(gcd(d, r));
    return FinAbGroup::from_cyclic_orders(0, orders);
}

std::vector<std::vector<Integer>> elements(const std::vector<Integer>& orders)
{
    std::vector<std::vector<Integer>> out{std::vector<Integer>(orders.size())};
    for (std::size_t i = 0; i < orders.size(); ++i) {
        std::vector<std::vector<Integer>> next;
        for (const auto& e : out)
            for (Integer v = 0; v < orders[i]; ++v) {
                auto w = e;
                w[i] = v;
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

std::size_t image_size(const IntMatrix& m, const CohomologyBasis& source, const CohomologyBasis& target)
{
    std::set<std::vector<Integer>> image;
    for (const auto& e : elements(source.cyclic_orders)) image.insert(apply_map(m, target, e));
    return image.size();
}

} // namespace

TEST_CASE("smith examples")
{
    const IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}}, 2);
    const auto s = smith_normal_form(a);
    CHECK(s.diagonal() == std::vector<Integer>{1, 6});
    CHECK(s.U * a * s.V == s.D);
    CHECK(verify_smith(a, s));

    const IntMatrix z(3, 2);
    const auto sz = smith_normal_form(z);
    CHECK(sz.D.is_zero());
    CHECK(sz.U == IntMatrix::identity(3));
    CHECK(sz.V == IntMatrix::identity(2));
    CHECK(sz.rank() == 0);

    for (long r : {-7, 0, 1, 12}) {
        const auto s1 = smith_normal_form(IntMatrix::from_rows({{r}}, 1));
        CHECK(s1.D(0, 0) == (r < 0 ? -r : r));
    }

    const auto e = smith_normal_form(IntMatrix(0, 4));
    CHECK(e.V == IntMatrix::identity(4));
    CHECK(verify_smith(IntMatrix(0, 4), e));
}

TEST_CASE("smith diagonal matches determinantal divisors")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 400; ++t) {
        const IntMatrix a = random_matrix(rng, 4, 6);
        const auto s = smith_normal_form(a);
        std::string why;
        REQUIRE_MESSAGE(verify_smith(a, s, &why), why);
        CHECK(s.diagonal() == oracle::smith_diagonal_by_minors(a));
    }
}

TEST_CASE("smith round trip on larger random matrices")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        const IntMatrix a = random_matrix(rng, 20, 9);
        const auto s = smith_normal_form(a);
        std::string why;
        REQUIRE_MESSAGE(verify_smith(a, s, &why), why);
        CHECK(s.U * a * s.V == s.D);
        CHECK(s.U * s.U_inv == IntMatrix::identity(a.rows()));
        CHECK(s.V_inv * s.V == IntMatrix::identity(a.cols()));
    }
}

TEST_CASE("verify_smith catches corruption")
{
    const IntMatrix a = IntMatrix::from_rows({{4, 6}, {2, 8}}, 2);
    auto s = smith_normal_form(a);
    REQUIRE(verify_smith(a, s));
    auto bad = s;
    bad.D(0, 0) += 1;
    CHECK_FALSE(verify_smith(a, bad));
    bad = s;
    bad.U(0, 0) += 1;
    CHECK_FALSE(verify_smith(a, bad));
    // A genuine chain-breaking diagonal with a consistent product.
    const IntMatrix d = IntMatrix::from_rows({{2, 0}, {0, 3}}, 2);
    SmithDecomposition fake{IntMatrix::identity(2), IntMatrix::identity(2), d, IntMatrix::identity(2),
                            IntMatrix::identity(2)};
    std::string why;
    CHECK_FALSE(verify_smith(d, fake, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("determinant against cofactor expansion")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> dim(0, 5);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = dim(rng);
        IntMatrix m(n, n);
        std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j) = entry(rng);
        CHECK(determinant(m) == oracle::detail::det_small(rows));
    }
}

TEST_CASE("BZ/r skeleta")
{
    for (std::uint64_t r : {2, 3, 4, 6})
        for (std::size_t top : {6, 9}) {
            const auto c = fixtures::bz_skeleton(r, top);
            CHECK(cohomology_Z(c, 0).group == FinAbGroup::free(1));
            for (std::size_t k = 1; k < top; ++k)
                CHECK(cohomology_Z(c, k).group == (k % 2 == 0 ? FinAbGroup::cyclic(r) : FinAbGroup()));
        }
    // Top degree: the last cell is a free cocycle when top is odd.
    CHECK(cohomology_Z(fixtures::bz_skeleton(2, 9), 9).group == FinAbGroup::free(1));
    CHECK(cohomology_Z(fixtures::bz_skeleton(2, 8), 8).group == FinAbGroup::cyclic(2));
}

TEST_CASE("spheres and projective spaces")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto s = fixtures::sphere(n);
        for (std::size_t k = 0; k <= n; ++k)
            CHECK(cohomology_Z(s, k).group == (k == 0 || k == n ? FinAbGroup::free(1) : FinAbGroup()));
    }
    CHECK(cohomology_Z(fixtures::sphere(0), 0).group == FinAbGroup::free(2));

    const auto rp2 = fixtures::real_projective(2);
    CHECK(cohomology_Z(rp2, 0).group == FinAbGroup::free(1));
    CHECK(cohomology_Z(rp2, 1).group == FinAbGroup());
    CHECK(cohomology_Z(rp2, 2).group == FinAbGroup::cyclic(2));
    for (std::size_t k = 0; k <= 2; ++k) CHECK(cohomology_mod(rp2, k, 2).group == FinAbGroup::cyclic(2));

    for (std::size_t n = 1; n <= 7; ++n) {
        const auto rp = fixtures::real_projective(n);
        for (std::size_t k = 1; k <= n; ++k) {
            FinAbGroup expect;
            if (k % 2 == 0) expect = FinAbGroup::cyclic(2);
            else if (k == n) expect = FinAbGroup::free(1);
            CHECK(cohomology_Z(rp, k).group == expect);
        }
    }
}

TEST_CASE("mod-r examples")
{
    CHECK(cohomology_mod(fixtures::bz_skeleton(2, 9), 1, 2).group == FinAbGroup::cyclic(2));
    CHECK(cohomology_mod(fixtures::sphere(2), 1, 3).group == FinAbGroup());
    CHECK(cohomology_mod(fixtures::sphere(2), 2, 3).group == FinAbGroup::cyclic(3));
    CHECK(cohomology_mod(fixtures::bz_skeleton(4, 6), 3, 2).group == FinAbGroup::cyclic(2));
    CHECK(cohomology_mod(fixtures::bz_skeleton(4, 6), 3, 8).group == FinAbGroup::cyclic(4));
}

TEST_CASE("degree checks")
{
    const auto c = fixtures::sphere(2);
    try {
        (void)cohomology_Z(c, 3);
        FAIL("expected degree-out-of-range");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeOutOfRange);
    }
    CHECK_THROWS_AS(cohomology_mod(c, 5, 2), Error);
    CHECK_THROWS_AS(bockstein(c, 2, 2), Error);
}

TEST_CASE("random complexes with known cohomology")
{
    std::mt19937_64 rng(314);
    for (int t = 0; t < 80; ++t) {
        const auto kc = oracle::random_known_complex(1 + t % 5, rng);
        const auto& c = kc.complex;
        long chi_cells = 0, chi_free = 0;
        for (std::size_t k = 0; k <= c.top_dim(); ++k) {
            const auto h = cohomology_Z(c, k).group;
            CHECK(h == expected_group(kc, k));
            const long sign = k % 2 == 0 ? 1 : -1;
            chi_cells += sign * static_cast<long>(c.cells(k));
            chi_free += sign * static_cast<long>(h.free_rank());
        }
        CHECK(chi_cells == chi_free);
    }
}

TEST_CASE("Euler characteristic on fixtures")
{
    for (const std::string name : {"bz2-skel9", "bz6-skel8", "sphere0", "sphere5", "rp2", "rp7"}) {
        const auto c = fixtures::by_name(name);
        long chi_cells = 0, chi_free = 0;
        for (std::size_t k = 0; k <= c.top_dim(); ++k) {
            const long sign = k % 2 == 0 ? 1 : -1;
            chi_cells += sign * static_cast<long>(c.cells(k));
            chi_free += sign * static_cast<long>(cohomology_Z(c, k).free_rank());
        }
        CHECK_MESSAGE(chi_cells == chi_free, name);
    }
}

TEST_CASE("mod-r cohomology obeys universal coefficients")
{
    std::mt19937_64 rng(271);
    for (int t = 0; t < 60; ++t) {
        const auto kc = oracle::random_known_complex(1 + t % 4, rng);
        for (long r : {2, 3, 4, 6}) {
            for (std::size_t k = 0; k <= kc.complex.top_dim(); ++k) {
                const FinAbGroup next =
                    k < kc.complex.top_dim() ? expected_group(kc, k + 1) : FinAbGroup();
                CHECK(cohomology_mod(kc.complex, k, r).group ==
                      universal_coefficients(expected_group(kc, k), next, r));
            }
        }
    }
}

TEST_CASE("mod-p orders against brute-force cochain counting")
{
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int t = 0; t < 25; ++t) {
        const auto kc = oracle::random_known_complex(2, rng, 2, 4);
        const auto& c = kc.complex;
        bool small = true;
        for (auto n : c.cell_counts()) small = small && n <= 5;
        if (!small) continue;
        ++checked;
        for (std::uint64_t p : {2, 3})
            for (std::size_t k = 0; k <= c.top_dim(); ++k)
                CHECK(cohomology_mod(c, k, p).group.torsion_order() == oracle::mod_p_cohomology_order(c, k, p));
    }
    CHECK(checked >= 10);
}

TEST_CASE("generators classify to unit vectors")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const auto kc = oracle::random_known_complex(3, rng);
        for (std::size_t k = 0; k <= 3; ++k) {
            for (const auto& basis : {cohomology_basis_Z(kc.complex, k), cohomology_basis_mod(kc.complex, k, 6)}) {
                for (std::size_t g = 0; g < basis.generators.size(); ++g) {
                    std::vector<Integer> unit(basis.generators.size(), 0);
                    unit[g] = 1;
                    CHECK(basis.classify(basis.generators[g]) == unit);
                }
            }
        }
    }
    const std::vector<Integer> not_cocycle{1};
    CHECK_THROWS_AS(cohomology_basis_Z(fixtures::real_projective(3), 1).classify(not_cocycle), Error);
    CHECK_NOTHROW(cohomology_basis_mod(fixtures::real_projective(3), 1, 2).classify(not_cocycle));
}

TEST_CASE("Bockstein examples")
{
    const auto c = fixtures::bz_skeleton(2, 9);
    const auto b = bockstein(c, 1, 2);
    CHECK(b.source.group.group == FinAbGroup::cyclic(2));
    CHECK(b.target.group.group == FinAbGroup::cyclic(2));
    CHECK(b.is_injective());
    CHECK(b.is_surjective());
    CHECK_FALSE(b.is_zero());

    for (std::size_t k = 0; k < 3; ++k)
        for (long r : {2, 3, 5}) CHECK(bockstein(fixtures::sphere(3), k, r).is_zero());

    // H^1(BZ/4; Z) = H^3(BZ/4; Z) = 0; H^4 = Z/4 receives Z/2.
    CHECK(bockstein(c, 0, 2).is_zero());
    CHECK(bockstein(fixtures::bz_skeleton(4, 9), 2, 2).is_zero());
    const auto b4 = bockstein(fixtures::bz_skeleton(4, 9), 3, 2);
    CHECK_FALSE(b4.is_zero());
    CHECK_FALSE(b4.is_surjective());
}

TEST_CASE("Bockstein exactness on fixtures and random complexes")
{
    std::vector<ChainComplex> complexes;
    for (const std::string name : {"bz2-skel9", "bz3-skel7", "bz4-skel7", "bz6-skel7", "sphere4", "rp2", "rp6"})
        complexes.push_back(fixtures::by_name(name));
    std::mt19937_64 rng(55);
    for (int t = 0; t < 30; ++t) complexes.push_back(oracle::random_known_complex(3, rng).complex);

    for (const auto& c : complexes)
        for (long r : {2, 3, 4, 6})
            for (std::size_t k = 0; k < c.top_dim(); ++k) {
                const auto b = bockstein(c, k, r);
                // r * beta = 0
                for (std::size_t g = 0; g < b.matrix.cols(); ++g) {
                    auto col = b.matrix.column(g);
                    for (auto& v : col) v *= r;
                    REQUIRE(b.target.is_zero_class(apply_map(IntMatrix::identity(col.size()), b.target, col)));
                }
                // beta o reduction = 0
                const IntMatrix red = reduction_map(c, k, r);
                const IntMatrix comp = b.matrix * red;
                for (std::size_t g = 0; g < comp.cols(); ++g)
                    REQUIRE(b.target.is_zero_class(apply_map(IntMatrix::identity(comp.rows()), b.target, comp.column(g))));
                // |im beta| = |H^{k+1}(Z)[r]| and |ker beta| = |im reduction|.
                Integer torsion_r = 1;
                for (const auto& d : b.target.group.group.invariant_factors()) torsion_r *= gcd(d, Integer(r));
                const std::size_t im_beta = image_size(b.matrix, b.source, b.target);
                CHECK(Integer(im_beta) == torsion_r);
                const auto integral = cohomology_basis_Z(c, k);
                Integer reduced = pow(Integer(r), integral.group.free_rank());
                for (const auto& d : integral.group.torsion()) reduced *= gcd(d, Integer(r));
                CHECK(b.source.group.group.torsion_order() == reduced * im_beta);
            }
}

TEST_CASE("chain complex validation names the offending entry")
{
    try {
        ChainComplex("bad", {1, 1, 1}, {IntMatrix::from_rows({{1}}, 1), IntMatrix::from_rows({{2}}, 1)});
        FAIL("expected invalid-complex");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidComplex);
        CHECK(std::string(e.what()).find("(k=1, row=0, col=0)") != std::string::npos);
    }
    CHECK_THROWS_AS(ChainComplex("x", {}, {}), Error);
    CHECK_THROWS_AS(ChainComplex("x", {1, 2}, {IntMatrix(1, 1)}), Error);
    CHECK_THROWS_AS(ChainComplex("x", {1, 1}, {}), Error);
}

TEST_CASE("chain complex JSON")
{
    using nlohmann::json;
    auto err = [](const json& j) -> std::pair<ErrorKind, std::string> {
        try {
            ChainComplex::from_json(j);
        } catch (const Error& e) {
            return {e.kind(), e.what()};
        }
        return {ErrorKind::InvariantViolation, "accepted"};
    };

    const auto ok = json::parse(R"({"name":"rp2","cell_counts":[1,1,1],"boundaries":[[[0]],[[2]]]})");
    const auto c = ChainComplex::from_json(ok);
    CHECK(cohomology_Z(c, 2).group == FinAbGroup::cyclic(2));
    CHECK(c.to_json() == ok);

    const auto dd = err(json::parse(R"({"name":"x","cell_counts":[2,1,1],"boundaries":[[[1],[0]],[[3]]]})"));
    CHECK(dd.first == ErrorKind::InvalidComplex);
    CHECK(dd.second.find("(k=1, row=0, col=0)") != std::string::npos);

    const auto rows = err(json::parse(R"({"name":"x","cell_counts":[1,2],"boundaries":[[[0,0],[0,0]]]})"));
    CHECK(rows.first == ErrorKind::InvalidComplex);
    CHECK(rows.second.find("k=1") != std::string::npos);

    const auto cols = err(json::parse(R"({"name":"x","cell_counts":[2,2],"boundaries":[[[0,0],[0]]]})"));
    CHECK(cols.first == ErrorKind::InvalidComplex);
    CHECK(cols.second.find("(k=1, row=1") != std::string::npos);

    CHECK(err(json::parse(R"({"name":"x","cell_counts":[1,0],"boundaries":[[[0]]]})")).first ==
          ErrorKind::InvalidComplex);
    CHECK(err(json::parse(R"({"cell_counts":[1],"boundaries":[]})")).first == ErrorKind::MalformedInput);
    CHECK(err(json::parse(R"({"name":"x","cell_counts":[1,1],"boundaries":[[["a"]]]})")).first ==
          ErrorKind::MalformedInput);

    const auto empty = ChainComplex::from_json(json::parse(R"({"name":"pt","cell_counts":[1,0],"boundaries":[[]]})"));
    CHECK(cohomology_Z(empty, 1).group == FinAbGroup());

    for (const std::string name : {"bz3-skel5", "sphere3", "rp4"}) {
        const auto f = fixtures::by_name(name);
        const auto back = ChainComplex::from_json(f.to_json());
        for (std::size_t k = 0; k <= f.top_dim(); ++k) CHECK(back.boundary(k) == f.boundary(k));
    }
    CHECK_THROWS_AS(fixtures::by_name("torus"), Error);
    CHECK_THROWS_AS(ChainComplex::load("/nonexistent.json"), Error);
}

TEST_CASE("literature fixture")
{
    CHECK(fixtures::k_z2_2_h5() == FinAbGroup::cyclic(4));
}
