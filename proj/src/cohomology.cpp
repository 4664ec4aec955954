#include "perind/error.hpp"
#include "perind/homology.hpp"
#include "perind/json_io.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <regex>
#include <set>

namespace perind {

ChainComplex::ChainComplex(std::string name, std::vector<std::size_t> cell_counts, std::vector<IntMatrix> boundaries)
    : name_(std::move(name)), cells_(std::move(cell_counts)), boundaries_(std::move(boundaries))
{
    auto bad = [](std::size_t k, std::size_t row, std::size_t col, const std::string& msg) {
        return Error(ErrorKind::InvalidComplex, msg + " at (k=" + std::to_string(k) + ", row=" + std::to_string(row) +
                                                    ", col=" + std::to_string(col) + ")");
    };
    if (cells_.empty()) throw Error(ErrorKind::InvalidComplex, "cell_counts must list at least n_0");
    if (boundaries_.size() != cells_.size() - 1)
        throw Error(ErrorKind::InvalidComplex, "expected " + std::to_string(cells_.size() - 1) +
                                                   " boundary matrices, got " + std::to_string(boundaries_.size()));
    for (std::size_t k = 1; k < cells_.size(); ++k) {
        const IntMatrix& b = boundaries_[k - 1];
        if (b.rows() != cells_[k - 1]) throw bad(k, b.rows(), 0, "boundary has wrong number of rows");
        if (b.cols() != cells_[k]) throw bad(k, 0, b.cols(), "boundary has wrong number of columns");
    }
    for (std::size_t k = 1; k + 1 < cells_.size(); ++k) {
        const IntMatrix prod = boundaries_[k - 1] * boundaries_[k];
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j)
                if (prod(i, j) != 0) throw bad(k, i, j, "d_" + std::to_string(k) + " * d_" + std::to_string(k + 1) + " != 0");
    }
}

IntMatrix ChainComplex::boundary(std::size_t k) const
{
    if (k >= 1 && k <= top_dim()) return boundaries_[k - 1];
    return IntMatrix(cells(k == 0 ? std::size_t(-1) : k - 1), cells(k));
}

IntMatrix ChainComplex::coboundary(std::size_t k) const
{
    return boundary(k + 1).transpose();
}

ChainComplex ChainComplex::from_json(const nlohmann::json& doc)
{
    try {
        const std::string name = doc.at("name").get<std::string>();
        const auto counts = doc.at("cell_counts").get<std::vector<std::size_t>>();
        const auto& bs = doc.at("boundaries");
        if (!bs.is_array()) throw Error(ErrorKind::MalformedInput, "\"boundaries\" must be an array");
        if (counts.empty()) throw Error(ErrorKind::InvalidComplex, "cell_counts must list at least n_0");
        if (bs.size() != counts.size() - 1)
            throw Error(ErrorKind::InvalidComplex, "expected " + std::to_string(counts.size() - 1) +
                                                       " boundary matrices, got " + std::to_string(bs.size()));
        std::vector<IntMatrix> mats;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            const auto& rows = bs[k - 1];
            const std::size_t nr = counts[k - 1], nc = counts[k];
            auto where = [&](std::size_t row, std::size_t col) {
                return " at (k=" + std::to_string(k) + ", row=" + std::to_string(row) + ", col=" + std::to_string(col) + ")";
            };
            if (!rows.is_array()) throw Error(ErrorKind::MalformedInput, "boundary must be an array" + where(0, 0));
            IntMatrix m(nr, nc);
            if (nr == 0 || nc == 0) {
                if (!rows.empty())
                    throw Error(ErrorKind::InvalidComplex, "boundary of a zero-dimensional map must be []" + where(0, 0));
                mats.push_back(std::move(m));
                continue;
            }
            if (rows.size() != nr)
                throw Error(ErrorKind::InvalidComplex, "expected " + std::to_string(nr) + " rows, got " +
                                                           std::to_string(rows.size()) + where(std::min(rows.size(), nr), 0));
            for (std::size_t i = 0; i < nr; ++i) {
                if (!rows[i].is_array() || rows[i].size() != nc)
                    throw Error(ErrorKind::InvalidComplex,
                                "expected " + std::to_string(nc) + " columns" +
                                    where(i, rows[i].is_array() ? std::min(rows[i].size(), nc) : 0));
                for (std::size_t j = 0; j < nc; ++j) {
                    try {
                        m(i, j) = integer_from_json(rows[i][j]);
                    } catch (const Error& e) {
                        throw Error(ErrorKind::MalformedInput, std::string(e.what()) + where(i, j));
                    }
                }
            }
            mats.push_back(std::move(m));
        }
        return ChainComplex(name, counts, std::move(mats));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("chain complex: ") + e.what());
    }
}

ChainComplex ChainComplex::load(const std::string& path)
{
    return from_json(read_json_file(path));
}

nlohmann::json ChainComplex::to_json() const
{
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : boundaries_) {
        nlohmann::json rows = nlohmann::json::array();
        if (!b.empty())
            for (std::size_t i = 0; i < b.rows(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(integer_to_json(b(i, j)));
                rows.push_back(std::move(row));
            }
        bs.push_back(std::move(rows));
    }
    return {{"name", name_}, {"cell_counts", cells_}, {"boundaries", std::move(bs)}};
}

void check_degree(const ChainComplex& c, std::size_t k)
{
    if (k > c.top_dim())
        throw Error(ErrorKind::DegreeOutOfRange, "degree " + std::to_string(k) + " outside 0.." +
                                                     std::to_string(c.top_dim()) + " for " + c.name());
}

namespace {

Integer reduce(const Integer& x, const Integer& m)
{
    Integer out;
    mpz_fdiv_r(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return out;
}

IntMatrix row_block(const IntMatrix& m, std::size_t from, std::size_t to)
{
    IntMatrix out(to - from, m.cols());
    for (std::size_t i = from; i < to; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i - from, j) = m(i, j);
    return out;
}

// Fills the quotient data of `basis` given coordinates of the sublattice
// generators (columns of `relations`) and the lattice basis in cochain
// coordinates (columns of `lattice`).
void finish_quotient(CohomologyBasis& basis, const IntMatrix& relations, const IntMatrix& lattice)
{
    const SmithDecomposition s = smith_normal_form(relations);
    const std::size_t rank = s.rank();
    const std::size_t dim = relations.rows();
    std::vector<std::size_t> kept;
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    for (std::size_t i = 0; i < dim; ++i) {
        if (i < rank && s.D(i, i) == 1) continue;
        kept.push_back(i);
        if (i < rank) {
            basis.cyclic_orders.push_back(s.D(i, i));
            torsion.push_back(s.D(i, i));
        } else {
            basis.cyclic_orders.push_back(0);
            ++free_rank;
        }
    }
    basis.group.group = FinAbGroup(free_rank, std::move(torsion));
    basis.quotient_U = IntMatrix(kept.size(), dim);
    for (std::size_t a = 0; a < kept.size(); ++a) {
        for (std::size_t j = 0; j < dim; ++j) basis.quotient_U(a, j) = s.U(kept[a], j);
        std::vector<Integer> w = s.U_inv.column(kept[a]);
        std::vector<Integer> x = lattice.apply(w);
        if (basis.modulus != 0)
            for (auto& v : x) v = reduce(v, basis.modulus);
        basis.generators.push_back(std::move(x));
    }
}

} // namespace

std::vector<Integer> CohomologyBasis::classify(std::span<const Integer> x) const
{
    if (x.size() != left_inverse.cols())
        throw Error(ErrorKind::InvalidArgument, "cochain has the wrong length");
    for (const auto& v : vanishing_rows.apply(x))
        if (v != 0) throw Error(ErrorKind::InvalidArgument, "cochain is not a cocycle");
    std::vector<Integer> w = left_inverse.apply(x);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!divides(scale[i], w[i])) throw Error(ErrorKind::InvalidArgument, "cochain is not a cocycle mod " + modulus.get_str());
        mpz_divexact(w[i].get_mpz_t(), w[i].get_mpz_t(), scale[i].get_mpz_t());
    }
    std::vector<Integer> z = quotient_U.apply(w);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (cyclic_orders[i] != 0) z[i] = reduce(z[i], cyclic_orders[i]);
    return z;
}

bool CohomologyBasis::is_zero_class(std::span<const Integer> coords) const
{
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (cyclic_orders[i] == 0 ? coords[i] != 0 : !divides(cyclic_orders[i], coords[i])) return false;
    }
    return true;
}

CohomologyBasis cohomology_basis_Z(const ChainComplex& c, std::size_t k)
{
    check_degree(c, k);
    const std::size_t n = c.cells(k);
    const IntMatrix delta = c.coboundary(k);
    const IntMatrix prev = k == 0 ? IntMatrix(n, 0) : c.coboundary(k - 1);
    const SmithDecomposition s = smith_normal_form(delta);
    const std::size_t rho = s.rank();

    CohomologyBasis basis;
    basis.group.degree = k;
    basis.modulus = 0;
    // ker delta_k is spanned by columns rho.. of V.
    IntMatrix kernel(n, n - rho);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = rho; j < n; ++j) kernel(i, j - rho) = s.V(i, j);
    basis.left_inverse = row_block(s.V_inv, rho, n);
    basis.vanishing_rows = row_block(s.V_inv, 0, rho);
    basis.scale.assign(n - rho, Integer(1));
    if (!(basis.vanishing_rows * prev).is_zero())
        throw Error(ErrorKind::InvariantViolation, "coboundaries do not lie in the cocycles");
    finish_quotient(basis, basis.left_inverse * prev, kernel);
    return basis;
}

CohomologyBasis cohomology_basis_mod(const ChainComplex& c, std::size_t k, const Integer& r)
{
    check_degree(c, k);
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
    const std::size_t n = c.cells(k);
    const IntMatrix delta = c.coboundary(k);
    const IntMatrix prev = k == 0 ? IntMatrix(n, 0) : c.coboundary(k - 1);
    const SmithDecomposition s = smith_normal_form(delta);
    const std::size_t rho = s.rank();

    CohomologyBasis basis;
    basis.group.degree = k;
    basis.modulus = r;
    // Integer lifts of mod-r cocycles form the lattice V * diag(c) Z^n with
    // c_i = r / gcd(d_i, r) on the nonzero diagonal.
    basis.scale.assign(n, Integer(1));
    for (std::size_t i = 0; i < rho; ++i) basis.scale[i] = r / gcd(s.D(i, i), r);
    IntMatrix lattice = s.V;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lattice(i, j) *= basis.scale[j];
    basis.left_inverse = s.V_inv;
    basis.vanishing_rows = IntMatrix(0, n);

    // Relations: coboundaries plus r * C^k, in lattice coordinates.
    const std::size_t m = prev.cols();
    IntMatrix rel(n, m + n);
    const IntMatrix moved = s.V_inv * prev;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) rel(i, j) = moved(i, j);
        for (std::size_t j = 0; j < n; ++j) rel(i, m + j) = r * s.V_inv(i, j);
        for (std::size_t j = 0; j < m + n; ++j) {
            if (!divides(basis.scale[i], rel(i, j)))
                throw Error(ErrorKind::InvariantViolation, "mod-r relations leave the cocycle lattice");
            mpz_divexact(rel(i, j).get_mpz_t(), rel(i, j).get_mpz_t(), basis.scale[i].get_mpz_t());
        }
    }
    finish_quotient(basis, rel, lattice);
    return basis;
}

CohomologyGroup cohomology_Z(const ChainComplex& c, std::size_t k)
{
    return cohomology_basis_Z(c, k).group;
}

CohomologyGroup cohomology_mod(const ChainComplex& c, std::size_t k, const Integer& r)
{
    return cohomology_basis_mod(c, k, r).group;
}

std::vector<Integer> apply_map(const IntMatrix& m, const CohomologyBasis& target, std::span<const Integer> coords)
{
    std::vector<Integer> out = m.apply(coords);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (target.cyclic_orders[i] != 0) out[i] = reduce(out[i], target.cyclic_orders[i]);
    return out;
}

namespace {

// Every element of a finite group given by cyclic orders; nullopt if the
// group is infinite or too large to enumerate.
std::optional<std::vector<std::vector<Integer>>> enumerate(const std::vector<Integer>& orders)
{
    Integer total = 1;
    for (const auto& o : orders) {
        if (o == 0) return std::nullopt;
        total *= o;
    }
    if (total > 1'000'000) return std::nullopt;
    std::vector<std::vector<Integer>> out{std::vector<Integer>(orders.size())};
    for (std::size_t i = 0; i < orders.size(); ++i) {
        std::vector<std::vector<Integer>> next;
        for (const auto& partial : out)
            for (Integer v = 0; v < orders[i]; ++v) {
                auto e = partial;
                e[i] = v;
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::set<std::vector<Integer>> image_of(const BocksteinMap& b)
{
    auto elems = enumerate(b.source.cyclic_orders);
    if (!elems) throw Error(ErrorKind::InvalidArgument, "source group too large to enumerate");
    std::set<std::vector<Integer>> image;
    for (const auto& e : *elems) image.insert(apply_map(b.matrix, b.target, e));
    return image;
}

} // namespace

bool BocksteinMap::is_zero() const
{
    for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (!target.is_zero_class(matrix.column(j))) return false;
    return true;
}

bool BocksteinMap::is_injective() const
{
    return Integer(image_of(*this).size()) == source.group.group.torsion_order();
}

bool BocksteinMap::is_surjective() const
{
    if (!target.group.group.is_finite()) return false;
    return Integer(image_of(*this).size()) == target.group.group.torsion_order();
}

BocksteinMap bockstein(const ChainComplex& c, std::size_t k, const Integer& r)
{
    check_degree(c, k);
    if (k >= c.top_dim())
        throw Error(ErrorKind::DegreeOutOfRange, "Bockstein needs k < top dimension " + std::to_string(c.top_dim()));
    BocksteinMap out;
    out.degree = k;
    out.modulus = r;
    out.source = cohomology_basis_mod(c, k, r);
    out.target = cohomology_basis_Z(c, k + 1);
    out.matrix = IntMatrix(out.target.cyclic_orders.size(), out.source.generators.size());

    const IntMatrix delta = c.coboundary(k);
    auto lift_image = [&](std::span<const Integer> x) {
        std::vector<Integer> y = delta.apply(x);
        for (auto& v : y) {
            if (!divides(r, v)) throw Error(ErrorKind::InvariantViolation, "delta of a mod-r cocycle is not divisible by r");
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), r.get_mpz_t());
        }
        return out.target.classify(y);
    };

    const std::size_t n = c.cells(k);
    const IntMatrix prev = k == 0 ? IntMatrix(n, 0) : c.coboundary(k - 1);
    for (std::size_t g = 0; g < out.source.generators.size(); ++g) {
        const auto& x = out.source.generators[g];
        const std::vector<Integer> coords = lift_image(x);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (out.target.cyclic_orders[i] == 0 && coords[i] != 0)
                throw Error(ErrorKind::InvariantViolation, "Bockstein image has a free component");
            out.matrix(i, g) = coords[i];
        }
        // Well-definedness: other lifts and cohomologous representatives.
        for (std::size_t i = 0; i < n; ++i) {
            auto shifted = x;
            shifted[i] += r;
            if (lift_image(shifted) != coords)
                throw Error(ErrorKind::InvariantViolation, "Bockstein depends on the integer lift");
        }
        for (std::size_t j = 0; j < prev.cols(); ++j) {
            auto shifted = x;
            for (std::size_t i = 0; i < n; ++i) shifted[i] += prev(i, j);
            if (lift_image(shifted) != coords)
                throw Error(ErrorKind::InvariantViolation, "Bockstein depends on the cocycle representative");
        }
    }
    return out;
}

IntMatrix reduction_map(const ChainComplex& c, std::size_t k, const Integer& r)
{
    const CohomologyBasis integral = cohomology_basis_Z(c, k);
    const CohomologyBasis modular = cohomology_basis_mod(c, k, r);
    IntMatrix m(modular.cyclic_orders.size(), integral.generators.size());
    for (std::size_t g = 0; g < integral.generators.size(); ++g) {
        const auto coords = modular.classify(integral.generators[g]);
        for (std::size_t i = 0; i < coords.size(); ++i) m(i, g) = coords[i];
    }
    return m;
}

namespace fixtures {

namespace {

ChainComplex one_cell_per_degree(std::string name, std::size_t top, const std::function<long(std::size_t)>& d)
{
    std::vector<std::size_t> counts(top + 1, 1);
    std::vector<IntMatrix> bs;
    for (std::size_t k = 1; k <= top; ++k) {
        IntMatrix m(1, 1);
        m(0, 0) = d(k);
        bs.push_back(std::move(m));
    }
    return ChainComplex(std::move(name), std::move(counts), std::move(bs));
}

} // namespace

ChainComplex bz_skeleton(std::uint64_t r, std::size_t top)
{
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "BZ/r skeleton needs r >= 2");
    return one_cell_per_degree("bz" + std::to_string(r) + "-skel" + std::to_string(top), top,
                               [r](std::size_t k) { return k % 2 == 0 ? static_cast<long>(r) : 0L; });
}

ChainComplex sphere(std::size_t n)
{
    if (n == 0) return ChainComplex("sphere0", {2}, {});
    std::vector<std::size_t> counts(n + 1, 0);
    counts[0] = 1;
    counts[n] = 1;
    std::vector<IntMatrix> bs;
    for (std::size_t k = 1; k <= n; ++k) bs.emplace_back(counts[k - 1], counts[k]);
    return ChainComplex("sphere" + std::to_string(n), std::move(counts), std::move(bs));
}

ChainComplex real_projective(std::size_t n)
{
    return one_cell_per_degree("rp" + std::to_string(n), n, [](std::size_t k) { return k % 2 == 0 ? 2L : 0L; });
}

ChainComplex by_name(const std::string& name)
{
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(bz(\d+)-skel(\d+))")))
        return bz_skeleton(std::stoull(m[1]), std::stoull(m[2]));
    if (std::regex_match(name, m, std::regex(R"(sphere(\d+))"))) return sphere(std::stoull(m[1]));
    if (std::regex_match(name, m, std::regex(R"(rp(\d+))"))) return real_projective(std::stoull(m[1]));
    throw Error(ErrorKind::InvalidArgument, "unknown fixture '" + name + "' (expected bz<r>-skel<D>, sphere<n>, rp<n>)");
}

FinAbGroup k_z2_2_h5()
{
    return FinAbGroup::cyclic(4);
}

} // namespace fixtures

} // namespace perind
