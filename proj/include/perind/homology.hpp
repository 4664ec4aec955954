#pragma once

#include "perind/integer.hpp"
#include "perind/stable_tables.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perind {

/// Dense row-major matrix of big integers. Zero rows or columns are legal and
/// stand for maps from or to the zero group.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    bool is_zero() const;
    std::vector<Integer> column(std::size_t j) const;
    std::vector<Integer> apply(std::span<const Integer> x) const;

    bool operator==(const IntMatrix&) const = default;

    // Elementary operations used by the Smith reduction.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    /// row[dst] += c * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& c);
    /// col[dst] += c * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& c);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...,
/// nonnegative, zeros trailing. The inverses of U and V are carried along.
struct SmithDecomposition {
    IntMatrix U, V, D;
    IntMatrix U_inv, V_inv;

    std::size_t rank() const;
    std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Re-checks every invariant exactly: the product, the diagonal chain,
/// U*U_inv = I, V*V_inv = I, and |det U| = |det V| = 1.
bool verify_smith(const IntMatrix& a, const SmithDecomposition& snf, std::string* why = nullptr);

/// Cellular chain complex: boundaries[k-1] is d_k, an n_{k-1} x n_k matrix.
class ChainComplex {
public:
    /// Validates dimensions and d_k * d_{k+1} = 0; throws ErrorKind::InvalidComplex
    /// naming the first offending (k, row, col).
    ChainComplex(std::string name, std::vector<std::size_t> cell_counts, std::vector<IntMatrix> boundaries);

    const std::string& name() const noexcept { return name_; }
    std::size_t top_dim() const noexcept { return cells_.size() - 1; }
    const std::vector<std::size_t>& cell_counts() const noexcept { return cells_; }
    std::size_t cells(std::size_t k) const noexcept { return k < cells_.size() ? cells_[k] : 0; }

    /// d_k for 1 <= k <= top_dim; a zero-size matrix outside that range.
    IntMatrix boundary(std::size_t k) const;
    /// delta_k : C^k -> C^{k+1}, the transpose of d_{k+1}.
    IntMatrix coboundary(std::size_t k) const;

    static ChainComplex from_json(const nlohmann::json& doc);
    static ChainComplex load(const std::string& path);
    nlohmann::json to_json() const;

private:
    std::string name_;
    std::vector<std::size_t> cells_;
    std::vector<IntMatrix> boundaries_;
};

struct CohomologyGroup {
    std::size_t degree = 0;
    FinAbGroup group;

    std::size_t free_rank() const noexcept { return group.free_rank(); }
    const std::vector<Integer>& torsion() const noexcept { return group.invariant_factors(); }

    bool operator==(const CohomologyGroup&) const = default;
};

/// A cohomology group with explicit generating cocycles. Summand i is Z/d_i
/// (cyclic_orders[i] = d_i >= 2) or Z (cyclic_orders[i] = 0); generator i is
/// an integer cochain representing it.
struct CohomologyBasis {
    CohomologyGroup group;
    std::vector<Integer> cyclic_orders;
    std::vector<std::vector<Integer>> generators;

    /// Coordinates of the class of a cocycle, torsion entries reduced into
    /// [0, d_i). Throws ErrorKind::InvalidArgument if x is not a cocycle.
    std::vector<Integer> classify(std::span<const Integer> x) const;

    /// True when the coordinate vector is the zero class.
    bool is_zero_class(std::span<const Integer> coords) const;

    // Coordinate map x -> w = left_inverse * x / scale (exact), then
    // coords = quotient_U * w. Rows of left_inverse whose images must vanish
    // for x to be a cocycle are listed in vanishing_rows.
    IntMatrix left_inverse;
    std::vector<Integer> scale;
    IntMatrix vanishing_rows;
    IntMatrix quotient_U;
    Integer modulus = 0;
};

void check_degree(const ChainComplex& c, std::size_t k);

CohomologyBasis cohomology_basis_Z(const ChainComplex& c, std::size_t k);
CohomologyBasis cohomology_basis_mod(const ChainComplex& c, std::size_t k, const Integer& r);

CohomologyGroup cohomology_Z(const ChainComplex& c, std::size_t k);
CohomologyGroup cohomology_mod(const ChainComplex& c, std::size_t k, const Integer& r);

/// Bockstein H^k(X; Z/r) -> H^{k+1}(X; Z). Column i holds the coordinates of
/// the image of source generator i in the target basis.
struct BocksteinMap {
    std::size_t degree = 0;
    Integer modulus;
    CohomologyBasis source;
    CohomologyBasis target;
    IntMatrix matrix;

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
};

/// Lifts each generating cocycle x, returns the class of (delta x)/r, and
/// checks the result is unchanged under coboundary and r-multiple
/// perturbations of the lift.
BocksteinMap bockstein(const ChainComplex& c, std::size_t k, const Integer& r);

/// Reduction H^k(X; Z) -> H^k(X; Z/r) on generators, as coordinates in the
/// mod-r basis.
IntMatrix reduction_map(const ChainComplex& c, std::size_t k, const Integer& r);

/// Image of a vector of source coordinates under a map, reduced in the target.
std::vector<Integer> apply_map(const IntMatrix& m, const CohomologyBasis& target, std::span<const Integer> coords);

namespace fixtures {

/// One cell per dimension 0..top, d_k = r for k even and 0 for k odd.
ChainComplex bz_skeleton(std::uint64_t r, std::size_t top);
/// Cells in degrees 0 and n.
ChainComplex sphere(std::size_t n);
/// Standard cellular RP^n: d_k = 1 + (-1)^k.
ChainComplex real_projective(std::size_t n);

/// "bz<r>-skel<D>", "sphere<n>", "rp<n>".
ChainComplex by_name(const std::string& name);

/// H^5(K(Z/2,2); Z) = Z/4, a literature value shipped as a fixture.
FinAbGroup k_z2_2_h5();

} // namespace fixtures

} // namespace perind
