#include "perind/error.hpp"
#include "perind/homology.hpp"

#include <algorithm>
#include <utility>

namespace perind {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major))
{
    if (data_.size() != rows * cols)
        throw Error(ErrorKind::InvalidArgument, "matrix data does not match its dimensions");
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Integer> IntMatrix::column(std::size_t j) const
{
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> x) const
{
    if (x.size() != cols_) throw Error(ErrorKind::InvalidArgument, "vector length does not match matrix");
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && x[j] != 0) out[i] += (*this)(i, j) * x[j];
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j)
{
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0) (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0) (*this)(i, dst) += c * (*this)(i, src);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

Integer determinant(const IntMatrix& a)
{
    if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t SmithDecomposition::rank() const
{
    std::size_t r = 0;
    const std::size_t n = std::min(D.rows(), D.cols());
    while (r < n && D(r, r) != 0) ++r;
    return r;
}

std::vector<Integer> SmithDecomposition::diagonal() const
{
    std::vector<Integer> out;
    const std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
    return out;
}

namespace {

// A matrix M together with a unimodular L and its inverse, all updated by the
// same row operations: M <- E M, L <- E L, L_inv <- L_inv E^-1.
struct RowFrame {
    IntMatrix m, l, l_inv;

    // Rows (p, q) <- [[x, y], [u, v]] (rows p, q) with xv - yu = 1.
    void combine(std::size_t p, std::size_t q, const Integer& x, const Integer& y, const Integer& u,
                 const Integer& v)
    {
        for (IntMatrix* t : {&m, &l}) {
            for (std::size_t j = 0; j < t->cols(); ++j) {
                Integer a = (*t)(p, j), b = (*t)(q, j);
                (*t)(p, j) = x * a + y * b;
                (*t)(q, j) = u * a + v * b;
            }
        }
        for (std::size_t i = 0; i < l_inv.rows(); ++i) {
            Integer a = l_inv(i, p), b = l_inv(i, q);
            l_inv(i, p) = v * a - u * b;
            l_inv(i, q) = x * b - y * a;
        }
    }
    void add(std::size_t dst, std::size_t src, const Integer& c)
    {
        m.add_row(dst, src, c);
        l.add_row(dst, src, c);
        l_inv.add_col(src, dst, -c);
    }
    void swap(std::size_t a, std::size_t b)
    {
        m.swap_rows(a, b);
        l.swap_rows(a, b);
        l_inv.swap_cols(a, b);
    }
    void negate(std::size_t i)
    {
        m.negate_row(i);
        l.negate_row(i);
        l_inv.negate_col(i);
    }

    // Row echelon form of (this->*key) restricted to rows >= first, with
    // positive pivots and entries above each pivot reduced into [0, pivot).
    // Within a column the smallest nonzero entry is taken as pivot and the
    // rest are cleared by extended-gcd steps. Every operation is applied to
    // the whole frame.
    void hermite(IntMatrix RowFrame::*key = &RowFrame::m, std::size_t first = 0)
    {
        IntMatrix& k = this->*key;
        std::size_t row = first;
        for (std::size_t col = 0; col < k.cols() && row < k.rows(); ++col) {
            std::size_t best = k.rows();
            for (std::size_t i = row; i < k.rows(); ++i)
                if (k(i, col) != 0 && (best == k.rows() || abs(k(i, col)) < abs(k(best, col)))) best = i;
            if (best == k.rows()) continue;
            if (best != row) swap(row, best);
            for (std::size_t i = row + 1; i < k.rows(); ++i) {
                if (k(i, col) == 0) continue;
                const Integer a = k(row, col), b = k(i, col);
                if (divides(a, b)) {
                    add(i, row, Integer(-(b / a)));
                    continue;
                }
                Integer g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                combine(row, i, x, y, Integer(-(b / g)), Integer(a / g));
            }
            if (k(row, col) < 0) negate(row);
            for (std::size_t i = 0; i < row; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), k(i, col).get_mpz_t(), k(row, col).get_mpz_t());
                if (q != 0) add(i, row, -q);
            }
            ++row;
        }
    }
};

bool is_diagonal(const IntMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0) return false;
    return true;
}

// Alternates row and column Hermite passes until the matrix is diagonal,
// then normalizes the diagonal into a divisibility chain.
class SmithReducer {
public:
    explicit SmithReducer(const IntMatrix& a)
        : rows_{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.rows())},
          cols_{IntMatrix(a.cols(), 0), IntMatrix::identity(a.cols()), IntMatrix::identity(a.cols())}
    {
    }

    SmithDecomposition run()
    {
        // Column operations on D are row operations on D^T, with V^T and
        // V_inv^T playing the roles of L and L_inv.
        for (bool by_rows = rows_.m.rows() <= rows_.m.cols(); !is_diagonal(rows_.m); by_rows = !by_rows) {
            if (by_rows) {
                rows_.hermite();
            } else {
                cols_.m = rows_.m.transpose();
                cols_.hermite();
                rows_.m = cols_.m.transpose();
                cols_.m = IntMatrix(rows_.m.cols(), 0);
            }
        }
        normalize_diagonal();
        // Rows of U past the rank span the left kernel of A and columns of V
        // past the rank span its right kernel. Putting each kernel block in
        // Hermite form and reducing the other rows against it leaves D
        // unchanged and keeps the transforms small.
        std::size_t rank = 0;
        while (rank < std::min(rows_.m.rows(), rows_.m.cols()) && d(rank) != 0) ++rank;
        rows_.hermite(&RowFrame::l, rank);
        cols_.hermite(&RowFrame::l, rank);
        return {std::move(rows_.l), cols_.l.transpose(), std::move(rows_.m), std::move(rows_.l_inv),
                cols_.l_inv.transpose()};
    }

private:
    Integer& d(std::size_t i) { return rows_.m(i, i); }

    void col_swap(std::size_t a, std::size_t b)
    {
        rows_.m.swap_cols(a, b);
        cols_.l.swap_rows(a, b);
        cols_.l_inv.swap_cols(a, b);
    }
    // Columns (p, q) of D <- x col_p + y col_q, u col_p + v col_q.
    void col_combine(std::size_t p, std::size_t q, const Integer& x, const Integer& y, const Integer& u,
                     const Integer& v)
    {
        for (std::size_t i = 0; i < rows_.m.rows(); ++i) {
            Integer a = rows_.m(i, p), b = rows_.m(i, q);
            rows_.m(i, p) = x * a + y * b;
            rows_.m(i, q) = u * a + v * b;
        }
        cols_.combine(p, q, x, y, u, v);
    }

    void normalize_diagonal()
    {
        const std::size_t n = std::min(rows_.m.rows(), rows_.m.cols());
        // Nonzero entries first.
        std::size_t front = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (d(i) != 0) {
                if (i != front) {
                    rows_.swap(front, i);
                    col_swap(front, i);
                }
                ++front;
            }
        // diag(a, b) -> diag(gcd, lcm) on every pair i < j.
        for (std::size_t i = 0; i < front; ++i)
            for (std::size_t j = i + 1; j < front; ++j) {
                if (divides(d(i), d(j))) continue;
                const Integer a = d(i), b = d(j);
                Integer g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                rows_.add(i, j, 1);                                      // [a b; 0 b]
                col_combine(i, j, x, y, Integer(-(b / g)), Integer(a / g)); // [g 0; by l]
                rows_.add(j, i, Integer(-(b * y / g)));                  // [g 0; 0 l]
            }
        for (std::size_t i = 0; i < n; ++i)
            if (d(i) < 0) rows_.negate(i);
    }

    RowFrame rows_;
    RowFrame cols_;
};

bool fail(std::string* why, const char* msg)
{
    if (why) *why = msg;
    return false;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    return SmithReducer(a).run();
}

bool verify_smith(const IntMatrix& a, const SmithDecomposition& s, std::string* why)
{
    if (s.U * a * s.V != s.D) return fail(why, "U*A*V != D");
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j && s.D(i, j) != 0) return fail(why, "D is not diagonal");
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] < 0) return fail(why, "negative diagonal entry");
        if (i + 1 < diag.size() && !divides(diag[i], diag[i + 1])) return fail(why, "divisibility chain broken");
    }
    if (s.U * s.U_inv != IntMatrix::identity(a.rows())) return fail(why, "U * U_inv != I");
    if (s.V * s.V_inv != IntMatrix::identity(a.cols())) return fail(why, "V * V_inv != I");
    if (abs(determinant(s.U)) != 1) return fail(why, "|det U| != 1");
    if (abs(determinant(s.V)) != 1) return fail(why, "|det V| != 1");
    return true;
}

} // namespace perind
