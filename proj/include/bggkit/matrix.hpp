#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace bggkit {

// Dense matrix over Q or F_p with exact Gaussian elimination.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field f = {}) : rows_(rows), cols_(cols), field_(f), a_(rows * cols) {}

    static Matrix identity(std::size_t n, Field f = {})
    {
        Matrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = Scalar::in(f, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix to_field(const Field& f) const
    {
        Matrix m(rows_, cols_, f);
        for (std::size_t k = 0; k < a_.size(); ++k)
            m.a_[k] = a_[k].to_field(f);
        return m;
    }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
    }
    bool is_integral() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_integral(); });
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const
    {
        if (cols_ != b.rows_)
            throw DomainError("matrix shape mismatch in product");
        Matrix c(rows_, b.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& x = (*this)(i, k);
                if (x.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        c(i, j) += x * b(k, j);
            }
        return c;
    }
    Matrix& operator+=(const Matrix& b)
    {
        check_same(b);
        for (std::size_t k = 0; k < a_.size(); ++k)
            a_[k] += b.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& b)
    {
        check_same(b);
        for (std::size_t k = 0; k < a_.size(); ++k)
            a_[k] -= b.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    Matrix operator*(const Scalar& s) const
    {
        Matrix m(*this);
        for (auto& x : m.a_)
            x *= s;
        return m;
    }
    bool operator==(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            return false;
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (!(a_[k] == b.a_[k]))
                return false;
        return true;
    }

    Matrix column(std::size_t j) const
    {
        Matrix c(rows_, 1, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            c(i, 0) = (*this)(i, j);
        return c;
    }
    Matrix columns(const std::vector<std::size_t>& js) const
    {
        Matrix c(rows_, js.size(), field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < js.size(); ++k)
                c(i, k) = (*this)(i, js[k]);
        return c;
    }
    Matrix hstack(const Matrix& b) const
    {
        if (rows_ != b.rows_)
            throw DomainError("hstack row mismatch");
        Matrix c(rows_, cols_ + b.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                c(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, cols_ + j) = b(i, j);
        }
        return c;
    }
    Matrix vstack(const Matrix& b) const
    {
        if (cols_ != b.cols_)
            throw DomainError("vstack column mismatch");
        Matrix c(rows_ + b.rows_, cols_, field_);
        std::copy(a_.begin(), a_.end(), c.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), c.a_.begin() + static_cast<long>(a_.size()));
        return c;
    }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref()
    {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, c).is_zero())
                ++piv;
            if (piv == rows_)
                continue;
            swap_rows(piv, r);
            Scalar inv = (*this)(r, c).inverse();
            for (std::size_t j = c; j < cols_; ++j)
                (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c).is_zero())
                    continue;
                Scalar f = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    if (!(*this)(r, j).is_zero())
                        (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        Matrix m(*this);
        return m.rref().size();
    }

    // Columns form a basis of the null space.
    Matrix kernel() const
    {
        Matrix m(*this);
        auto piv = m.rref();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv)
            is_piv[c] = true;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_piv[c])
                free.push_back(c);
        Matrix k(cols_, free.size(), field_);
        for (std::size_t t = 0; t < free.size(); ++t) {
            k(free[t], t) = Scalar::in(field_, 1);
            for (std::size_t r = 0; r < piv.size(); ++r)
                k(piv[r], t) = -m(r, free[t]);
        }
        return k;
    }

    // Basis of the column space, taken from the original columns.
    Matrix image() const
    {
        Matrix m(*this);
        auto piv = m.rref();
        return columns(piv);
    }

    // Solve A X = B exactly; nullopt when inconsistent.
    std::optional<Matrix> solve(const Matrix& b) const
    {
        if (b.rows_ != rows_)
            throw DomainError("solve: row mismatch");
        Matrix aug = hstack(b);
        auto piv = aug.rref();
        Matrix x(cols_, b.cols_, field_);
        for (std::size_t r = 0; r < piv.size(); ++r) {
            if (piv[r] >= cols_)
                return std::nullopt;
            for (std::size_t j = 0; j < b.cols_; ++j)
                x(piv[r], j) = aug(r, cols_ + j);
        }
        return x;
    }

    std::optional<Matrix> inverse() const
    {
        if (rows_ != cols_)
            return std::nullopt;
        auto x = solve(identity(rows_, field_));
        if (!x || rank() != rows_)
            return std::nullopt;
        return x;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? ", " : "") << (*this)(i, j);
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
    }
    void check_same(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw DomainError("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<Scalar> a_;
};

// True when every column of `v` lies in the column span of `s`.
inline bool span_contains(const Matrix& s, const Matrix& v)
{
    if (v.cols() == 0)
        return true;
    if (s.cols() == 0)
        return v.is_zero();
    return s.solve(v).has_value();
}

inline bool same_span(const Matrix& a, const Matrix& b)
{
    return a.rank() == b.rank() && span_contains(a, b) && span_contains(b, a);
}

/* integer lattices */

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Z-basis (as columns) of {x in Z^n : C x = 0}, via unimodular column operations.
inline IntMatrix integer_kernel(const IntMatrix& c, std::size_t n)
{
    std::size_t m = c.size();
    IntMatrix a = c;
    IntMatrix u(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        u[i][i] = 1;
    auto col_op = [&](std::size_t j, std::size_t k, const mpz_class& s, const mpz_class& t, const mpz_class& x,
                      const mpz_class& y) {
        // (col_j, col_k) <- (s col_j + t col_k, x col_j + y col_k)
        for (std::size_t i = 0; i < m; ++i) {
            mpz_class aj = a[i][j], ak = a[i][k];
            a[i][j] = s * aj + t * ak;
            a[i][k] = x * aj + y * ak;
        }
        for (std::size_t i = 0; i < n; ++i) {
            mpz_class uj = u[i][j], uk = u[i][k];
            u[i][j] = s * uj + t * uk;
            u[i][k] = x * uj + y * uk;
        }
    };
    std::size_t lead = 0;
    for (std::size_t r = 0; r < m && lead < n; ++r) {
        for (std::size_t k = lead + 1; k < n; ++k) {
            if (a[r][k] == 0)
                continue;
            if (a[r][lead] == 0) {
                col_op(lead, k, 0, 1, 1, 0);
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][lead].get_mpz_t(), a[r][k].get_mpz_t());
            mpz_class x = -a[r][k] / g, y = a[r][lead] / g;
            col_op(lead, k, s, t, x, y);
        }
        if (a[r][lead] != 0)
            ++lead;
    }
    IntMatrix ker(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = lead; j < n; ++j)
            ker[i].push_back(u[i][j]);
    return ker;
}

// Row Hermite normal form of the lattice spanned by the given rows (zero rows dropped).
inline IntMatrix hermite_rows(IntMatrix rows, std::size_t n)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            while (rows[i][c] != 0) {
                if (rows[r][c] == 0 || abs(rows[i][c]) < abs(rows[r][c])) {
                    std::swap(rows[i], rows[r]);
                    continue;
                }
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = c; j < n; ++j)
                    rows[i][j] -= q * rows[r][j];
            }
        }
        if (rows[r][c] == 0)
            continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < n; ++j)
                    rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Canonical Z-basis (columns, Hermite-normalized) of span_Q(cols of s) ∩ Z^n.
inline Matrix saturate_columns(const Matrix& s)
{
    if (!s.field().is_rational())
        throw DomainError("saturation needs a rational matrix");
    std::size_t n = s.rows();
    Matrix basis = s.image();
    if (basis.cols() == 0)
        return Matrix(n, 0);
    // rows of `perp` cut out the span
    Matrix perp = basis.transpose().kernel().transpose();
    IntMatrix c(perp.rows(), std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < perp.rows(); ++i) {
        mpz_class den = 1;
        for (std::size_t j = 0; j < n; ++j)
            den = lcm(den, perp(i, j).rational().get_den());
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class v = perp(i, j).rational() * den;
            c[i][j] = v.get_num();
        }
    }
    IntMatrix ker = integer_kernel(c, n);
    IntMatrix rows(ker.empty() ? 0 : ker[0].size(), std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            rows[j][i] = ker[i][j];
    rows = hermite_rows(rows, n);
    Matrix out(n, rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            out(i, j) = Scalar(rows[j][i]);
    return out;
}

} // namespace bggkit
