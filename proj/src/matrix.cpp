#include "rank1/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rank1/errors.hpp"

namespace rank1 {

bool RatVector::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

Rational RatVector::sum() const
{
    Rational s;
    for (const auto& r : data_)
        s += r;
    return s;
}

Rational RatVector::min() const { return data_.at(argmin()); }
Rational RatVector::max() const { return data_.at(argmax()); }

std::size_t RatVector::argmin() const
{
    if (data_.empty())
        throw std::out_of_range("argmin of empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < data_.size(); ++i)
        if (data_[i] < data_[best])
            best = i;
    return best;
}

std::size_t RatVector::argmax() const
{
    if (data_.empty())
        throw std::out_of_range("argmax of empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < data_.size(); ++i)
        if (data_[i] > data_[best])
            best = i;
    return best;
}

RatVector RatVector::operator-() const
{
    RatVector r(*this);
    for (auto& x : r.data_)
        x = -x;
    return r;
}

RatVector& RatVector::operator+=(const RatVector& rhs)
{
    if (rhs.size() != size())
        throw DimensionMismatch("vector sizes differ");
    for (std::size_t i = 0; i < size(); ++i)
        data_[i] += rhs.data_[i];
    return *this;
}

RatVector& RatVector::operator-=(const RatVector& rhs)
{
    if (rhs.size() != size())
        throw DimensionMismatch("vector sizes differ");
    for (std::size_t i = 0; i < size(); ++i)
        data_[i] -= rhs.data_[i];
    return *this;
}

RatVector& RatVector::operator*=(const Rational& s)
{
    for (auto& x : data_)
        x *= s;
    return *this;
}

Rational dot(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot: sizes differ");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::string to_string(const RatVector& v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatVector& v)
{
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    return os << ')';
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw DimensionMismatch("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::outer(const RatVector& col, const RatVector& row)
{
    RatMatrix m(col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i)
        for (std::size_t j = 0; j < row.size(); ++j)
            m(i, j) = col[i] * row[j];
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows)
{
    if (rows.empty())
        return {};
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw DimensionMismatch("ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Rational& RatMatrix::operator()(std::size_t i, std::size_t j)
{
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("RatMatrix index");
    return data_[i * cols_ + j];
}

const Rational& RatMatrix::operator()(std::size_t i, std::size_t j) const
{
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("RatMatrix index");
    return data_[i * cols_ + j];
}

RatVector RatMatrix::row(std::size_t i) const
{
    RatVector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        r[j] = (*this)(i, j);
    return r;
}

RatVector RatMatrix::col(std::size_t j) const
{
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const
{
    RatMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a)
        for (std::size_t b = 0; b < col_idx.size(); ++b)
            s(a, b) = (*this)(row_idx[a], col_idx[b]);
    return s;
}

bool RatMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

Rational RatMatrix::min_entry() const
{
    if (data_.empty())
        throw std::out_of_range("min_entry of empty matrix");
    return *std::min_element(data_.begin(), data_.end());
}

Rational RatMatrix::max_abs_entry() const
{
    Rational best;
    for (const auto& r : data_)
        if (abs(r) > best)
            best = abs(r);
    return best;
}

RatMatrix RatMatrix::operator-() const
{
    RatMatrix r(*this);
    for (auto& x : r.data_)
        x = -x;
    return r;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& rhs)
{
    if (rhs.rows_ != rows_ || rhs.cols_ != cols_)
        throw DimensionMismatch("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] += rhs.data_[k];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& rhs)
{
    if (rhs.rows_ != rows_ || rhs.cols_ != cols_)
        throw DimensionMismatch("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] -= rhs.data_[k];
    return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& s)
{
    for (auto& x : data_)
        x *= s;
    return *this;
}

RatMatrix RatMatrix::shifted(const Rational& s) const
{
    RatMatrix r(*this);
    for (auto& x : r.data_)
        x += s;
    return r;
}

RatVector operator*(const RatMatrix& m, const RatVector& v)
{
    if (m.cols() != v.size())
        throw DimensionMismatch("matrix-vector shapes differ");
    RatVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational s;
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

RatVector left_multiply(const RatVector& x, const RatMatrix& m)
{
    if (m.rows() != x.size())
        throw DimensionMismatch("vector-matrix shapes differ");
    RatVector r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational s;
        for (std::size_t i = 0; i < m.rows(); ++i)
            s += x[i] * m(i, j);
        r[j] = s;
    }
    return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product shapes differ");
    RatMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", " : "") << '[';
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

}  // namespace rank1
