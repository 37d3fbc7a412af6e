#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "rank1/rational.hpp"

namespace rank1 {

/** Dense vector of rationals; length fixed at construction, accesses checked. */
class RatVector
{
    public:
        RatVector() = default;
        explicit RatVector(std::size_t size) : data_(size) {}
        RatVector(std::size_t size, const Rational& fill) : data_(size, fill) {}
        RatVector(std::initializer_list<Rational> values) : data_(values) {}
        explicit RatVector(std::vector<Rational> values) : data_(std::move(values)) {}

        std::size_t size() const { return data_.size(); }
        bool empty() const { return data_.empty(); }

        Rational& operator[](std::size_t i) { return data_.at(i); }
        const Rational& operator[](std::size_t i) const { return data_.at(i); }

        auto begin() const { return data_.begin(); }
        auto end() const { return data_.end(); }
        auto begin() { return data_.begin(); }
        auto end() { return data_.end(); }

        const std::vector<Rational>& values() const { return data_; }

        bool is_zero() const;
        Rational sum() const;
        Rational min() const;
        Rational max() const;
        /** Index of the first entry equal to min() / max(). */
        std::size_t argmin() const;
        std::size_t argmax() const;

        RatVector operator-() const;
        RatVector& operator+=(const RatVector& rhs);
        RatVector& operator-=(const RatVector& rhs);
        RatVector& operator*=(const Rational& s);
        friend RatVector operator+(RatVector a, const RatVector& b) { return a += b; }
        friend RatVector operator-(RatVector a, const RatVector& b) { return a -= b; }
        friend RatVector operator*(RatVector a, const Rational& s) { return a *= s; }
        friend RatVector operator*(const Rational& s, RatVector a) { return a *= s; }

        friend bool operator==(const RatVector&, const RatVector&) = default;
        friend auto operator<=>(const RatVector&, const RatVector&) = default;

    private:
        std::vector<Rational> data_;
};

Rational dot(const RatVector& a, const RatVector& b);

/** "(a, b, c)" with exact entries. */
std::string to_string(const RatVector& v);
std::ostream& operator<<(std::ostream& os, const RatVector& v);

/** Row-major dense matrix of rationals; dimensions fixed, accesses checked. */
class RatMatrix
{
    public:
        RatMatrix() = default;
        RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
        RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

        static RatMatrix identity(std::size_t n);
        static RatMatrix outer(const RatVector& col, const RatVector& row);
        static RatMatrix from_rows(const std::vector<RatVector>& rows);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        bool is_square() const { return rows_ == cols_; }

        Rational& operator()(std::size_t i, std::size_t j);
        const Rational& operator()(std::size_t i, std::size_t j) const;

        RatVector row(std::size_t i) const;
        RatVector col(std::size_t j) const;
        RatMatrix transpose() const;
        RatMatrix submatrix(const std::vector<std::size_t>& row_idx,
                            const std::vector<std::size_t>& col_idx) const;

        bool is_zero() const;
        Rational min_entry() const;
        Rational max_abs_entry() const;

        RatMatrix operator-() const;
        RatMatrix& operator+=(const RatMatrix& rhs);
        RatMatrix& operator-=(const RatMatrix& rhs);
        RatMatrix& operator*=(const Rational& s);
        friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
        friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
        friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
        friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }

        /** Adds s to every entry. */
        RatMatrix shifted(const Rational& s) const;

        friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Rational> data_;
};

RatVector operator*(const RatMatrix& m, const RatVector& v);
/** Row vector times matrix: x^T M. */
RatVector left_multiply(const RatVector& x, const RatMatrix& m);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

}  // namespace rank1
