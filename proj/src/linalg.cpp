#include "rank1/linalg.hpp"

#include <utility>

#include "rank1/errors.hpp"

namespace rank1 {

namespace {

using IntGrid = std::vector<std::vector<mpz_class>>;

}  // namespace

Rational determinant(const RatMatrix& m)
{
    if (!m.is_square())
        throw NotSquare("determinant of a " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + " matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;

    // Clear denominators row by row; det(m) = det(grid) / prod(scale).
    IntGrid a(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class row_lcm = 1;
        for (std::size_t j = 0; j < n; ++j)
            row_lcm = lcm(row_lcm, m(i, j).denominator());
        scale *= row_lcm;
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m(i, j).numerator() * (row_lcm / m(i, j).denominator());
    }

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && a[swap_with][k] == 0)
                ++swap_with;
            if (swap_with == n)
                return 0;
            std::swap(a[k], a[swap_with]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return Rational(a[n - 1][n - 1] * sign, scale);
}

int determinant_sign(const RatMatrix& m)
{
    return determinant(m).sign();
}

RatVector solve_linear_system(const RatMatrix& m, const RatVector& rhs)
{
    if (!m.is_square())
        throw NotSquare("solve_linear_system: matrix not square");
    if (rhs.size() != m.rows())
        throw DimensionMismatch("solve_linear_system: rhs length differs from row count");
    const std::size_t n = m.rows();

    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m(i, j);
        a[i][n] = rhs[i];
    }

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero())
            ++p;
        if (p == n)
            throw Singular("solve_linear_system: singular matrix");
        std::swap(a[k], a[p]);
        const Rational inv = Rational(1) / a[k][k];
        for (std::size_t j = k; j <= n; ++j)
            a[k][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k].is_zero())
                continue;
            const Rational f = a[i][k];
            for (std::size_t j = k; j <= n; ++j)
                a[i][j] -= f * a[k][j];
        }
    }

    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n];
    return x;
}

std::vector<std::size_t> independent_rows(const RatMatrix& m)
{
    // Echelon basis kept as (pivot column, normalized row).
    std::vector<std::pair<std::size_t, std::vector<Rational>>> basis;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rational> r(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] = m(i, j);
        for (const auto& [pc, b] : basis) {
            if (r[pc].is_zero())
                continue;
            const Rational f = r[pc];
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] -= f * b[j];
        }
        std::size_t pc = 0;
        while (pc < r.size() && r[pc].is_zero())
            ++pc;
        if (pc == r.size())
            continue;
        const Rational inv = Rational(1) / r[pc];
        for (auto& x : r)
            x *= inv;
        // Keep earlier basis rows reduced in the new pivot column.
        for (auto& [opc, b] : basis) {
            if (b[pc].is_zero())
                continue;
            const Rational f = b[pc];
            for (std::size_t j = 0; j < b.size(); ++j)
                b[j] -= f * r[j];
        }
        basis.emplace_back(pc, std::move(r));
        chosen.push_back(i);
    }
    return chosen;
}

std::size_t matrix_rank(const RatMatrix& m)
{
    return independent_rows(m).size();
}

}  // namespace rank1
