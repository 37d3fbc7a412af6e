#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rank1 {

/**
 * Exact rational number p/q with arbitrary-precision numerator and
 * denominator.
 *
 * The value is always canonical: q > 0 and gcd(|p|, q) = 1, so two
 * rationals are equal iff their fields are equal.
 */
class Rational
{
    public:
        Rational() = default;
        Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
        Rational(int value) : v_(static_cast<long>(value)) {}  // NOLINT
        Rational(long numerator, long denominator);
        Rational(const mpz_class& numerator, const mpz_class& denominator);
        explicit Rational(const mpz_class& integer) : v_(integer) {}
        explicit Rational(const mpq_class& value);

        /** Parses "p", "+p", "-p" or "p/q" (q != 0). Throws std::invalid_argument. */
        static Rational parse(std::string_view text);

        mpz_class numerator() const { return v_.get_num(); }
        mpz_class denominator() const { return v_.get_den(); }
        const mpq_class& raw() const { return v_; }

        bool is_zero() const { return sgn(v_) == 0; }
        bool is_integer() const { return v_.get_den() == 1; }
        int sign() const { return sgn(v_); }

        Rational abs() const;
        mpz_class floor() const;
        mpz_class ceil() const;

        /** "p" for integers, "p/q" otherwise. */
        std::string str() const { return v_.get_str(); }
        double to_double() const { return v_.get_d(); }

        Rational operator-() const;
        Rational& operator+=(const Rational& rhs);
        Rational& operator-=(const Rational& rhs);
        Rational& operator*=(const Rational& rhs);
        /** Throws std::domain_error on division by zero. */
        Rational& operator/=(const Rational& rhs);

        friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
        friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
        friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
        friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

        friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
        friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
        {
            const int c = cmp(a.v_, b.v_);
            return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
        }

    private:
        mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }

/** Least common multiple of the two (positive) integers. */
mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace rank1

template <>
struct std::hash<rank1::Rational>
{
    std::size_t operator()(const rank1::Rational& r) const noexcept
    {
        return std::hash<std::string>{}(r.str());
    }
};
