#include "rank1/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rank1 {

Rational::Rational(long numerator, long denominator)
    : Rational(mpz_class(numerator), mpz_class(denominator))
{
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator)
{
    if (denominator == 0)
        throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(numerator, denominator);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& value) : v_(value)
{
    if (v_.get_den() == 0)
        throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

namespace {

bool valid_integer_token(std::string_view s, bool allow_sign)
{
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '+' || s[0] == '-'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    if (!s.empty() && s[0] == '+')
        s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer_token(text, true))
            throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
        return Rational(parse_integer(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_integer_token(num, true) || !valid_integer_token(den, false))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    const mpz_class d = parse_integer(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

Rational Rational::abs() const
{
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

mpz_class Rational::floor() const
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

mpz_class Rational::ceil() const
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rational Rational::operator-() const
{
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    v_ += rhs.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    v_ -= rhs.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    v_ *= rhs.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("Rational: division by zero");
    v_ /= rhs.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

mpz_class lcm(const mpz_class& a, const mpz_class& b)
{
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace rank1
