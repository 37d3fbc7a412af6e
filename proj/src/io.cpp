#include "rank1/io.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "rank1/errors.hpp"

namespace rank1 {

namespace {

Rational token_value(const std::string& tok, std::size_t line)
{
    try {
        return Rational::parse(tok);
    } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string t; is >> t;)
        out.push_back(t);
    return out;
}

std::size_t dimension(const std::string& tok, std::size_t line)
{
    if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": bad dimension '" + tok + "'");
    const std::size_t v = std::stoul(tok);
    if (v == 0)
        throw ParseError("line " + std::to_string(line) + ": zero dimension");
    return v;
}

mpz_class max_abs(const RatMatrix& M)
{
    const Rational r = M.max_abs_entry();
    return r.ceil();
}

Rational noise(std::mt19937_64& rng, const mpz_class& D)
{
    std::uniform_int_distribution<std::uint64_t> u(1, (std::uint64_t{1} << 31) - 1);
    return Rational(mpz_class(static_cast<unsigned long>(u(rng))), D * (mpz_class(1) << 31));
}

mpz_class noise_scale(std::size_t m, std::size_t n, const mpz_class& biggest)
{
    return mpz_class(2) * static_cast<unsigned long>(m + n) * (biggest + 1) * 1000000;
}

}  // namespace

BimatrixGame parse_game(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        rows.emplace_back(lineno, split(line));
    }
    if (rows.empty())
        throw ParseError("empty game file");
    const auto& [hline, header] = rows[0];
    if (header.size() != 2)
        throw ParseError("line " + std::to_string(hline) + ": header must be 'm n'");
    const std::size_t m = dimension(header[0], hline), n = dimension(header[1], hline);
    if (rows.size() != 1 + 2 * m)
        throw ParseError("expected " + std::to_string(2 * m) + " matrix rows, found " +
                         std::to_string(rows.size() - 1));
    RatMatrix A(m, n), B(m, n);
    for (std::size_t r = 0; r < 2 * m; ++r) {
        const auto& [ln, toks] = rows[1 + r];
        if (toks.size() != n)
            throw ParseError("line " + std::to_string(ln) + ": expected " + std::to_string(n) + " entries");
        RatMatrix& M = r < m ? A : B;
        for (std::size_t j = 0; j < n; ++j)
            M(r % m, j) = token_value(toks[j], ln);
    }
    return BimatrixGame(std::move(A), std::move(B));
}

BimatrixGame read_game_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_game(ss.str());
}

std::string render_game(const BimatrixGame& game)
{
    std::ostringstream os;
    os << game.m() << ' ' << game.n() << '\n';
    for (const RatMatrix* M : {&game.A, &game.B})
        for (std::size_t i = 0; i < game.m(); ++i)
            for (std::size_t j = 0; j < game.n(); ++j)
                os << (*M)(i, j).str() << (j + 1 == game.n() ? '\n' : ' ');
    return os.str();
}

RatVector parse_rational_list(std::string_view text)
{
    std::vector<Rational> vals;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        try {
            vals.push_back(Rational::parse(tok));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    RatVector v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        v[i] = vals[i];
    return v;
}

BimatrixGame perturb_game(const BimatrixGame& game, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const mpz_class D = noise_scale(game.m(), game.n(), std::max(max_abs(game.A), max_abs(game.B)));
    RatMatrix A = game.A, B = game.B;
    for (RatMatrix* M : {&A, &B})
        for (std::size_t i = 0; i < game.m(); ++i)
            for (std::size_t j = 0; j < game.n(); ++j)
                (*M)(i, j) += noise(rng, D);
    return BimatrixGame(std::move(A), std::move(B));
}

Rank1Decomposition perturb_rank1(const Rank1Decomposition& d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    mpz_class biggest = max_abs(d.A);
    for (const auto& b : d.beta)
        biggest = std::max(biggest, mpz_class(b.abs().ceil()));
    const mpz_class D = noise_scale(d.m(), d.n(), biggest);
    Rank1Decomposition out = d;
    for (std::size_t i = 0; i < d.m(); ++i)
        for (std::size_t j = 0; j < d.n(); ++j)
            out.A(i, j) += noise(rng, D);
    for (std::size_t j = 0; j < d.n(); ++j)
        out.beta[j] += noise(rng, D);
    return out;
}

}  // namespace rank1
