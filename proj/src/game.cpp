#include "rank1/game.hpp"

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"

namespace rank1 {

BimatrixGame::BimatrixGame(RatMatrix a, RatMatrix b) : A(std::move(a)), B(std::move(b))
{
    if (A.rows() == 0 || A.cols() == 0)
        throw DimensionMismatch("game needs at least one strategy per player");
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionMismatch("payoff matrices differ in shape");
}

bool MixedProfile::is_valid() const
{
    for (const auto* v : {&x, &y}) {
        if (v->empty() || v->sum() != 1)
            return false;
        for (const auto& e : *v)
            if (e.sign() < 0)
                return false;
    }
    return true;
}

SupportPair support_of(const MixedProfile& p)
{
    SupportPair s;
    for (std::size_t i = 0; i < p.x.size(); ++i)
        if (p.x[i].sign() > 0)
            s.I.push_back(i);
    for (std::size_t j = 0; j < p.y.size(); ++j)
        if (p.y[j].sign() > 0)
            s.J.push_back(j);
    return s;
}

EquilibriumRecord EquilibriumRecord::make(const BimatrixGame& game, MixedProfile profile,
                                          std::string provenance)
{
    EquilibriumRecord r;
    r.payoff1 = dot(profile.x, game.A * profile.y);
    r.payoff2 = dot(profile.x, game.B * profile.y);
    r.support = support_of(profile);
    r.profile = std::move(profile);
    r.provenance = std::move(provenance);
    return r;
}

BimatrixGame Rank1Decomposition::game() const
{
    return BimatrixGame(A, -A + RatMatrix::outer(gamma, beta));
}

BimatrixGame GeneralDecomposition::game() const
{
    return BimatrixGame(A, C + RatMatrix::outer(gamma, beta));
}

GeneralDecomposition GeneralDecomposition::from_rank1(const Rank1Decomposition& d)
{
    return {d.A, -d.A, d.gamma, d.beta};
}

BimatrixGame RankKDecomposition::game() const
{
    RatMatrix b = -A;
    for (std::size_t l = 0; l < k(); ++l)
        b += RatMatrix::outer(gammas[l], betas[l]);
    return BimatrixGame(A, b);
}

RatVector default_beta(std::size_t n)
{
    RatVector b(n);
    for (std::size_t j = 0; j < n; ++j)
        b[j] = static_cast<long>(j + 1);
    return b;
}

bool verify_equilibrium(const BimatrixGame& game, const MixedProfile& p)
{
    if (p.x.size() != game.m() || p.y.size() != game.n())
        throw DimensionMismatch("profile length differs from game shape");
    if (!p.is_valid())
        return false;
    const RatVector row_payoffs = game.A * p.y;
    const RatVector col_payoffs = left_multiply(p.x, game.B);
    const Rational best_row = row_payoffs.max();
    const Rational best_col = col_payoffs.max();
    for (std::size_t i = 0; i < game.m(); ++i)
        if (p.x[i].sign() > 0 && row_payoffs[i] != best_row)
            return false;
    for (std::size_t j = 0; j < game.n(); ++j)
        if (p.y[j].sign() > 0 && col_payoffs[j] != best_col)
            return false;
    return true;
}

Rank1Decomposition decompose_rank1(const BimatrixGame& game, const std::optional<RatVector>& zero_sum_beta)
{
    const RatMatrix s = game.A + game.B;
    Rank1Decomposition d;
    d.A = game.A;
    if (s.is_zero()) {
        d.gamma = RatVector(game.m());
        d.beta = zero_sum_beta ? *zero_sum_beta : default_beta(game.n());
        if (d.beta.size() != game.n())
            throw DimensionMismatch("beta length differs from column count");
        return d;
    }
    if (matrix_rank(s) > 1)
        throw RankTooHigh("rank(A + B) = " + std::to_string(matrix_rank(s)));
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (s(i, j).is_zero())
                continue;
            d.beta = s.row(i);
            d.gamma = s.col(j) * (Rational(1) / s(i, j));
            return d;
        }
    }
    return d;  // unreachable
}

RankKDecomposition decompose_rank_k(const BimatrixGame& game)
{
    const RatMatrix s = game.A + game.B;
    RankKDecomposition d;
    d.A = game.A;
    const auto rows = independent_rows(s);
    if (rows.empty())
        return d;
    for (std::size_t r : rows)
        d.betas.push_back(s.row(r));

    // Express every row of s in the basis of betas using k independent columns.
    const std::size_t k = rows.size();
    const RatMatrix basis = RatMatrix::from_rows(d.betas);
    const auto cols = independent_rows(basis.transpose());
    const RatMatrix square = basis.submatrix([&] {
        std::vector<std::size_t> all(k);
        for (std::size_t l = 0; l < k; ++l)
            all[l] = l;
        return all;
    }(), cols);
    const RatMatrix square_t = square.transpose();
    d.gammas.assign(k, RatVector(game.m()));
    for (std::size_t i = 0; i < game.m(); ++i) {
        RatVector rhs(k);
        for (std::size_t c = 0; c < k; ++c)
            rhs[c] = s(i, cols[c]);
        const RatVector coef = solve_linear_system(square_t, rhs);
        for (std::size_t l = 0; l < k; ++l)
            d.gammas[l][i] = coef[l];
    }
    return d;
}

GeneralDecomposition embed_general(const BimatrixGame& game, const RatVector& beta)
{
    if (beta.size() != game.n())
        throw DimensionMismatch("beta length differs from column count");
    return {game.A, game.B, RatVector(game.m()), beta};
}

std::pair<Rank1Decomposition, Rational> integerize(const Rank1Decomposition& d)
{
    mpz_class c = 1;
    for (std::size_t i = 0; i < d.A.rows(); ++i)
        for (std::size_t j = 0; j < d.A.cols(); ++j)
            c = lcm(c, d.A(i, j).denominator());
    for (const auto& v : d.gamma)
        c = lcm(c, v.denominator());
    for (const auto& v : d.beta)
        c = lcm(c, v.denominator());
    const Rational cr(c);
    Rank1Decomposition out{d.A * (cr * cr), d.gamma * cr, d.beta * cr};
    return {out, cr * cr};
}

bool is_constant(const RatVector& v)
{
    for (const auto& e : v)
        if (e != v[0])
            return false;
    return true;
}

BimatrixGame reduce_constant_beta(const Rank1Decomposition& d)
{
    if (!is_constant(d.beta))
        throw NotConstantBeta("beta is not constant");
    return BimatrixGame(d.A, -d.A);
}

namespace {

Rational shift_for(const RatMatrix& m)
{
    const Rational lo = m.min_entry();
    if (lo.sign() > 0)
        return 0;
    return Rational(lo.abs().ceil()) + 1;
}

}  // namespace

ShiftedGame positivity_shift(const BimatrixGame& game)
{
    const Rational s1 = shift_for(game.A);
    const Rational s2 = shift_for(game.B);
    return {BimatrixGame(game.A.shifted(s1), game.B.shifted(s2)), s1, s2};
}

}  // namespace rank1
