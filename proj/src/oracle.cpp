#include "rank1/oracle.hpp"

#include <algorithm>
#include <functional>

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"
#include "rank1/lp.hpp"

namespace rank1 {

namespace {

void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    if (k > n)
        return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    for (;;) {
        f(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

/**
 * Mix over `cols` of M restricted to `rows` that makes every row equal:
 * sum_c M(r, c) z_c = u, sum z = 1. Full-length, or empty if singular or
 * negative.
 */
std::optional<RatVector> indifference(const RatMatrix& M, const std::vector<std::size_t>& rows,
                                      const std::vector<std::size_t>& cols, std::size_t full)
{
    const std::size_t k = rows.size();
    RatMatrix sys(k + 1, k + 1);
    RatVector rhs(k + 1);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c)
            sys(r, c) = M(rows[r], cols[c]);
        sys(r, k) = -1;
    }
    for (std::size_t c = 0; c < k; ++c)
        sys(k, c) = 1;
    rhs[k] = 1;
    RatVector z;
    try {
        z = solve_linear_system(sys, rhs);
    } catch (const Singular&) {
        return std::nullopt;
    }
    RatVector out(full);
    for (std::size_t c = 0; c < k; ++c) {
        if (z[c].sign() < 0)
            return std::nullopt;
        out[cols[c]] = z[c];
    }
    return out;
}

}  // namespace

OracleResult support_enumeration(const BimatrixGame& game)
{
    const std::size_t m = game.m(), n = game.n();
    if (m > 6 || n > 6)
        throw TooLarge("support enumeration is limited to 6x6");
    OracleResult out;
    out.method = "support_enumeration";
    const RatMatrix Bt = game.B.transpose();
    std::vector<MixedProfile> found;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        for_each_combination(m, k, [&](const std::vector<std::size_t>& I) {
            for_each_combination(n, k, [&](const std::vector<std::size_t>& J) {
                // y makes the rows in I indifferent under A; x does the same for J under B.
                const auto y = indifference(game.A, I, J, n);
                if (!y)
                    return;
                const auto x = indifference(Bt, J, I, m);
                if (!x)
                    return;
                MixedProfile p{*x, *y};
                if (verify_equilibrium(game, p))
                    found.push_back(std::move(p));
            });
        });
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (auto& p : found)
        out.equilibria.push_back(EquilibriumRecord::make(game, std::move(p), out.method));
    return out;
}

std::vector<PolytopeVertex> enumerate_vertices(const Polytope& poly)
{
    if (basis_count(poly) > 1'000'000)
        throw TooLarge("too many bases to enumerate vertices");
    std::vector<PolytopeVertex> out;
    for_each_combination(poly.inequality_count(), poly.basis_size(), [&](const std::vector<std::size_t>& b) {
        auto v = poly.vertex_from_basis(b);
        if (!v)
            return;
        // A degenerate point is reached from several bases; keep the first.
        for (const auto& u : out)
            if (u.coords == v->coords)
                return;
        out.push_back(std::move(*v));
    });
    return out;
}

std::vector<std::pair<PolytopeVertex, PolytopeVertex>> fully_labeled_pairs(const PathInstance& inst)
{
    if (inst.m() > 4 || inst.n() > 4)
        throw TooLarge("fully-labeled pair enumeration is limited to 4x4");
    const auto vs = enumerate_vertices(inst.P);
    const auto ws = enumerate_vertices(inst.Q);
    const std::size_t total = inst.m() + inst.n();
    std::vector<std::pair<PolytopeVertex, PolytopeVertex>> out;
    for (const auto& v : vs)
        for (const auto& w : ws)
            if (set_union(v.labels, w.labels).size() == total)
                out.emplace_back(v, w);
    return out;
}

EquilibriumRecord zero_sum_solve(const RatMatrix& A)
{
    // Row player: max u with (x^T A)_j >= u, x >= 0, sum x = 1. Variables (x, u).
    auto solve_side = [](const RatMatrix& M) {
        const std::size_t a = M.rows(), b = M.cols();
        LinearProgramSpec lp;
        lp.objective = RatVector(a + 1);
        lp.objective[a] = 1;
        lp.constraints = RatMatrix(b + a + 1, a + 1);
        for (std::size_t j = 0; j < b; ++j) {
            for (std::size_t i = 0; i < a; ++i)
                lp.constraints(j, i) = -M(i, j);
            lp.constraints(j, a) = 1;
            lp.relations.push_back(Relation::LessEqual);
        }
        for (std::size_t i = 0; i < a; ++i) {
            lp.constraints(b + i, i) = -1;
            lp.relations.push_back(Relation::LessEqual);
        }
        for (std::size_t i = 0; i < a; ++i)
            lp.constraints(b + a, i) = 1;
        lp.relations.push_back(Relation::Equal);
        lp.rhs = RatVector(b + a + 1);
        lp.rhs[b + a] = 1;
        const LPSolution s = solve_lp(lp);
        if (s.status != LPStatus::Optimal)
            throw std::logic_error("zero-sum LP not optimal");
        RatVector z(a);
        for (std::size_t i = 0; i < a; ++i)
            z[i] = s.point[i];
        return std::pair{z, s.value};
    };
    const auto [x, v1] = solve_side(A);
    // Column player maximizes min_i -(A y)_i.
    const auto [y, v2] = solve_side((-A).transpose());
    if (v1 != -v2)
        throw std::logic_error("zero-sum LP duality gap");
    const BimatrixGame game(A, -A);
    return EquilibriumRecord::make(game, MixedProfile{x, y}, "zero_sum_solve");
}

bool same_equilibria(std::vector<EquilibriumRecord> a, std::vector<EquilibriumRecord> b)
{
    auto profiles = [](const std::vector<EquilibriumRecord>& r) {
        std::vector<MixedProfile> p;
        for (const auto& e : r)
            p.push_back(e.profile);
        std::sort(p.begin(), p.end());
        return p;
    };
    return profiles(a) == profiles(b);
}

}  // namespace rank1
