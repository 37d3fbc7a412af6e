#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "rank1/oracle.hpp"
#include "rank1/parametric.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {

PathInstance r1a_instance()
{
    return PathInstance(GeneralDecomposition::from_rank1(decompose_rank1(read_game_file(data_file("r1a.game")))));
}

Rational random_delta(std::mt19937_64& rng, long lo, long hi)
{
    std::uniform_int_distribution<long> q(1, 9);
    const long d = q(rng);
    return Rational(std::uniform_int_distribution<long>(lo * d, hi * d)(rng), d);
}

Rational g_of(const PathInstance& inst, const RatVector& v, const RatVector& w)
{
    Rational s = w[inst.m()];
    for (std::size_t j = 0; j < inst.n(); ++j)
        s += inst.d.beta[j] * v[j];
    return s;
}

}  // namespace

TEST_CASE("LP(delta) on R1a")
{
    const PathInstance inst = r1a_instance();
    const Rational gmin = inst.d.gamma.min();
    const OptSet o = solve_lp_delta(inst, gmin);
    CHECK(o.p_value == o.q_value);
    CHECK(complementarity_gap(inst, o.v_point, o.w_point) == 0);
    CHECK(o.w_point[inst.m()] == gmin);

    // Below lambda_s the optimum sits on the first ray, at x = e_{i_s}.
    const ComponentTrace t = trace_path(inst);
    const LambdaBounds lb = lambda_bounds(inst.d);
    const StartInfo si = start_indices(inst.d.A, inst.d.beta);
    const OptSet low = solve_lp_delta(inst, lb.lambda_s - 3);
    CHECK(low.edge.key() == t.edges.front().key());
    for (std::size_t i = 0; i < inst.m(); ++i)
        CHECK(low.w_point[i] == (i == si.i_s ? 1 : 0));
    const OptSet high = solve_lp_delta(inst, lb.lambda_e + 3);
    CHECK(high.edge.key() == t.edges.back().key());
}

TEST_CASE("LP(delta) requires the rank-1 form")
{
    CHECK_THROWS(solve_lp_delta(PathInstance(ex1()), 0));
}

TEST_CASE("OPT(delta): zero gap, fully labeled, lambda = delta, monotone g")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 10; ++k) {
        const Rank1Decomposition d = random_rank1_in(rng, 2, 4);
        const PathInstance inst(GeneralDecomposition::from_rank1(d));
        std::vector<Rational> deltas;
        for (int s = 0; s < 10; ++s)
            deltas.push_back(random_delta(rng, -30, 30));
        std::sort(deltas.begin(), deltas.end());
        deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
        std::optional<Rational> prev;
        for (const auto& delta : deltas) {
            const OptSet o = solve_lp_delta(inst, delta);
            CHECK(complementarity_gap(inst, o.v_point, o.w_point) == 0);
            CHECK(o.w_point[d.m()] == delta);
            CHECK(set_union(inst.P.labels_at(o.v_point), inst.Q.labels_at(o.w_point)).size() == d.m() + d.n());
            const Rational g = g_of(inst, o.v_point, o.w_point);
            if (prev)
                CHECK(*prev < g);
            prev = g;
        }
    }
}

TEST_CASE("is_ne on R1a")
{
    const BimatrixGame game = read_game_file(data_file("r1a.game"));
    const PathInstance inst = r1a_instance();
    const RatVector& gamma = inst.d.gamma;
    const auto oracle = support_enumeration(game).equilibria;
    REQUIRE(oracle.size() == 3);
    for (const auto& r : oracle) {
        const IsNEOutcome o = is_ne(inst, gamma, dot(gamma, r.profile.x));
        REQUIRE(o.kind == IsNEOutcome::Kind::Found);
        REQUIRE(o.found.size() == 1);
        CHECK(o.found[0].profile == r.profile);
        CHECK(o.found[0].payoff1 == r.payoff1);
    }
    bool none_at_min = true;
    for (const auto& r : oracle)
        none_at_min = none_at_min && dot(gamma, r.profile.x) != gamma.min();
    if (none_at_min) {
        const IsNEOutcome o = is_ne(inst, gamma, gamma.min());
        CHECK(o.kind == IsNEOutcome::Kind::Below);
        CHECK(o.opt_side < 0);
    }
}

TEST_CASE("is_ne on a zero-sum game at delta = 0")
{
    const Rank1Decomposition d = decompose_rank1(matching_pennies());
    const PathInstance inst(GeneralDecomposition::from_rank1(d));
    const IsNEOutcome o = is_ne(inst, d.gamma, 0);
    REQUIRE(o.kind == IsNEOutcome::Kind::Found);
    const Rational h(1, 2);
    CHECK(o.found[0].profile == MixedProfile{{h, h}, {h, h}});
}

TEST_CASE("edge and hyperplane")
{
    // m = 1: w = (x, lambda, pi2), lambda running from -1 to +1.
    PathEdge e;
    e.kind = EdgeKind::VFixed;
    e.fixed.coords = RatVector{1, 0};
    e.moving.base.coords = RatVector{1, -1, 0};
    e.moving.direction = RatVector{0, 2, 0};
    e.moving.t_max = Rational(1);
    const Hyperplane h{RatVector{0}};
    auto c = edge_hyperplane_intersection(e, h);
    REQUIRE(c.size() == 1);
    CHECK(c[0].t == Rational(1, 2));
    CHECK(c[0].orientation_index == 1);
    e.forward = false;
    CHECK(edge_hyperplane_intersection(e, h)[0].orientation_index == -1);

    CHECK(edge_hyperplane_intersection(e, Hyperplane{RatVector{-5}}).empty());  // lambda + 5 > 0 throughout
    e.moving.direction = RatVector{0, 0, 1};
    e.moving.base.coords = RatVector{1, 0, 0};
    CHECK_THROWS_AS(edge_hyperplane_intersection(e, h), EdgeInHyperplane);
    e.moving.base.coords = RatVector{1, -1, 0};
    e.moving.direction = RatVector{0, 1, 0};
    CHECK_THROWS_AS(edge_hyperplane_intersection(e, h), DegeneratePolytope);  // crosses at the far vertex

    // Every R1a equilibrium comes from exactly one path edge.
    const PathInstance inst = r1a_instance();
    const ComponentTrace t = trace_path(inst);
    std::size_t crossings = 0;
    for (const auto& pe : t.edges)
        crossings += edge_hyperplane_intersection(pe, Hyperplane{inst.d.gamma}).size();
    CHECK(crossings == 3);
}

TEST_CASE("LP^k(delta)")
{
    const Rank1Decomposition r = decompose_rank1(read_game_file(data_file("r1a.game")));
    const RankKInstance one(RankKDecomposition{r.A, {r.gamma}, {r.beta}});
    const PathInstance inst(GeneralDecomposition::from_rank1(r));
    std::mt19937_64 rng(42);
    for (int s = 0; s < 5; ++s) {
        const Rational delta = random_delta(rng, -10, 10);
        const OptK k = solve_lp_k(one, RatVector{delta});
        const OptSet o = solve_lp_delta(inst, delta);
        CHECK(k.objective == 0);
        CHECK(k.w_point == o.w_point);
    }

    const RankKInstance k2i(k2());
    const RankKDecomposition& kd = k2i.d;
    const OptK lo = solve_lp_k(k2i, RatVector{kd.gammas[0].min(), kd.gammas[1].min()});
    CHECK(lo.objective == 0);

    auto gk = [&](const OptK& o) {
        std::vector<Rational> g;
        for (std::size_t l = 0; l < 2; ++l)
            g.push_back(o.w_point[3 + l] + dot(kd.betas[l], RatVector{o.v_point[0], o.v_point[1], o.v_point[2]}));
        return g;
    };
    for (int s = 0; s < 10; ++s) {
        const RatVector a{random_delta(rng, 0, 1), random_delta(rng, 0, 1)};
        const RatVector b{random_delta(rng, 0, 1), random_delta(rng, 0, 1)};
        const OptK oa = solve_lp_k(k2i, a);
        if (a != b)
            CHECK(gk(oa) != gk(solve_lp_k(k2i, b)));
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            CHECK(solve_lp_k(k2i, a, seed).w_point == oa.w_point);
    }
}

TEST_CASE("fixed-point function")
{
    const Rank1Decomposition r = decompose_rank1(read_game_file(data_file("r1a.game")));
    const RankKInstance one(RankKDecomposition{r.A, {r.gamma}, {r.beta}});
    for (const auto& e : support_enumeration(r.game()).equilibria) {
        const Rational lam = dot(r.gamma, e.profile.x);
        CHECK(fixed_point_eval(one, {r.gamma}, RatVector{lam}) == RatVector{lam});
    }
    CHECK_THROWS_AS(fixed_point_eval(one, {r.gamma}, RatVector{r.gamma.max() + 1}), OutOfBox);

    const RankKInstance k2i(k2());
    const auto& gs = k2i.d.gammas;
    std::mt19937_64 rng(43);
    for (int s = 0; s < 5; ++s) {
        const RatVector a{random_delta(rng, 0, 1), random_delta(rng, 0, 1)};
        const RatVector f = fixed_point_eval(k2i, gs, a);
        for (std::size_t l = 0; l < 2; ++l) {
            CHECK(gs[l].min() <= f[l]);
            CHECK(f[l] <= gs[l].max());
        }
        // Along a short segment the map is affine unless the basis changes.
        const RatVector dir{random_delta(rng, -1, 1) / 1000, random_delta(rng, -1, 1) / 1000};
        const RatVector b = a + dir, c = a + dir * Rational(2);
        bool inside = true;
        for (std::size_t l = 0; l < 2; ++l)
            inside = inside && c[l] >= 0 && c[l] <= 1 && b[l] >= 0 && b[l] <= 1;
        if (!inside)
            continue;
        const RatVector fb = fixed_point_eval(k2i, gs, b), fc = fixed_point_eval(k2i, gs, c);
        const LabelSet la = k2i.Qk.labels_at(solve_lp_k(k2i, a).w_point);
        const LabelSet lc = k2i.Qk.labels_at(solve_lp_k(k2i, c).w_point);
        if (la == lc && la.size() == 3)
            CHECK(fb - f == fc - fb);
    }
}
