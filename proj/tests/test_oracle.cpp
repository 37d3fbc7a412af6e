#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "rank1/oracle.hpp"

using namespace rank1;
using namespace rank1::testing;

TEST_CASE("support enumeration on small games")
{
    const Rational h(1, 2);
    const auto mp = support_enumeration(matching_pennies()).equilibria;
    REQUIRE(mp.size() == 1);
    CHECK(mp[0].profile == MixedProfile{{h, h}, {h, h}});
    CHECK(mp[0].payoff1 == 0);

    const auto dom = support_enumeration(BimatrixGame(mat({{2, 2}, {0, 0}}), mat({{1, 0}, {0, 0}}))).equilibria;
    REQUIRE(dom.size() == 1);
    CHECK(dom[0].profile == MixedProfile{{1, 0}, {1, 0}});

    // Battle of the sexes: two pure, one mixed.
    const auto bos = support_enumeration(BimatrixGame(mat({{2, 0}, {0, 1}}), mat({{1, 0}, {0, 2}}))).equilibria;
    REQUIRE(bos.size() == 3);
    CHECK(bos[1].profile == MixedProfile{{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}});

    CHECK_THROWS_AS(support_enumeration(BimatrixGame(RatMatrix(7, 7), RatMatrix(7, 7))), TooLarge);
}

TEST_CASE("nondegenerate games have an odd number of equilibria")
{
    std::mt19937_64 rng(61);
    int tested = 0;
    for (int t = 0; t < 60; ++t) {
        const BimatrixGame g = random_general(rng, 3, 3);
        if (!nondegenerate(embed_general(g, default_beta(3))))
            continue;
        ++tested;
        const auto eq = support_enumeration(g).equilibria;
        CHECK(eq.size() % 2 == 1);
        for (const auto& r : eq)
            CHECK(verify_equilibrium(g, r.profile));
        for (std::size_t i = 1; i < eq.size(); ++i)
            CHECK(eq[i - 1].profile < eq[i].profile);
    }
    CHECK(tested > 20);
}

TEST_CASE("vertex enumeration")
{
    // P for a 2x2 identity: simplex corners plus the mixed point.
    const auto vs = enumerate_vertices(build_P(mat({{1, 0}, {0, 1}})));
    CHECK(vs.size() == 3);
    std::set<RatVector> seen;
    for (const auto& v : vs)
        CHECK(seen.insert(v.coords).second);
}

TEST_CASE("fully-labeled pairs")
{
    const PathInstance one(GeneralDecomposition{mat({{2}}), mat({{-2}}), RatVector(1), RatVector{1}});
    CHECK(fully_labeled_pairs(one).empty());  // Q' has no vertex, only the ray

    const PathInstance inst(ex1());
    const auto pairs = fully_labeled_pairs(inst);
    const ComponentTrace path = trace_path(inst);
    CHECK(pairs.size() == path.nodes.size() + 6);

    // Each pair lies on exactly one component.
    std::map<NodeKey, int> cover;
    for (const auto& u : path.nodes)
        ++cover[u.key()];
    std::set<NodeKey> done;
    for (const auto& u : path.nodes)
        done.insert(u.key());
    for (const auto& [v, w] : pairs) {
        const PathNode u = make_node(inst, v, w);
        if (done.count(u.key()))
            continue;
        for (const auto& c : trace_cycle(inst, u).nodes) {
            ++cover[c.key()];
            done.insert(c.key());
        }
    }
    CHECK(cover.size() == pairs.size());
    for (const auto& [k, c] : cover)
        CHECK(c == 1);

    std::mt19937_64 rng(62);
    for (int t = 0; t < 10; ++t) {
        const PathInstance ri(GeneralDecomposition::from_rank1(random_rank1_in(rng, 2, 4)));
        CHECK(fully_labeled_pairs(ri).size() == trace_path(ri).nodes.size());
    }
    CHECK_THROWS_AS(fully_labeled_pairs(PathInstance(GeneralDecomposition::from_rank1(
                        Rank1Decomposition{RatMatrix(5, 5), RatVector(5), default_beta(5)}))),
                    TooLarge);
}

TEST_CASE("zero-sum LP")
{
    CHECK(zero_sum_solve(matching_pennies().A).payoff1 == 0);
    const EquilibriumRecord one = zero_sum_solve(mat({{1}}));
    CHECK(one.payoff1 == 1);
    CHECK(one.profile == MixedProfile{{1}, {1}});

    std::mt19937_64 rng(63);
    for (int t = 0; t < 10; ++t) {
        const RatMatrix A = random_matrix(rng, 4, 4, 9, true);
        const EquilibriumRecord r = zero_sum_solve(A);
        CHECK(verify_equilibrium(BimatrixGame(A, -A), r.profile));
        // Duality: the row player's guarantee equals the column player's cap.
        Rational lo, hi;
        bool first = true;
        for (std::size_t j = 0; j < 4; ++j) {
            const Rational v = dot(r.profile.x, A.col(j));
            lo = first ? v : std::min(lo, v);
            first = false;
        }
        first = true;
        const RatVector Ay = A * r.profile.y;
        for (std::size_t i = 0; i < 4; ++i) {
            hi = first ? Ay[i] : std::max(hi, Ay[i]);
            first = false;
        }
        CHECK(lo == r.payoff1);
        CHECK(hi == r.payoff1);
    }
}
