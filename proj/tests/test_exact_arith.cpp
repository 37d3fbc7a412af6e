#include <doctest.h>

#include <random>

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"
#include "rank1/lp.hpp"
#include "oracles.hpp"

using namespace rank1;

TEST_CASE("rational canonical form")
{
    Rational a(6, -4);
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(a.str() == "-3/2");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational::parse("-12/8") == Rational(-3, 2));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
}

TEST_CASE("determinant examples")
{
    CHECK(determinant(RatMatrix::identity(3)) == 1);
    CHECK(determinant(RatMatrix{{0, 9}, {6, 6}}) == -54);
    CHECK(determinant(RatMatrix{{Rational(1, 2), 1}, {1, Rational(1, 3)}}) == Rational(-5, 6));
    CHECK(determinant(RatMatrix{{1, 2}, {2, 4}}) == 0);
    CHECK_THROWS_AS(determinant(RatMatrix(2, 3)), NotSquare);
}

TEST_CASE("determinant agrees with permutation expansion")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        RatMatrix m = testing::random_matrix(rng, n, n, 5, trial % 3 == 0);
        CHECK(determinant(m) == testing::naive_determinant(m));
    }
}

TEST_CASE("linear systems")
{
    CHECK(solve_linear_system(RatMatrix::identity(2), RatVector{Rational(2, 3), -1}) ==
          RatVector{Rational(2, 3), -1});
    CHECK(solve_linear_system(RatMatrix{{1, 1}, {1, -1}}, RatVector{1, 0}) ==
          RatVector{Rational(1, 2), Rational(1, 2)});
    CHECK_THROWS_AS(solve_linear_system(RatMatrix{{1, 2}, {2, 4}}, RatVector{1, 0}), Singular);
    CHECK_THROWS_AS(solve_linear_system(RatMatrix::identity(2), RatVector{1}), DimensionMismatch);

    // Vertex of P for the worked 3x3 example: rows 1 and 3 tight, y_3 = 0, sum y = 1.
    // Unknowns (y1, y2, y3, pi).
    RatMatrix sys{{0, 9, 9, -1}, {9, 7, 2, -1}, {0, 0, 1, 0}, {1, 1, 1, 0}};
    RatVector sol = solve_linear_system(sys, RatVector{0, 0, 0, 1});
    CHECK(sol == RatVector{Rational(2, 11), Rational(9, 11), 0, Rational(81, 11)});
}

TEST_CASE("rank")
{
    CHECK(matrix_rank(RatMatrix(3, 4)) == 0);
    CHECK(matrix_rank(RatMatrix::outer(RatVector{1, -2, 3}, RatVector{2, 5})) == 1);
    RatMatrix a{{0, 9, 9}, {6, 6, 5}, {9, 7, 2}};
    RatMatrix c{{6, 8, 6}, {5, 8, 8}, {4, 3, 0}};
    CHECK(matrix_rank(a + c) == 3);
    CHECK(independent_rows(RatMatrix{{1, 2}, {2, 4}, {0, 1}}) == std::vector<std::size_t>{0, 2});
}

namespace {

LinearProgramSpec segment_lp()
{
    LinearProgramSpec lp;
    lp.objective = RatVector{1, 0};
    lp.constraints = RatMatrix{{1, 1}, {-1, 0}, {0, -1}};
    lp.relations = {Relation::Equal, Relation::LessEqual, Relation::LessEqual};
    lp.rhs = RatVector{1, 0, 0};
    return lp;
}

void check_certificate(const LinearProgramSpec& lp, const LPSolution& s)
{
    REQUIRE(s.status == LPStatus::Optimal);
    RatVector lhs = lp.constraints * s.point;
    for (std::size_t r = 0; r < lp.rhs.size(); ++r) {
        if (lp.relations[r] == Relation::Equal)
            CHECK(lhs[r] == lp.rhs[r]);
        else
            CHECK(lhs[r] <= lp.rhs[r]);
    }
    for (std::size_t r : s.basis)
        CHECK(lhs[r] == lp.rhs[r]);
    CHECK(matrix_rank(lp.constraints.submatrix(s.basis, [&] {
              std::vector<std::size_t> all(lp.variable_count());
              for (std::size_t j = 0; j < all.size(); ++j)
                  all[j] = j;
              return all;
          }())) == s.basis.size());
    CHECK(s.value == dot(lp.objective, s.point));
}

}  // namespace

TEST_CASE("lp on a segment")
{
    auto lp = segment_lp();
    auto s = solve_lp(lp);
    check_certificate(lp, s);
    CHECK(s.value == 1);
    CHECK(s.point == RatVector{1, 0});
    CHECK(s.basis == std::vector<std::size_t>{0, 2});
    CHECK(s.strictly_optimal);

    auto again = solve_lp(lp);
    CHECK(again.basis == s.basis);
    CHECK(again.point == s.point);
}

TEST_CASE("lp infeasible and unbounded")
{
    LinearProgramSpec lp;
    lp.objective = RatVector{0, 0};
    lp.constraints = RatMatrix{{1, 1}, {1, 0}, {-1, 0}, {0, -1}};
    lp.relations = {Relation::Equal, Relation::LessEqual, Relation::LessEqual, Relation::LessEqual};
    lp.rhs = RatVector{1, -1, 0, 0};
    CHECK(solve_lp(lp).status == LPStatus::Infeasible);

    LinearProgramSpec ray;
    ray.objective = RatVector{1, 1};
    ray.constraints = RatMatrix{{-1, 0}, {0, -1}, {1, -1}};
    ray.relations = {Relation::LessEqual, Relation::LessEqual, Relation::LessEqual};
    ray.rhs = RatVector{0, 0, 1};
    CHECK(solve_lp(ray).status == LPStatus::Unbounded);

    LinearProgramSpec free_dir;
    free_dir.objective = RatVector{0, 1};
    free_dir.constraints = RatMatrix{{1, 0}};
    free_dir.relations = {Relation::Equal};
    free_dir.rhs = RatVector{3};
    CHECK(solve_lp(free_dir).status == LPStatus::Unbounded);
    free_dir.objective = RatVector{1, 0};
    auto s = solve_lp(free_dir);
    CHECK(s.status == LPStatus::Optimal);
    CHECK(s.value == 3);
    CHECK_FALSE(s.strictly_optimal);
}

TEST_CASE("lp malformed")
{
    auto lp = segment_lp();
    lp.relations.pop_back();
    CHECK_THROWS_AS(solve_lp(lp), MalformedLP);
    lp = segment_lp();
    lp.objective = RatVector{1, 0, 0};
    CHECK_THROWS_AS(solve_lp(lp), MalformedLP);
}

TEST_CASE("lp terminates on the classic cycling example")
{
    // Beale's example: cycles under the textbook largest-coefficient rule.
    LinearProgramSpec lp;
    lp.objective = RatVector{Rational(3, 4), -150, Rational(1, 50), -6};
    lp.constraints = RatMatrix{{Rational(1, 4), -60, Rational(-1, 25), 9},
                               {Rational(1, 2), -90, Rational(-1, 50), 3},
                               {0, 0, 1, 0},
                               {-1, 0, 0, 0},
                               {0, -1, 0, 0},
                               {0, 0, -1, 0},
                               {0, 0, 0, -1}};
    lp.relations.assign(7, Relation::LessEqual);
    lp.rhs = RatVector{0, 0, 1, 0, 0, 0, 0};
    auto s = solve_lp(lp);
    check_certificate(lp, s);
    CHECK(s.value == Rational(1, 20));
    CHECK(s.pivots < 100);
}

TEST_CASE("lp redundant equalities and negative rhs")
{
    LinearProgramSpec lp;
    lp.objective = RatVector{-1, -1};
    lp.constraints = RatMatrix{{1, 1}, {2, 2}, {-1, 0}, {0, -1}, {-1, -1}};
    lp.relations = {Relation::Equal, Relation::Equal, Relation::LessEqual, Relation::LessEqual,
                    Relation::LessEqual};
    lp.rhs = RatVector{2, 4, 0, 0, -1};
    auto s = solve_lp(lp);
    check_certificate(lp, s);
    CHECK(s.value == -2);
}

TEST_CASE("lp random certificates")
{
    std::mt19937_64 rng(11);
    int optimal = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t nv = 2 + trial % 4;
        const std::size_t rows = nv + 2 + trial % 3;
        LinearProgramSpec lp;
        lp.objective = testing::random_matrix(rng, 1, nv, 5).row(0);
        lp.constraints = testing::random_matrix(rng, rows, nv, 5);
        lp.relations.assign(rows, Relation::LessEqual);
        if (trial % 2)
            lp.relations[0] = Relation::Equal;
        lp.rhs = testing::random_matrix(rng, 1, rows, 5).row(0);
        auto s = solve_lp(lp);
        if (s.status == LPStatus::Optimal) {
            ++optimal;
            check_certificate(lp, s);
        }
    }
    CHECK(optimal > 10);
}

TEST_CASE("lp optimum matches brute-force vertex search")
{
    // Inequality-only LPs over a box, so the feasible region is a bounded polytope.
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t nv = 2 + trial % 2;
        const std::size_t extra = 2 + trial % 3;
        const std::size_t rows = extra + 2 * nv;
        LinearProgramSpec lp;
        lp.objective = testing::random_vector(rng, nv, 5);
        lp.constraints = RatMatrix(rows, nv);
        lp.rhs = RatVector(rows);
        RatMatrix g = testing::random_matrix(rng, extra, nv, 5);
        for (std::size_t r = 0; r < extra; ++r) {
            for (std::size_t j = 0; j < nv; ++j)
                lp.constraints(r, j) = g(r, j);
            lp.rhs[r] = 3 + trial % 4;
        }
        for (std::size_t j = 0; j < nv; ++j) {
            lp.constraints(extra + 2 * j, j) = 1;
            lp.rhs[extra + 2 * j] = 4;
            lp.constraints(extra + 2 * j + 1, j) = -1;
            lp.rhs[extra + 2 * j + 1] = 4;
        }
        lp.relations.assign(rows, Relation::LessEqual);

        std::optional<Rational> best;
        testing::for_each_subset(rows, nv, [&](const std::vector<std::size_t>& s) {
            RatMatrix sub(nv, nv);
            RatVector b(nv);
            for (std::size_t a = 0; a < nv; ++a) {
                for (std::size_t j = 0; j < nv; ++j)
                    sub(a, j) = lp.constraints(s[a], j);
                b[a] = lp.rhs[s[a]];
            }
            auto pt = testing::naive_solve(sub, b);
            if (!pt)
                return;
            RatVector lhs = lp.constraints * *pt;
            for (std::size_t r = 0; r < rows; ++r)
                if (lhs[r] > lp.rhs[r])
                    return;
            const Rational v = dot(lp.objective, *pt);
            if (!best || v > *best)
                best = v;
        });
        auto s = solve_lp(lp);
        REQUIRE(best.has_value());
        check_certificate(lp, s);
        CHECK(s.value == *best);
    }
}
