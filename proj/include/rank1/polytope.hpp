#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rank1/game.hpp"
#include "rank1/matrix.hpp"

namespace rank1 {

enum class PolytopeKind { P, Qprime, QprimeK };

/**
 * Inequality labels are 0-based: 0..m-1 are the row-player inequalities and
 * m..m+n-1 the column-player ones, in both polytopes.
 */
using InequalityIndex = std::size_t;
/** Sorted, duplicate-free. */
using LabelSet = std::vector<InequalityIndex>;

struct PolytopeVertex
{
    PolytopeKind which = PolytopeKind::P;
    RatVector coords;
    LabelSet labels;
    /** Inequalities whose equations (with the equality row) define the point. */
    std::vector<InequalityIndex> basis;

    friend bool operator==(const PolytopeVertex& a, const PolytopeVertex& b)
    {
        return a.which == b.which && a.basis == b.basis;
    }
};

/**
 * { z : G z <= 0, e.z = 1 }. Coordinates:
 *   P    (y_1..y_n, pi1)
 *   Q'   (x_1..x_m, lambda, pi2)
 *   Q'^k (x_1..x_m, lambda_1..lambda_k, pi2)
 */
class Polytope
{
    public:
        Polytope(PolytopeKind kind, std::size_t m, std::size_t n, std::size_t k, RatMatrix g, RatVector e);

        PolytopeKind kind() const { return kind_; }
        std::size_t m() const { return m_; }
        std::size_t n() const { return n_; }
        /** Number of lambda coordinates (0 for P). */
        std::size_t k() const { return k_; }
        std::size_t dim() const { return g_.cols(); }
        std::size_t inequality_count() const { return g_.rows(); }
        /** Inequalities needed to fix a vertex: dim() - 1. */
        std::size_t basis_size() const { return dim() - 1; }

        const RatMatrix& inequalities() const { return g_; }
        const RatVector& equality() const { return e_; }

        /** G_i . z */
        Rational slack(InequalityIndex i, const RatVector& z) const;
        bool contains(const RatVector& z) const;
        LabelSet labels_at(const RatVector& z) const;

        /** nullopt when the basis system is singular or its solution infeasible. */
        std::optional<PolytopeVertex> vertex_from_basis(const std::vector<InequalityIndex>& basis) const;
        /** Throws DegeneratePolytope if the point has surplus tight inequalities. */
        PolytopeVertex make_vertex(const std::vector<InequalityIndex>& basis) const;

        std::size_t lambda_coord(std::size_t l = 0) const { return m_ + l; }
        std::size_t pi_coord() const { return dim() - 1; }

    private:
        PolytopeKind kind_;
        std::size_t m_;
        std::size_t n_;
        std::size_t k_;
        RatMatrix g_;
        RatVector e_;
};

Polytope build_P(const RatMatrix& A);
/** Throws ZeroBeta. */
Polytope build_Qprime(const RatMatrix& C, const RatVector& beta);
/** Rows x^T(-A^j) + sum_l beta^l_j lambda_l - pi2 <= 0. Throws DependentBetas. */
Polytope build_QprimeK(const RatMatrix& A, const std::vector<RatVector>& betas);

/** An edge leaving `base` by relaxing one of its tight inequalities. */
struct EdgeDescriptor
{
    PolytopeVertex base;
    InequalityIndex relaxed = 0;
    std::optional<PolytopeVertex> far_end;
    /** Inequality that becomes tight at far_end. */
    std::optional<InequalityIndex> entering;
    bool unbounded = false;
    /** Points are base.coords + t * direction for t in [0, t_max] (t_max absent when unbounded). */
    RatVector direction;
    std::optional<Rational> t_max;

    RatVector point_at(const Rational& t) const;
    /** Labels shared by every interior point. */
    LabelSet interior_labels() const;
};

/**
 * Walks from `from` along the face where every other basis inequality stays
 * tight. Throws DegeneratePolytope on a ratio-test tie or a degenerate base,
 * std::invalid_argument if `relax` is not in the basis.
 */
EdgeDescriptor pivot(const Polytope& poly, const PolytopeVertex& from, InequalityIndex relax);

/**
 * Endpoints of the edge through a point with exactly basis_size()-1 tight
 * inequalities; nullopt marks an unbounded side. The first endpoint lies in
 * the direction whose first nonzero coordinate is negative.
 */
std::pair<std::optional<PolytopeVertex>, std::optional<PolytopeVertex>>
edge_endpoints(const Polytope& poly, const RatVector& point);

struct StartInfo
{
    std::size_t i_s, j_s, i_e, j_e;
};

/** Rows attaining max_i a_ij at the extreme columns of beta. Throws ConstantBeta, DegeneratePolytope. */
StartInfo start_indices(const RatMatrix& A, const RatVector& beta);

/** The pure-strategy vertices v_s (column argmin beta) and v_e (argmax beta). */
std::pair<PolytopeVertex, PolytopeVertex> start_vertices(const Polytope& P, const RatVector& beta,
                                                         const RatMatrix& A);

struct LambdaBounds
{
    Rational lambda_s;
    Rational lambda_e;
    /** Columns attaining the bounds (the second tight column at the bounding Q' vertices). */
    std::size_t j_star_s;
    std::size_t j_star_e;
};

/** Throws ConstantBeta, DegeneratePolytope on tied minimizers. */
LambdaBounds lambda_bounds(const GeneralDecomposition& d);

/**
 * The Q' vertices w_s, w_e at lambda_s, lambda_e with x the pure strategy
 * i_s, i_e: the bounded ends of the two unbounded edges of the path.
 */
std::pair<PolytopeVertex, PolytopeVertex> bounding_vertices(const Polytope& Q, const GeneralDecomposition& d);

/**
 * True iff no basic feasible point has more tight inequalities than its basis.
 * Exhaustive unless `samples` is given, in which case that many random bases
 * are tried (seeded deterministically). Exhaustive mode throws TooLarge above
 * 10^6 candidate bases.
 */
bool check_nondegenerate(const Polytope& poly, std::optional<std::size_t> samples = std::nullopt);

/** Number of candidate bases, saturating at SIZE_MAX. */
std::size_t basis_count(const Polytope& poly);

bool is_subset(const LabelSet& a, const LabelSet& b);
LabelSet set_union(const LabelSet& a, const LabelSet& b);
LabelSet set_intersection(const LabelSet& a, const LabelSet& b);
LabelSet set_difference(const LabelSet& a, const LabelSet& b);

}  // namespace rank1
