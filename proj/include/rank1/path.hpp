#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rank1/game.hpp"
#include "rank1/polytope.hpp"

namespace rank1 {

/** P and Q' for one game space {(A, C + alpha beta^T)}. */
struct PathInstance
{
    GeneralDecomposition d;
    Polytope P;
    Polytope Q;

    explicit PathInstance(GeneralDecomposition dec);

    std::size_t m() const { return d.m(); }
    std::size_t n() const { return d.n(); }
};

using NodeKey = std::pair<std::vector<InequalityIndex>, std::vector<InequalityIndex>>;

struct PathNode
{
    PolytopeVertex v;  // in P
    PolytopeVertex w;  // in Q'
    InequalityIndex duplicate = 0;
    int sign = 0;

    NodeKey key() const { return {v.basis, w.basis}; }
    const Rational& lambda() const { return w.coords[w.coords.size() - 2]; }
};

enum class EdgeKind { VFixed, WFixed };
enum class RelaxSide { P, Qprime };

/** (kind, basis of the fixed vertex, labels of the moving edge). */
struct EdgeKey
{
    EdgeKind kind;
    std::vector<InequalityIndex> fixed_basis;
    LabelSet labels;

    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct PathEdge
{
    EdgeKind kind = EdgeKind::VFixed;
    PolytopeVertex fixed;
    EdgeDescriptor moving;
    /** True when the orientation runs from moving.base towards moving.far_end. */
    bool forward = true;
    /** Ends in orientation order; absent on the ray side of an unbounded edge. */
    std::optional<PathNode> tail;
    std::optional<PathNode> head;

    EdgeKey key() const { return {kind, fixed.basis, moving.interior_labels()}; }
    /** v and w at parameter t of the moving descriptor. */
    std::pair<RatVector, RatVector> point_at(const Rational& t) const;
};

struct ComponentTrace
{
    enum class Kind { Path, Cycle };
    Kind kind = Kind::Path;
    /** In orientation order. */
    std::vector<PathNode> nodes;
    /**
     * Path: edges[0] is the ray into nodes[0], edges[i] joins nodes[i-1] and
     * nodes[i], edges.back() is the ray out of the last node.
     * Cycle: edges[i] joins nodes[i] and nodes[(i+1) % size].
     */
    std::vector<PathEdge> edges;
};

/** Throws NotFullyLabeled, MultipleDuplicates, DegeneratePolytope (zero determinant). */
PathNode make_node(const PathInstance& inst, const PolytopeVertex& v, const PolytopeVertex& w);

/** The systems of tight equations at a node, as used for its sign. */
std::pair<RatMatrix, RatMatrix> sign_matrices(const PathInstance& inst, const PolytopeVertex& v,
                                              const PolytopeVertex& w);

struct StepResult
{
    PathEdge edge;
    /** Absent when the Q' pivot runs off along an unbounded edge. */
    std::optional<PathNode> next;
};

/** Relaxes the duplicate label of `node` in one polytope. */
StepResult step(const PathInstance& inst, const PathNode& node, RelaxSide side);

/** The side whose edge leaves `node` in orientation order. */
RelaxSide forward_side(const PathNode& node);

/** C(m+n, n) * C(m+n+1, m+1), saturating. */
std::size_t step_budget(std::size_t m, std::size_t n);

/** The first node after the ray (v_s, E_{v_s}). */
PathNode path_start_node(const PathInstance& inst);

/** Throws DegeneratePolytope, StepBudgetExceeded. */
ComponentTrace trace_path(const PathInstance& inst);

/** Throws std::invalid_argument if the seed is on the path. */
ComponentTrace trace_cycle(const PathInstance& inst, const PathNode& seed);

/**
 * One line per node and edge; labels 1-based, rationals exact.
 *   node <i> v=<basis> w=<basis> dup=<l> sign=<+1|-1> lambda=<p/q>
 *   edge <i> kind=<v_fixed|w_fixed> fixed=<basis> labels=<set> lambda=[lo,hi]
 */
std::vector<std::string> export_trace(const ComponentTrace& trace);

/** lambda range of an edge as strings; "-inf"/"inf" for rays. */
std::pair<std::string, std::string> lambda_range(const PathEdge& e);

std::string format_labels(const LabelSet& s);

}  // namespace rank1
