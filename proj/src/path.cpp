#include "rank1/path.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"

namespace rank1 {

PathInstance::PathInstance(GeneralDecomposition dec)
    : d(std::move(dec)), P(build_P(d.A)), Q(build_Qprime(d.C, d.beta))
{
}

std::pair<RatVector, RatVector> PathEdge::point_at(const Rational& t) const
{
    if (kind == EdgeKind::VFixed)
        return {fixed.coords, moving.point_at(t)};
    return {moving.point_at(t), fixed.coords};
}

namespace {

struct NodeSets
{
    std::vector<std::size_t> X, notX, Y, notY;
    InequalityIndex dup;
};

NodeSets node_sets(const PathInstance& inst, const PolytopeVertex& v, const PolytopeVertex& w)
{
    const std::size_t m = inst.m(), n = inst.n();
    const LabelSet all = set_union(v.labels, w.labels);
    if (all.size() != m + n)
        throw NotFullyLabeled("labels of the pair do not cover every strategy");
    const LabelSet common = set_intersection(v.labels, w.labels);
    if (common.size() > 1)
        throw MultipleDuplicates("pair has more than one duplicate label");
    if (common.empty())
        throw NotFullyLabeled("pair has no duplicate label");
    NodeSets s;
    s.dup = common[0];
    for (std::size_t i = 0; i < m; ++i) {
        if (std::binary_search(v.labels.begin(), v.labels.end(), i))
            s.X.push_back(i);
        else
            s.notX.push_back(i);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::binary_search(w.labels.begin(), w.labels.end(), m + j))
            s.Y.push_back(j);
        else
            s.notY.push_back(j);
    }
    return s;
}

}  // namespace

std::pair<RatMatrix, RatMatrix> sign_matrices(const PathInstance& inst, const PolytopeVertex& v,
                                              const PolytopeVertex& w)
{
    const std::size_t m = inst.m(), n = inst.n();
    const NodeSets s = node_sets(inst, v, w);
    const bool dup_in_x = s.dup < m;
    const RatMatrix& A = inst.d.A;
    const RatMatrix& C = inst.d.C;
    const RatVector& beta = inst.d.beta;

    // E(v): columns y_Y, y_-Y, pi1; rows sum, X, (duplicate column), -Y.
    std::vector<std::size_t> ycols = s.Y;
    ycols.insert(ycols.end(), s.notY.begin(), s.notY.end());
    RatMatrix ev(n + 1, n + 1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c)
        ev(r, c) = 1;
    ++r;
    for (std::size_t i : s.X) {
        for (std::size_t c = 0; c < n; ++c)
            ev(r, c) = A(i, ycols[c]);
        ev(r, n) = -1;
        ++r;
    }
    auto y_position = [&](std::size_t j) {
        return static_cast<std::size_t>(std::find(ycols.begin(), ycols.end(), j) - ycols.begin());
    };
    if (!dup_in_x)
        ev(r++, y_position(s.dup - m)) = -1;
    for (std::size_t j : s.notY)
        ev(r++, y_position(j)) = -1;

    // E(w): rows lambda, x_X, x_-X, pi2; columns sum, Y, (duplicate row), -X.
    std::vector<std::size_t> xrows = s.X;
    xrows.insert(xrows.end(), s.notX.begin(), s.notX.end());
    auto x_position = [&](std::size_t i) {
        return 1 + static_cast<std::size_t>(std::find(xrows.begin(), xrows.end(), i) - xrows.begin());
    };
    RatMatrix ew(m + 2, m + 2);
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i)
        ew(1 + i, c) = 1;
    ++c;
    for (std::size_t j : s.Y) {
        ew(0, c) = beta[j];
        for (std::size_t q = 0; q < m; ++q)
            ew(1 + q, c) = C(xrows[q], j);
        ew(m + 1, c) = -1;
        ++c;
    }
    if (dup_in_x)
        ew(x_position(s.dup), c++) = -1;
    for (std::size_t i : s.notX)
        if (!dup_in_x || i != s.dup)
            ew(x_position(i), c++) = -1;
    return {ev, ew};
}

PathNode make_node(const PathInstance& inst, const PolytopeVertex& v, const PolytopeVertex& w)
{
    const NodeSets s = node_sets(inst, v, w);
    const auto [ev, ew] = sign_matrices(inst, v, w);
    const int sv = determinant_sign(ev);
    const int sw = determinant_sign(ew);
    if (sv == 0 || sw == 0)
        throw DegeneratePolytope("singular system of tight equations at a node");
    return PathNode{v, w, s.dup, sv * sw};
}

RelaxSide forward_side(const PathNode& node)
{
    return node.sign > 0 ? RelaxSide::P : RelaxSide::Qprime;
}

StepResult step(const PathInstance& inst, const PathNode& node, RelaxSide side)
{
    StepResult out;
    PathEdge& e = out.edge;
    if (side == RelaxSide::P) {
        e.kind = EdgeKind::WFixed;
        e.fixed = node.w;
        e.moving = pivot(inst.P, node.v, node.duplicate);
        if (!e.moving.far_end)
            throw DegeneratePolytope("unbounded edge in P");
        out.next = make_node(inst, *e.moving.far_end, node.w);
    } else {
        e.kind = EdgeKind::VFixed;
        e.fixed = node.v;
        e.moving = pivot(inst.Q, node.w, node.duplicate);
        if (e.moving.far_end)
            out.next = make_node(inst, node.v, *e.moving.far_end);
    }
    e.forward = side == forward_side(node);
    if (e.forward) {
        e.tail = node;
        e.head = out.next;
    } else {
        e.tail = out.next;
        e.head = node;
    }
    return out;
}

std::size_t step_budget(std::size_t m, std::size_t n)
{
    auto binom = [](std::size_t a, std::size_t b) -> mpz_class {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), a, b);
        return r;
    };
    const mpz_class total = binom(m + n, n) * binom(m + n + 1, m + 1);
    if (!total.fits_ulong_p())
        return std::numeric_limits<std::size_t>::max();
    return total.get_ui();
}

PathNode path_start_node(const PathInstance& inst)
{
    const auto [vs, ve] = start_vertices(inst.P, inst.d.beta, inst.d.A);
    const auto [ws, we] = bounding_vertices(inst.Q, inst.d);
    (void)ve;
    (void)we;
    return make_node(inst, vs, ws);
}

ComponentTrace trace_path(const PathInstance& inst)
{
    ComponentTrace t;
    t.kind = ComponentTrace::Kind::Path;
    const PathNode first = path_start_node(inst);
    StepResult ray = step(inst, first, RelaxSide::Qprime);
    if (ray.next)
        throw DegeneratePolytope("start edge is bounded");
    t.edges.push_back(std::move(ray.edge));
    t.nodes.push_back(first);

    const std::size_t budget = step_budget(inst.m(), inst.n());
    RelaxSide side = RelaxSide::P;
    for (std::size_t steps = 0;; ++steps) {
        if (steps > budget)
            throw StepBudgetExceeded("path longer than the number of vertex pairs");
        StepResult s = step(inst, t.nodes.back(), side);
        t.edges.push_back(std::move(s.edge));
        if (!s.next)
            break;
        t.nodes.push_back(std::move(*s.next));
        side = side == RelaxSide::P ? RelaxSide::Qprime : RelaxSide::P;
    }
    return t;
}

ComponentTrace trace_cycle(const PathInstance& inst, const PathNode& seed)
{
    ComponentTrace t;
    t.kind = ComponentTrace::Kind::Cycle;
    t.nodes.push_back(seed);
    const std::size_t budget = step_budget(inst.m(), inst.n());
    RelaxSide side = forward_side(seed);
    for (std::size_t steps = 0;; ++steps) {
        if (steps > budget)
            throw StepBudgetExceeded("cycle longer than the number of vertex pairs");
        StepResult s = step(inst, t.nodes.back(), side);
        if (!s.next)
            throw std::invalid_argument("seed node lies on the path");
        t.edges.push_back(std::move(s.edge));
        if (s.next->key() == seed.key())
            break;
        t.nodes.push_back(std::move(*s.next));
        side = side == RelaxSide::P ? RelaxSide::Qprime : RelaxSide::P;
    }
    return t;
}

std::string format_labels(const LabelSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

std::pair<std::string, std::string> lambda_range(const PathEdge& e)
{
    if (e.kind == EdgeKind::WFixed) {
        const std::string l = e.fixed.coords[e.fixed.coords.size() - 2].str();
        return {l, l};
    }
    const std::size_t lc = e.moving.base.coords.size() - 2;
    const Rational base = e.moving.base.coords[lc];
    if (e.moving.unbounded) {
        const bool up = e.moving.direction[lc].sign() > 0;
        return up ? std::pair<std::string, std::string>{base.str(), "inf"}
                  : std::pair<std::string, std::string>{"-inf", base.str()};
    }
    const Rational far = e.moving.far_end->coords[lc];
    return base < far ? std::pair{base.str(), far.str()} : std::pair{far.str(), base.str()};
}

std::vector<std::string> export_trace(const ComponentTrace& trace)
{
    std::vector<std::string> lines;
    auto node_line = [&](std::size_t i) {
        const PathNode& u = trace.nodes[i];
        std::ostringstream os;
        os << "node " << i << " v=" << format_labels(u.v.basis) << " w=" << format_labels(u.w.basis)
           << " dup=" << u.duplicate + 1 << " sign=" << (u.sign > 0 ? "+1" : "-1") << " lambda=" << u.lambda();
        lines.push_back(os.str());
    };
    auto edge_line = [&](std::size_t i) {
        const PathEdge& e = trace.edges[i];
        const auto [lo, hi] = lambda_range(e);
        std::ostringstream os;
        os << "edge " << i << " kind=" << (e.kind == EdgeKind::VFixed ? "v_fixed" : "w_fixed")
           << " fixed=" << format_labels(e.fixed.basis) << " labels=" << format_labels(e.moving.interior_labels())
           << " lambda=[" << lo << "," << hi << "]";
        lines.push_back(os.str());
    };
    if (trace.kind == ComponentTrace::Kind::Path) {
        for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
            edge_line(i);
            node_line(i);
        }
        edge_line(trace.edges.size() - 1);
    } else {
        for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
            node_line(i);
            edge_line(i);
        }
    }
    return lines;
}

}  // namespace rank1
