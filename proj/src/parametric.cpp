#include "rank1/parametric.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "rank1/errors.hpp"
#include "rank1/lp.hpp"

namespace rank1 {

Rational Hyperplane::value(const RatVector& w) const
{
    Rational h = w[gamma.size()];
    for (std::size_t i = 0; i < gamma.size(); ++i)
        h -= gamma[i] * w[i];
    return h;
}

Rational Hyperplane::rate(const RatVector& direction) const
{
    return value(direction);
}

namespace {

/** The polytope as an LP feasible set; extra equalities fix single coordinates. */
LinearProgramSpec polytope_lp(const Polytope& poly, RatVector objective,
                              const std::vector<std::pair<std::size_t, Rational>>& fixed = {})
{
    const std::size_t rows = poly.inequality_count() + 1 + fixed.size();
    LinearProgramSpec lp;
    lp.objective = std::move(objective);
    lp.constraints = RatMatrix(rows, poly.dim());
    lp.relations.assign(rows, Relation::Equal);
    lp.rhs = RatVector(rows);
    for (std::size_t i = 0; i < poly.inequality_count(); ++i) {
        for (std::size_t c = 0; c < poly.dim(); ++c)
            lp.constraints(i, c) = poly.inequalities()(i, c);
        lp.relations[i] = Relation::LessEqual;
    }
    const std::size_t e = poly.inequality_count();
    for (std::size_t c = 0; c < poly.dim(); ++c)
        lp.constraints(e, c) = poly.equality()[c];
    lp.rhs[e] = 1;
    for (std::size_t f = 0; f < fixed.size(); ++f) {
        lp.constraints(e + 1 + f, fixed[f].first) = 1;
        lp.rhs[e + 1 + f] = fixed[f].second;
    }
    return lp;
}

/** Solves with rows and variables permuted; results are mapped back. */
LPSolution solve_shuffled(const LinearProgramSpec& lp, std::optional<std::uint64_t> seed)
{
    if (!seed)
        return solve_lp(lp);
    std::mt19937_64 rng(*seed);
    std::vector<std::size_t> rp(lp.constraints.rows()), vp(lp.variable_count());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(vp.begin(), vp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(vp.begin(), vp.end(), rng);
    LinearProgramSpec s;
    s.objective = RatVector(vp.size());
    s.constraints = RatMatrix(rp.size(), vp.size());
    s.rhs = RatVector(rp.size());
    s.relations.resize(rp.size());
    for (std::size_t c = 0; c < vp.size(); ++c)
        s.objective[c] = lp.objective[vp[c]];
    for (std::size_t r = 0; r < rp.size(); ++r) {
        for (std::size_t c = 0; c < vp.size(); ++c)
            s.constraints(r, c) = lp.constraints(rp[r], vp[c]);
        s.rhs[r] = lp.rhs[rp[r]];
        s.relations[r] = lp.relations[rp[r]];
    }
    LPSolution sol = solve_lp(s);
    if (sol.status != LPStatus::Optimal)
        return sol;
    RatVector point(vp.size());
    for (std::size_t c = 0; c < vp.size(); ++c)
        point[vp[c]] = sol.point[c];
    sol.point = std::move(point);
    for (auto& b : sol.basis)
        b = rp[b];
    std::sort(sol.basis.begin(), sol.basis.end());
    return sol;
}

LPSolution require_optimal(LPSolution s, const char* what)
{
    if (s.status != LPStatus::Optimal)
        throw NonzeroOptimum(std::string(what) + ": LP has no optimum");
    return s;
}

std::vector<InequalityIndex> inequality_rows(const std::vector<std::size_t>& basis, std::size_t count)
{
    std::vector<InequalityIndex> out;
    for (std::size_t b : basis)
        if (b < count)
            out.push_back(b);
    return out;
}

}  // namespace

Rational complementarity_gap(const PathInstance& inst, const RatVector& v, const RatVector& w)
{
    const std::size_t m = inst.m(), n = inst.n();
    Rational by;
    for (std::size_t j = 0; j < n; ++j)
        by += inst.d.beta[j] * v[j];
    return w[m] * by - v[n] - w[m + 1];
}

OptSet solve_lp_delta(const PathInstance& inst, const Rational& delta)
{
    if (!inst.d.is_rank1_form())
        throw std::invalid_argument("LP(delta) needs C = -A");
    const std::size_t m = inst.m(), n = inst.n();

    RatVector pobj(n + 1);
    for (std::size_t j = 0; j < n; ++j)
        pobj[j] = delta * inst.d.beta[j];
    pobj[n] = -1;
    const LPSolution ps = require_optimal(solve_lp(polytope_lp(inst.P, pobj)), "P side");

    RatVector qobj(m + 2);
    qobj[m + 1] = -1;
    const LPSolution qs = require_optimal(solve_lp(polytope_lp(inst.Q, qobj, {{m, delta}})), "Q' side");

    OptSet opt;
    opt.p_value = ps.value;
    opt.q_value = -qs.value;
    if (opt.p_value != opt.q_value)
        throw NonzeroOptimum("LP(delta) optimum is " + (opt.p_value - opt.q_value).str());
    opt.v_point = ps.point;
    opt.w_point = qs.point;

    const PolytopeVertex v = inst.P.make_vertex(inequality_rows(ps.basis, m + n));
    const LabelSet lw = inst.Q.labels_at(opt.w_point);
    if (lw.size() == m) {
        // Interior of a Q' edge: OPT is a single point on (v, E_v).
        const auto [e1, e2] = edge_endpoints(inst.Q, opt.w_point);
        const PolytopeVertex& end = e1 ? *e1 : *e2;
        const PathNode u = make_node(inst, v, end);
        opt.edge = step(inst, u, RelaxSide::Qprime).edge;
        if (opt.edge.moving.interior_labels() != lw)
            throw DegeneratePolytope("OPT point is not on the edge through its vertex");
        opt.is_edge = false;
    } else if (lw.size() == m + 1) {
        const PolytopeVertex w = inst.Q.make_vertex(lw);
        const PathNode u = make_node(inst, v, w);
        opt.edge = step(inst, u, RelaxSide::P).edge;
        opt.is_edge = true;
        const PolytopeVertex& other = *opt.edge.moving.far_end;
        opt.v_point = other.basis < v.basis ? other.coords : v.coords;
    } else {
        throw DegeneratePolytope("OPT point has an unexpected number of tight inequalities");
    }
    return opt;
}

std::vector<Crossing> edge_hyperplane_intersection(const PathEdge& edge, const Hyperplane& h)
{
    std::vector<Crossing> out;
    if (edge.kind == EdgeKind::WFixed) {
        if (h.value(edge.fixed.coords).is_zero())
            throw EdgeInHyperplane("a whole edge lies in the hyperplane");
        return out;
    }
    const EdgeDescriptor& e = edge.moving;
    const Rational h0 = h.value(e.base.coords);
    const Rational h1 = h.rate(e.direction);
    if (h1.is_zero()) {
        if (h0.is_zero())
            throw EdgeInHyperplane("a whole edge lies in the hyperplane");
        return out;
    }
    const Rational t = -h0 / h1;
    if (t.sign() < 0 || (e.t_max && t > *e.t_max))
        return out;
    if (t.is_zero() || (e.t_max && t == *e.t_max))
        throw DegeneratePolytope("hyperplane passes through a vertex of the path");
    Crossing c;
    c.t = t;
    std::tie(c.v, c.w) = edge.point_at(t);
    c.orientation_index = (edge.forward ? 1 : -1) * h1.sign();
    out.push_back(std::move(c));
    return out;
}

EquilibriumRecord record_from_crossing(const BimatrixGame& game, const Crossing& c, std::string provenance)
{
    const std::size_t m = game.m(), n = game.n();
    MixedProfile p{RatVector(m), RatVector(n)};
    for (std::size_t i = 0; i < m; ++i)
        p.x[i] = c.w[i];
    for (std::size_t j = 0; j < n; ++j)
        p.y[j] = c.v[j];
    return EquilibriumRecord::make(game, std::move(p), std::move(provenance));
}

IsNEOutcome is_ne(const PathInstance& inst, const RatVector& gamma, const Rational& delta)
{
    IsNEOutcome out;
    out.opt = solve_lp_delta(inst, delta);
    const Hyperplane h{gamma};
    out.crossings = edge_hyperplane_intersection(out.opt.edge, h);
    out.opt_side = h.value(out.opt.w_point).sign();
    if (!out.crossings.empty()) {
        const BimatrixGame game(inst.d.A, inst.d.C + RatMatrix::outer(gamma, inst.d.beta));
        out.kind = IsNEOutcome::Kind::Found;
        for (const auto& c : out.crossings)
            out.found.push_back(record_from_crossing(game, c, "is_ne"));
        return out;
    }
    out.kind = out.opt_side > 0 ? IsNEOutcome::Kind::Above : IsNEOutcome::Kind::Below;
    return out;
}

RankKInstance::RankKInstance(RankKDecomposition dec)
    : d(std::move(dec)), P(build_P(d.A)), Qk(build_QprimeK(d.A, d.betas))
{
}

OptK solve_lp_k(const RankKInstance& inst, const RatVector& delta, std::optional<std::uint64_t> shuffle_seed)
{
    const std::size_t m = inst.m(), n = inst.n(), k = inst.k();
    if (delta.size() != k)
        throw DimensionMismatch("delta length differs from k");

    RatVector pobj(n + 1);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < n; ++j)
            pobj[j] += delta[l] * inst.d.betas[l][j];
    pobj[n] = -1;
    const LPSolution ps = require_optimal(solve_shuffled(polytope_lp(inst.P, pobj), shuffle_seed), "P side");

    std::vector<std::pair<std::size_t, Rational>> fixed;
    for (std::size_t l = 0; l < k; ++l)
        fixed.emplace_back(m + l, delta[l]);
    RatVector qobj(m + k + 1);
    qobj[m + k] = -1;
    const LinearProgramSpec qlp = polytope_lp(inst.Qk, qobj, fixed);
    const LPSolution qs = require_optimal(solve_shuffled(qlp, shuffle_seed), "Q'^k side");

    OptK out;
    out.v_point = ps.point;
    out.w_point = qs.point;
    out.objective = ps.value + qs.value;
    if (!out.objective.is_zero())
        throw NonzeroOptimum("LP^k(delta) optimum is " + out.objective.str());

    if (!qs.strictly_optimal) {
        // Confirm the optimal face is a single point coordinate by coordinate.
        auto face = qlp;
        fixed.emplace_back(m + k, qs.point[m + k]);
        face = polytope_lp(inst.Qk, RatVector(m + k + 1), fixed);
        for (std::size_t i = 0; i < m; ++i) {
            for (int s : {1, -1}) {
                face.objective = RatVector(m + k + 1);
                face.objective[i] = s;
                const LPSolution r = require_optimal(solve_lp(face), "uniqueness probe");
                if (r.value != s * qs.point[i])
                    throw DegeneratePolytope("Q'^k side optimum is not unique");
            }
        }
    }
    return out;
}

RatVector fixed_point_eval(const RankKInstance& inst, const std::vector<RatVector>& gammas, const RatVector& a)
{
    const std::size_t k = inst.k();
    if (gammas.size() != k || a.size() != k)
        throw DimensionMismatch("fixed_point_eval: k mismatch");
    for (std::size_t l = 0; l < k; ++l)
        if (a[l] < gammas[l].min() || a[l] > gammas[l].max())
            throw OutOfBox("point " + to_string(a) + " is outside the box");
    const OptK opt = solve_lp_k(inst, a);
    RatVector f(k);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t i = 0; i < inst.m(); ++i)
            f[l] += gammas[l][i] * opt.w_point[i];
    return f;
}

}  // namespace rank1
