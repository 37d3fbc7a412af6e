#include "rank1/algorithms.hpp"

#include <algorithm>
#include <stdexcept>

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"

namespace rank1 {

namespace {

std::size_t bits(const Rational& r)
{
    return mpz_sizeinbase(r.numerator().get_mpz_t(), 2) + mpz_sizeinbase(r.denominator().get_mpz_t(), 2);
}

mpz_class max_abs_numerator(const Rank1Decomposition& d)
{
    mpz_class best = 0;
    auto see = [&](const Rational& r) {
        mpz_class a = abs(r.numerator());
        if (a > best)
            best = a;
    };
    for (std::size_t i = 0; i < d.m(); ++i)
        for (std::size_t j = 0; j < d.n(); ++j)
            see(d.A(i, j));
    for (const auto& v : d.gamma)
        see(v);
    for (const auto& v : d.beta)
        see(v);
    return best;
}

BimatrixGame game_at(const PathInstance& inst, const RatVector& gamma)
{
    return BimatrixGame(inst.d.A, inst.d.C + RatMatrix::outer(gamma, inst.d.beta));
}

}  // namespace

IterationBound iteration_bound(const Rank1Decomposition& d)
{
    const auto [z, scale] = integerize(d);
    (void)scale;
    const std::size_t m = z.m();
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), m + 2);
    mpz_class b = max_abs_numerator(z);
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), b.get_mpz_t(), m + 2);
    IterationBound out;
    out.delta = fact * power;
    const Rational spread = z.gamma.max() - z.gamma.min();
    const mpz_class x = out.delta * out.delta * spread.numerator();  // spread is integral here
    out.bound_k = x <= 1 ? 0 : mpz_sizeinbase(mpz_class(x - 1).get_mpz_t(), 2);
    out.bit_length = 0;
    for (std::size_t i = 0; i < z.m(); ++i)
        for (std::size_t j = 0; j < z.n(); ++j)
            out.bit_length += bits(z.A(i, j));
    for (const auto& v : z.gamma)
        out.bit_length += bits(v);
    for (const auto& v : z.beta)
        out.bit_length += bits(v);
    return out;
}

int determinant_index(const BimatrixGame& game, const MixedProfile& p)
{
    const ShiftedGame s = positivity_shift(game);
    const SupportPair sp = support_of(p);
    if (sp.I.size() != sp.J.size())
        throw DegeneratePolytope("support sizes differ at an equilibrium");
    const int da = determinant_sign(s.game.A.submatrix(sp.I, sp.J));
    const int db = determinant_sign(s.game.B.submatrix(sp.I, sp.J));
    if (da == 0 || db == 0)
        throw DegeneratePolytope("singular support submatrix");
    const int parity = (sp.I.size() + 1) % 2 == 0 ? 1 : -1;
    return parity * da * db;
}

int index_of(const BimatrixGame& game, const EquilibriumRecord& rec, const Crossing& crossing)
{
    const int by_det = determinant_index(game, rec.profile);
    if (by_det != crossing.orientation_index)
        throw IndexMismatch("orientation index " + std::to_string(crossing.orientation_index) +
                            " but determinant index " + std::to_string(by_det));
    return by_det;
}

namespace {

EquilibriumRecord indexed_record(const BimatrixGame& game, const Crossing& c, const char* provenance)
{
    EquilibriumRecord r = record_from_crossing(game, c, provenance);
    r.index = index_of(game, r, c);
    return r;
}

}  // namespace

BinSearchReport bin_search(const Rank1Decomposition& d, BinSearchRule rule)
{
    if (is_constant(d.beta))
        throw ConstantBeta("bin_search needs a nonconstant beta");
    const PathInstance inst(GeneralDecomposition::from_rank1(d));
    const BimatrixGame game = d.game();
    const IterationBound ib = iteration_bound(d);

    BinSearchReport rep;
    rep.bound_k = ib.bound_k;
    rep.bit_length = ib.bit_length;

    const Rational gmin = d.gamma.min();
    const Rational gmax = d.gamma.max();

    auto accept = [&](const IsNEOutcome& o) -> std::optional<EquilibriumRecord> {
        for (const auto& c : o.crossings)
            if (rule == BinSearchRule::Table || c.orientation_index > 0)
                return indexed_record(game, c, "bin_search");
        return std::nullopt;
    };
    auto side = [&](const IsNEOutcome& o) {
        if (rule == BinSearchRule::Table)
            return o.kind == IsNEOutcome::Kind::Above ? 1 : -1;
        return o.opt_side;
    };

    if (gmin == gmax) {
        const IsNEOutcome o = is_ne(inst, d.gamma, gmin);
        ++rep.is_ne_calls;
        for (const auto& c : o.crossings) {
            rep.equilibrium = indexed_record(game, c, "bin_search");
            return rep;
        }
        throw DegeneratePolytope("no crossing at the only admissible lambda");
    }

    Rational a1 = gmin, a2 = gmax;
    for (const Rational& a : {a1, a2}) {
        const IsNEOutcome o = is_ne(inst, d.gamma, a);
        ++rep.is_ne_calls;
        if (auto r = accept(o)) {
            rep.equilibrium = *r;
            return rep;
        }
    }
    while (true) {
        if (rep.iterations >= rep.bound_k + 1)
            throw IterationCapExceeded("bin_search exceeded " + std::to_string(rep.bound_k + 1) + " iterations");
        rep.pivots.emplace_back(a1, a2);
        ++rep.iterations;
        const Rational a = (a1 + a2) / 2;
        const IsNEOutcome o = is_ne(inst, d.gamma, a);
        ++rep.is_ne_calls;
        if (auto r = accept(o)) {
            rep.equilibrium = *r;
            return rep;
        }
        if (side(o) < 0)
            a1 = a;
        else
            a2 = a;
    }
}

std::vector<EquilibriumRecord> enumeration(const PathInstance& inst, const RatVector& gamma, const PathEdge& start,
                                           const std::optional<PathEdge>& end)
{
    const BimatrixGame game = game_at(inst, gamma);
    const Hyperplane h{gamma};
    const std::size_t budget = step_budget(inst.m(), inst.n());
    std::vector<EquilibriumRecord> out;
    PathEdge e = start;
    for (std::size_t steps = 0;; ++steps) {
        if (steps > budget)
            throw StepBudgetExceeded("enumeration walked more edges than vertex pairs");
        for (const auto& c : edge_hyperplane_intersection(e, h))
            out.push_back(indexed_record(game, c, "enumeration"));
        if (end && e.key() == end->key())
            break;
        if (!e.head) {
            if (end)
                throw std::logic_error("enumeration reached the end of the path before the end edge");
            break;
        }
        const PathNode node = *e.head;
        e = step(inst, node, forward_side(node)).edge;
    }
    return out;
}

std::vector<EquilibriumRecord> enumerate_rank1(const Rank1Decomposition& d)
{
    if (is_constant(d.beta))
        throw ConstantBeta("enumerate_rank1 needs a nonconstant beta");
    const PathInstance inst(GeneralDecomposition::from_rank1(d));
    const OptSet lo = solve_lp_delta(inst, d.gamma.min());
    const OptSet hi = solve_lp_delta(inst, d.gamma.max());
    return enumeration(inst, d.gamma, lo.edge, hi.edge);
}

std::vector<EquilibriumRecord> enumerate_path(const GeneralDecomposition& d)
{
    const PathInstance inst(d);
    const PathNode first = path_start_node(inst);
    const PathEdge ray = step(inst, first, RelaxSide::Qprime).edge;
    return enumeration(inst, d.gamma, ray, std::nullopt);
}

EquilibriumRecord solve_general(const BimatrixGame& game, const std::optional<RatVector>& beta)
{
    const GeneralDecomposition d = embed_general(game, beta ? *beta : default_beta(game.n()));
    const PathInstance inst(d);
    const BimatrixGame g = game_at(inst, d.gamma);
    const Hyperplane h{d.gamma};
    const PathNode first = path_start_node(inst);
    PathEdge e = step(inst, first, RelaxSide::Qprime).edge;
    const std::size_t budget = step_budget(inst.m(), inst.n());
    for (std::size_t steps = 0; steps <= budget; ++steps) {
        for (const auto& c : edge_hyperplane_intersection(e, h))
            return indexed_record(g, c, "solve_general");
        if (!e.head)
            throw std::logic_error("path has no crossing");
        const PathNode node = *e.head;
        e = step(inst, node, forward_side(node)).edge;
    }
    throw StepBudgetExceeded("solve_general walked more edges than vertex pairs");
}

BinSearchReport solve_rank1(const BimatrixGame& game, const std::optional<RatVector>& zero_sum_beta)
{
    if (game.n() == 1) {
        // One column: every beta is constant, and the row player simply best-responds.
        std::size_t best = 0;
        for (std::size_t i = 1; i < game.m(); ++i)
            if (game.A(i, 0) > game.A(best, 0))
                best = i;
        for (std::size_t i = 0; i < game.m(); ++i)
            if (i != best && game.A(i, 0) == game.A(best, 0))
                throw DegeneratePolytope("tied best responses to the only column");
        MixedProfile p{RatVector(game.m()), RatVector{1}};
        p.x[best] = 1;
        BinSearchReport rep;
        rep.equilibrium = EquilibriumRecord::make(game, p, "bin_search");
        rep.equilibrium.index = determinant_index(game, p);
        return rep;
    }
    Rank1Decomposition d = decompose_rank1(game, zero_sum_beta);
    if (is_constant(d.beta)) {
        const Rank1Decomposition z = decompose_rank1(reduce_constant_beta(d), zero_sum_beta);
        BinSearchReport rep = bin_search(z);
        // Same profile, payoffs of the caller's game.
        const EquilibriumRecord& r = rep.equilibrium;
        EquilibriumRecord fixed = EquilibriumRecord::make(game, r.profile, r.provenance);
        fixed.index = r.index;
        rep.equilibrium = fixed;
        return rep;
    }
    return bin_search(d);
}

RatVector homeo_forward(const GeneralDecomposition& d, const RatVector& alpha, const MixedProfile& p)
{
    if (alpha.size() != d.m())
        throw DimensionMismatch("alpha length differs from m");
    const BimatrixGame g(d.A, d.C + RatMatrix::outer(alpha, d.beta));
    if (!verify_equilibrium(g, p))
        throw NotEquilibrium("profile is not an equilibrium of G(alpha)");
    RatVector out(d.m());
    out[0] = dot(d.beta, p.y) + dot(alpha, p.x);
    for (std::size_t i = 1; i < d.m(); ++i)
        out[i] = alpha[i] - alpha[0];
    return out;
}

Rational g_value(const PathInstance& inst, const RatVector& v, const RatVector& w)
{
    Rational by;
    for (std::size_t j = 0; j < inst.n(); ++j)
        by += inst.d.beta[j] * v[j];
    return by + w[inst.m()];
}

std::pair<RatVector, MixedProfile> homeo_inverse(const PathInstance& inst, const ComponentTrace& trace,
                                                 const RatVector& alpha_prime)
{
    const std::size_t m = inst.m(), n = inst.n();
    if (alpha_prime.size() != m)
        throw DimensionMismatch("alpha' length differs from m");
    const Rational target = alpha_prime[0];

    std::vector<Rational> g;
    for (const auto& u : trace.nodes)
        g.push_back(g_value(inst, u.v.coords, u.w.coords));
    // Edge i joins nodes i-1 and i; edge 0 and the last edge are rays.
    const std::size_t pos = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), target) - g.begin());
    const PathEdge& e = trace.edges[pos];

    const auto [v0, w0] = e.point_at(0);
    const auto [v1, w1] = e.point_at(1);
    const Rational g0 = g_value(inst, v0, w0);
    const Rational slope = g_value(inst, v1, w1) - g0;
    if (slope.is_zero())
        throw DegeneratePolytope("g is constant along a path edge");
    const Rational t = (target - g0) / slope;
    const auto [v, w] = e.point_at(t);

    MixedProfile p{RatVector(m), RatVector(n)};
    for (std::size_t i = 0; i < m; ++i)
        p.x[i] = w[i];
    for (std::size_t j = 0; j < n; ++j)
        p.y[j] = v[j];
    // alpha_i = alpha_1 + alpha'_i and alpha . x = lambda.
    Rational a1 = w[m];
    for (std::size_t i = 1; i < m; ++i)
        a1 -= alpha_prime[i] * p.x[i];
    RatVector alpha(m);
    alpha[0] = a1;
    for (std::size_t i = 1; i < m; ++i)
        alpha[i] = a1 + alpha_prime[i];
    if (!verify_equilibrium(BimatrixGame(inst.d.A, inst.d.C + RatMatrix::outer(alpha, inst.d.beta)), p))
        throw DegeneratePolytope("recovered point is not an equilibrium");
    return {alpha, p};
}

std::pair<RatVector, MixedProfile> homeo_inverse(const PathInstance& inst, const RatVector& alpha_prime)
{
    return homeo_inverse(inst, trace_path(inst), alpha_prime);
}

std::vector<RatVector> homeo_k_forward(const RankKDecomposition& d, const std::vector<RatVector>& alpha,
                                       const MixedProfile& p)
{
    if (alpha.size() != d.k())
        throw DimensionMismatch("alpha has the wrong number of rows");
    RankKDecomposition at{d.A, alpha, d.betas};
    if (!verify_equilibrium(at.game(), p))
        throw NotEquilibrium("profile is not an equilibrium of G(alpha)");
    std::vector<RatVector> out;
    for (std::size_t l = 0; l < d.k(); ++l) {
        RatVector r(d.m());
        r[0] = dot(alpha[l], p.x) + dot(d.betas[l], p.y);
        for (std::size_t i = 1; i < d.m(); ++i)
            r[i] = alpha[l][i] - alpha[l][0];
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct FixedPointSearch
{
    const RankKInstance& inst;
    const std::vector<RatVector>& gammas;
    std::size_t evaluations = 0;
    std::optional<FixedPointResult> best;

    std::size_t k() const { return inst.k(); }

    RatVector clamp(RatVector a) const
    {
        for (std::size_t l = 0; l < k(); ++l)
            a[l] = std::clamp(a[l], gammas[l].min(), gammas[l].max());
        return a;
    }

    RatVector image(const RatVector& w) const
    {
        RatVector f(k());
        for (std::size_t l = 0; l < k(); ++l)
            for (std::size_t i = 0; i < inst.m(); ++i)
                f[l] += gammas[l][i] * w[i];
        return f;
    }

    /** Evaluates f, records the best point, returns (f(a), w). */
    std::pair<RatVector, RatVector> eval(const RatVector& a)
    {
        ++evaluations;
        const OptK opt = solve_lp_k(inst, a);
        const RatVector f = image(opt.w_point);
        Rational res;
        for (std::size_t l = 0; l < k(); ++l)
            res = std::max(res, abs(f[l] - a[l]));
        if (!best || res < best->residual) {
            FixedPointResult r;
            r.a = a;
            r.residual = res;
            if (res.is_zero()) {
                MixedProfile p{RatVector(inst.m()), RatVector(inst.n())};
                for (std::size_t i = 0; i < inst.m(); ++i)
                    p.x[i] = opt.w_point[i];
                for (std::size_t j = 0; j < inst.n(); ++j)
                    p.y[j] = opt.v_point[j];
                const BimatrixGame game = RankKDecomposition{inst.d.A, gammas, inst.d.betas}.game();
                if (verify_equilibrium(game, p))
                    r.equilibrium = EquilibriumRecord::make(game, p, "fixed_point_search");
            }
            best = std::move(r);
        }
        return {f, opt.w_point};
    }

    bool done() const { return best && best->residual.is_zero(); }

    /**
     * On the piece where the tight set at w is fixed, x is affine in a;
     * solve a = Gamma x(a) there and test the candidate exactly. With
     * `ascending`, only a piece on which a - f(a) increases qualifies.
     */
    void polish(const RatVector& w, bool ascending = false)
    {
        const Polytope& q = inst.Qk;
        const LabelSet tight = q.labels_at(w);
        const std::size_t m = inst.m(), d = q.dim();
        if (tight.size() != m)
            return;
        RatMatrix sys(d, d);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < d; ++c)
                sys(r, c) = q.inequalities()(tight[r], c);
        for (std::size_t c = 0; c < d; ++c)
            sys(m, c) = q.equality()[c];
        for (std::size_t l = 0; l < k(); ++l)
            sys(m + 1 + l, m + l) = 1;
        std::vector<RatVector> cols;
        try {
            RatVector rhs(d);
            rhs[m] = 1;
            cols.push_back(solve_linear_system(sys, rhs));
            for (std::size_t l = 0; l < k(); ++l) {
                RatVector e(d);
                e[m + 1 + l] = 1;
                cols.push_back(solve_linear_system(sys, e));
            }
        } catch (const Singular&) {
            return;
        }
        // (I - Gamma X1) a = Gamma x0
        RatMatrix lhs = RatMatrix::identity(k());
        const RatVector rhs = image(cols[0]);
        for (std::size_t l = 0; l < k(); ++l) {
            const RatVector gl = image(cols[1 + l]);
            for (std::size_t r = 0; r < k(); ++r)
                lhs(r, l) -= gl[r];
        }
        if (ascending && lhs(0, 0).sign() <= 0)
            return;
        RatVector cand;
        try {
            cand = solve_linear_system(lhs, rhs);
        } catch (const Singular&) {
            return;
        }
        for (std::size_t l = 0; l < k(); ++l)
            if (cand[l] < gammas[l].min() || cand[l] > gammas[l].max())
                return;
        eval(cand);
    }
};

}  // namespace

std::optional<FixedPointResult> fixed_point_search(const RankKInstance& inst, const std::vector<RatVector>& gammas,
                                                   const Rational& tol, std::size_t max_iters)
{
    const std::size_t k = inst.k();
    if (k == 0 || gammas.size() != k)
        throw DimensionMismatch("fixed_point_search needs k >= 1 gammas");
    FixedPointSearch s{inst, gammas, 0, std::nullopt};

    if (k == 1) {
        // Bisection on a - f(a), which is <= 0 at gamma_min and >= 0 at
        // gamma_max; the probes are those of bin_search.
        Rational lo = gammas[0].min(), hi = gammas[0].max();
        for (const Rational& end : {lo, hi}) {
            if (s.done())
                break;
            s.polish(s.eval(RatVector{end}).second, true);
        }
        for (std::size_t it = 0; it < max_iters && !s.done(); ++it) {
            const Rational mid = (lo + hi) / 2;
            const auto [f, w] = s.eval(RatVector{mid});
            if (s.done())
                break;
            s.polish(w, true);
            if (mid - f[0] < 0)
                lo = mid;
            else
                hi = mid;
        }
    } else {
        RatVector a(k);
        for (std::size_t l = 0; l < k; ++l)
            a[l] = (gammas[l].min() + gammas[l].max()) / 2;
        for (std::size_t it = 0; it < max_iters && !s.done(); ++it) {
            const auto [f, w] = s.eval(a);
            if (s.done())
                break;
            s.polish(w);
            if (s.done())
                break;
            a = s.clamp((a + f) * Rational(1, 2));
        }
    }

    if (!s.done() && k > 1) {
        RatVector lo(k), hi(k);
        for (std::size_t l = 0; l < k; ++l) {
            lo[l] = gammas[l].min();
            hi[l] = gammas[l].max();
        }
        const std::size_t per_dim = 5;
        for (std::size_t round = 0; round < max_iters && !s.done(); ++round) {
            std::size_t cells = 1;
            for (std::size_t l = 0; l < k; ++l)
                cells *= per_dim;
            std::optional<std::pair<Rational, RatVector>> round_best;
            for (std::size_t c = 0; c < cells && !s.done(); ++c) {
                RatVector p(k);
                std::size_t rest = c;
                for (std::size_t l = 0; l < k; ++l) {
                    const long idx = static_cast<long>(rest % per_dim);
                    rest /= per_dim;
                    p[l] = lo[l] + (hi[l] - lo[l]) * Rational(idx, static_cast<long>(per_dim - 1));
                }
                const auto [f, w] = s.eval(p);
                s.polish(w);
                Rational res;
                for (std::size_t l = 0; l < k; ++l)
                    res = std::max(res, abs(f[l] - p[l]));
                if (!round_best || res < round_best->first)
                    round_best = {res, p};
            }
            if (s.done() || !round_best)
                break;
            // Shrink the box around the best grid point.
            for (std::size_t l = 0; l < k; ++l) {
                const Rational half = (hi[l] - lo[l]) / static_cast<long>(per_dim - 1);
                lo[l] = std::max(gammas[l].min(), round_best->second[l] - half);
                hi[l] = std::min(gammas[l].max(), round_best->second[l] + half);
            }
        }
    }

    if (!s.best || s.best->residual > tol)
        return std::nullopt;
    FixedPointResult r = *s.best;
    r.evaluations = s.evaluations;
    return r;
}

RegionGraph region_graph(const PathInstance& inst, const ComponentTrace& trace)
{
    RegionGraph g;
    const std::size_t m = inst.m();
    auto hyperplane = [&](const PolytopeVertex& w) {
        RegionHyperplane h;
        h.coeffs = RatVector(m);
        for (std::size_t i = 0; i < m; ++i)
            h.coeffs[i] = w.coords[i];
        h.offset = w.coords[m];
        h.w_basis = w.basis;
        return h;
    };
    for (const auto& e : trace.edges) {
        if (e.kind != EdgeKind::VFixed)
            continue;
        Region r;
        r.vertex = e.fixed;
        r.edge = e;
        r.hyperplanes.push_back(hyperplane(e.moving.base));
        if (e.moving.far_end)
            r.hyperplanes.push_back(hyperplane(*e.moving.far_end));
        std::size_t rows_tight = 0;
        for (InequalityIndex l : e.fixed.labels)
            if (l < m)
                ++rows_tight;
        if (e.moving.unbounded)
            r.kind = RegionKind::HalfSpace;
        else if (rows_tight == 1)
            r.kind = RegionKind::Slab;
        else
            r.kind = RegionKind::TwoHyperplaneUnion;
        g.regions.push_back(std::move(r));
    }
    const std::size_t count = g.regions.size();
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            bool shared = false;
            for (const auto& ha : g.regions[a].hyperplanes)
                for (const auto& hb : g.regions[b].hyperplanes)
                    shared = shared || ha.w_basis == hb.w_basis;
            if (shared)
                g.adjacency.emplace_back(a, b);
        }
    }
    return g;
}

}  // namespace rank1
