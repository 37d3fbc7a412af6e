#include "rank1/polytope.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <random>
#include <stdexcept>

#include "rank1/errors.hpp"
#include "rank1/linalg.hpp"

namespace rank1 {

Polytope::Polytope(PolytopeKind kind, std::size_t m, std::size_t n, std::size_t k, RatMatrix g, RatVector e)
    : kind_(kind), m_(m), n_(n), k_(k), g_(std::move(g)), e_(std::move(e))
{
    if (g_.rows() != m + n || g_.cols() != e_.size())
        throw DimensionMismatch("polytope system shape");
}

Rational Polytope::slack(InequalityIndex i, const RatVector& z) const
{
    Rational s;
    for (std::size_t c = 0; c < dim(); ++c)
        if (!g_(i, c).is_zero())
            s += g_(i, c) * z[c];
    return s;
}

bool Polytope::contains(const RatVector& z) const
{
    if (z.size() != dim() || dot(e_, z) != 1)
        return false;
    for (std::size_t i = 0; i < inequality_count(); ++i)
        if (slack(i, z).sign() > 0)
            return false;
    return true;
}

LabelSet Polytope::labels_at(const RatVector& z) const
{
    LabelSet l;
    for (std::size_t i = 0; i < inequality_count(); ++i)
        if (slack(i, z).is_zero())
            l.push_back(i);
    return l;
}

std::optional<PolytopeVertex> Polytope::vertex_from_basis(const std::vector<InequalityIndex>& basis) const
{
    if (basis.size() != basis_size())
        throw std::invalid_argument("basis has the wrong size");
    RatMatrix sys(dim(), dim());
    RatVector rhs(dim());
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < dim(); ++c)
            sys(r, c) = g_(basis[r], c);
    for (std::size_t c = 0; c < dim(); ++c)
        sys(dim() - 1, c) = e_[c];
    rhs[dim() - 1] = 1;
    RatVector z;
    try {
        z = solve_linear_system(sys, rhs);
    } catch (const Singular&) {
        return std::nullopt;
    }
    if (!contains(z))
        return std::nullopt;
    PolytopeVertex v;
    v.which = kind_;
    v.coords = std::move(z);
    v.labels = labels_at(v.coords);
    v.basis = basis;
    std::sort(v.basis.begin(), v.basis.end());
    return v;
}

PolytopeVertex Polytope::make_vertex(const std::vector<InequalityIndex>& basis) const
{
    auto v = vertex_from_basis(basis);
    if (!v)
        throw DegeneratePolytope("basis does not define a feasible vertex");
    if (v->labels.size() != basis_size())
        throw DegeneratePolytope("vertex has surplus tight inequalities");
    return *v;
}

Polytope build_P(const RatMatrix& A)
{
    const std::size_t m = A.rows(), n = A.cols();
    RatMatrix g(m + n, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = A(i, j);
        g(i, n) = -1;
    }
    for (std::size_t j = 0; j < n; ++j)
        g(m + j, j) = -1;
    RatVector e(n + 1);
    for (std::size_t j = 0; j < n; ++j)
        e[j] = 1;
    return Polytope(PolytopeKind::P, m, n, 0, std::move(g), std::move(e));
}

namespace {

Polytope build_q(PolytopeKind kind, const RatMatrix& C, const std::vector<RatVector>& betas)
{
    const std::size_t m = C.rows(), n = C.cols(), k = betas.size();
    RatMatrix g(m + n, m + k + 1);
    for (std::size_t i = 0; i < m; ++i)
        g(i, i) = -1;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i)
            g(m + j, i) = C(i, j);
        for (std::size_t l = 0; l < k; ++l)
            g(m + j, m + l) = betas[l][j];
        g(m + j, m + k) = -1;
    }
    RatVector e(m + k + 1);
    for (std::size_t i = 0; i < m; ++i)
        e[i] = 1;
    return Polytope(kind, m, n, k, std::move(g), std::move(e));
}

}  // namespace

Polytope build_Qprime(const RatMatrix& C, const RatVector& beta)
{
    if (beta.size() != C.cols())
        throw DimensionMismatch("beta length differs from column count");
    if (beta.is_zero())
        throw ZeroBeta("beta is zero");
    return build_q(PolytopeKind::Qprime, C, {beta});
}

Polytope build_QprimeK(const RatMatrix& A, const std::vector<RatVector>& betas)
{
    for (const auto& b : betas)
        if (b.size() != A.cols())
            throw DimensionMismatch("beta length differs from column count");
    if (betas.empty() || matrix_rank(RatMatrix::from_rows(betas)) != betas.size())
        throw DependentBetas("betas are linearly dependent");
    return build_q(PolytopeKind::QprimeK, -A, betas);
}

RatVector EdgeDescriptor::point_at(const Rational& t) const
{
    return base.coords + direction * t;
}

LabelSet EdgeDescriptor::interior_labels() const
{
    return set_difference(base.labels, {relaxed});
}

EdgeDescriptor pivot(const Polytope& poly, const PolytopeVertex& from, InequalityIndex relax)
{
    if (!std::binary_search(from.basis.begin(), from.basis.end(), relax))
        throw std::invalid_argument("relaxed inequality is not in the basis");
    if (from.labels != from.basis)
        throw DegeneratePolytope("pivot from a degenerate vertex");
    const std::size_t d = poly.dim();
    RatMatrix sys(d, d);
    RatVector rhs(d);
    for (std::size_t r = 0; r < from.basis.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c)
            sys(r, c) = poly.inequalities()(from.basis[r], c);
        if (from.basis[r] == relax)
            rhs[r] = -1;
    }
    for (std::size_t c = 0; c < d; ++c)
        sys(d - 1, c) = poly.equality()[c];

    EdgeDescriptor edge;
    edge.base = from;
    edge.relaxed = relax;
    edge.direction = solve_linear_system(sys, rhs);

    std::optional<Rational> best;
    std::optional<InequalityIndex> best_row;
    bool tie = false;
    for (std::size_t i = 0; i < poly.inequality_count(); ++i) {
        if (std::binary_search(from.basis.begin(), from.basis.end(), i))
            continue;
        const Rational rate = poly.slack(i, edge.direction);
        if (rate.sign() <= 0)
            continue;
        const Rational t = -poly.slack(i, from.coords) / rate;
        if (!best || t < *best) {
            best = t;
            best_row = i;
            tie = false;
        } else if (t == *best) {
            tie = true;
        }
    }
    if (!best) {
        edge.unbounded = true;
        return edge;
    }
    if (tie || best->is_zero())
        throw DegeneratePolytope("ratio test tie");
    edge.t_max = best;
    edge.entering = best_row;
    std::vector<InequalityIndex> basis = set_difference(from.basis, {relax});
    basis.push_back(*best_row);
    std::sort(basis.begin(), basis.end());
    PolytopeVertex far;
    far.which = from.which;
    far.coords = edge.point_at(*best);
    far.labels = poly.labels_at(far.coords);
    far.basis = std::move(basis);
    if (far.labels != far.basis)
        throw DegeneratePolytope("pivot reached a degenerate vertex");
    edge.far_end = std::move(far);
    return edge;
}

namespace {

/** Smallest t > 0 at which a new inequality becomes tight moving along dir. */
std::optional<PolytopeVertex> walk(const Polytope& poly, const RatVector& point, const LabelSet& tight,
                                   const RatVector& dir)
{
    std::optional<Rational> best;
    std::optional<InequalityIndex> row;
    bool tie = false;
    for (std::size_t i = 0; i < poly.inequality_count(); ++i) {
        if (std::binary_search(tight.begin(), tight.end(), i))
            continue;
        const Rational rate = poly.slack(i, dir);
        if (rate.sign() <= 0)
            continue;
        const Rational t = -poly.slack(i, point) / rate;
        if (!best || t < *best) {
            best = t;
            row = i;
            tie = false;
        } else if (t == *best) {
            tie = true;
        }
    }
    if (!best)
        return std::nullopt;
    if (tie)
        throw DegeneratePolytope("edge endpoint has surplus tight inequalities");
    std::vector<InequalityIndex> basis = tight;
    basis.push_back(*row);
    std::sort(basis.begin(), basis.end());
    return poly.make_vertex(basis);
}

}  // namespace

std::pair<std::optional<PolytopeVertex>, std::optional<PolytopeVertex>>
edge_endpoints(const Polytope& poly, const RatVector& point)
{
    const LabelSet tight = poly.labels_at(point);
    if (tight.size() + 2 != poly.dim())
        throw DegeneratePolytope("point is not in the relative interior of an edge");
    const std::size_t d = poly.dim();
    RatVector dir;
    for (std::size_t extra = 0; extra < d && dir.empty(); ++extra) {
        RatMatrix sys(d, d);
        RatVector rhs(d);
        for (std::size_t r = 0; r < tight.size(); ++r)
            for (std::size_t c = 0; c < d; ++c)
                sys(r, c) = poly.inequalities()(tight[r], c);
        for (std::size_t c = 0; c < d; ++c)
            sys(d - 2, c) = poly.equality()[c];
        sys(d - 1, extra) = 1;
        rhs[d - 1] = 1;
        try {
            dir = solve_linear_system(sys, rhs);
        } catch (const Singular&) {
        }
    }
    if (dir.empty())
        throw DegeneratePolytope("tight inequalities at the point are dependent");
    for (const auto& c : dir) {
        if (c.is_zero())
            continue;
        if (c.sign() < 0)
            dir = -dir;
        break;
    }
    return {walk(poly, point, tight, -dir), walk(poly, point, tight, dir)};
}

StartInfo start_indices(const RatMatrix& A, const RatVector& beta)
{
    if (is_constant(beta))
        throw ConstantBeta("beta is constant");
    StartInfo s{};
    s.j_s = beta.argmin();
    s.j_e = beta.argmax();
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (j != s.j_s && beta[j] == beta[s.j_s])
            throw DegeneratePolytope("minimum of beta is attained twice");
        if (j != s.j_e && beta[j] == beta[s.j_e])
            throw DegeneratePolytope("maximum of beta is attained twice");
    }
    auto best_row = [&](std::size_t j) {
        const RatVector c = A.col(j);
        const std::size_t i = c.argmax();
        for (std::size_t r = 0; r < c.size(); ++r)
            if (r != i && c[r] == c[i])
                throw DegeneratePolytope("best response to a pure strategy is not unique");
        return i;
    };
    s.i_s = best_row(s.j_s);
    s.i_e = best_row(s.j_e);
    return s;
}

std::pair<PolytopeVertex, PolytopeVertex> start_vertices(const Polytope& P, const RatVector& beta,
                                                         const RatMatrix& A)
{
    const StartInfo s = start_indices(A, beta);
    const std::size_t m = P.m(), n = P.n();
    auto pure = [&](std::size_t i, std::size_t j) {
        std::vector<InequalityIndex> basis{i};
        for (std::size_t c = 0; c < n; ++c)
            if (c != j)
                basis.push_back(m + c);
        return P.make_vertex(basis);
    };
    return {pure(s.i_s, s.j_s), pure(s.i_e, s.j_e)};
}

LambdaBounds lambda_bounds(const GeneralDecomposition& d)
{
    const StartInfo s = start_indices(d.A, d.beta);
    const RatMatrix& c = d.C;
    const RatVector& b = d.beta;
    LambdaBounds out{};
    std::optional<Rational> lo, hi;
    bool tie_lo = false, tie_hi = false;
    for (std::size_t j = 0; j < d.n(); ++j) {
        if (j != s.j_s) {
            const Rational r = (c(s.i_s, s.j_s) - c(s.i_s, j)) / (b[j] - b[s.j_s]);
            if (!lo || r < *lo) {
                lo = r;
                out.j_star_s = j;
                tie_lo = false;
            } else if (r == *lo) {
                tie_lo = true;
            }
        }
        if (j != s.j_e) {
            const Rational r = (c(s.i_e, j) - c(s.i_e, s.j_e)) / (b[s.j_e] - b[j]);
            if (!hi || r > *hi) {
                hi = r;
                out.j_star_e = j;
                tie_hi = false;
            } else if (r == *hi) {
                tie_hi = true;
            }
        }
    }
    if (tie_lo || tie_hi)
        throw DegeneratePolytope("bounding vertex has surplus tight inequalities");
    out.lambda_s = *lo;
    out.lambda_e = *hi;
    return out;
}

std::pair<PolytopeVertex, PolytopeVertex> bounding_vertices(const Polytope& Q, const GeneralDecomposition& d)
{
    const StartInfo s = start_indices(d.A, d.beta);
    const LambdaBounds lb = lambda_bounds(d);
    const std::size_t m = d.m();
    auto make = [&](std::size_t i0, std::size_t j0, std::size_t j1) {
        std::vector<InequalityIndex> basis;
        for (std::size_t i = 0; i < m; ++i)
            if (i != i0)
                basis.push_back(i);
        basis.push_back(m + std::min(j0, j1));
        basis.push_back(m + std::max(j0, j1));
        return Q.make_vertex(basis);
    };
    return {make(s.i_s, s.j_s, lb.j_star_s), make(s.i_e, s.j_e, lb.j_star_e)};
}

std::size_t basis_count(const Polytope& poly)
{
    const std::size_t n = poly.inequality_count();
    const std::size_t k = poly.basis_size();
    if (k > n)
        return 0;
    // C(n, k) with saturation; each partial product is itself a binomial.
    std::size_t c = 1;
    for (std::size_t i = 1; i <= std::min(k, n - k); ++i) {
        const std::size_t num = n - std::min(k, n - k) + i;
        if (c > std::numeric_limits<std::size_t>::max() / num)
            return std::numeric_limits<std::size_t>::max();
        c = c * num / i;
    }
    return c;
}

namespace {

bool degenerate_at(const Polytope& poly, const std::vector<InequalityIndex>& basis)
{
    auto v = poly.vertex_from_basis(basis);
    return v && v->labels.size() > poly.basis_size();
}

}  // namespace

bool check_nondegenerate(const Polytope& poly, std::optional<std::size_t> samples)
{
    const std::size_t total = poly.inequality_count();
    const std::size_t k = poly.basis_size();
    if (samples) {
        std::mt19937_64 rng(0x5eed);
        std::vector<InequalityIndex> all(total);
        for (std::size_t i = 0; i < total; ++i)
            all[i] = i;
        for (std::size_t s = 0; s < *samples; ++s) {
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<InequalityIndex> basis(all.begin(), all.begin() + static_cast<long>(k));
            std::sort(basis.begin(), basis.end());
            if (degenerate_at(poly, basis))
                return false;
        }
        return true;
    }
    if (k > total)
        return true;
    if (basis_count(poly) > 1'000'000)
        throw TooLarge("too many bases for exhaustive degeneracy check");
    std::vector<InequalityIndex> basis(k);
    for (std::size_t i = 0; i < k; ++i)
        basis[i] = i;
    for (;;) {
        if (degenerate_at(poly, basis))
            return false;
        std::size_t i = k;
        while (i > 0 && basis[i - 1] == total - k + i - 1)
            --i;
        if (i == 0)
            return true;
        ++basis[i - 1];
        for (std::size_t j = i; j < k; ++j)
            basis[j] = basis[j - 1] + 1;
    }
}

bool is_subset(const LabelSet& a, const LabelSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

LabelSet set_union(const LabelSet& a, const LabelSet& b)
{
    LabelSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LabelSet set_intersection(const LabelSet& a, const LabelSet& b)
{
    LabelSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LabelSet set_difference(const LabelSet& a, const LabelSet& b)
{
    LabelSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace rank1
