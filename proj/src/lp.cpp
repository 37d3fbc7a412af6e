#include "rank1/lp.hpp"

#include <limits>
#include <optional>

#include "rank1/errors.hpp"

namespace rank1 {

void LinearProgramSpec::validate() const
{
    const std::size_t rows = constraints.rows();
    if (relations.size() != rows)
        throw MalformedLP("relation count differs from constraint row count");
    if (rhs.size() != rows)
        throw MalformedLP("rhs length differs from constraint row count");
    if (rows > 0 && constraints.cols() != variable_count())
        throw MalformedLP("constraint column count differs from objective length");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class ColumnKind { Free, Slack, Artificial };

class Tableau
{
    public:
        explicit Tableau(const LinearProgramSpec& spec);

        LPSolution run();

    private:
        std::size_t rows() const { return t_.size(); }
        std::size_t cols() const { return kind_.size(); }
        Rational& rhs(std::size_t r) { return t_[r].back(); }

        void pivot(std::size_t r, std::size_t c);
        void eliminate_free_variables();
        bool phase_one();
        /** Returns false when the objective is unbounded. */
        bool optimize(const std::vector<Rational>& cost);
        Rational reduced_cost(const std::vector<Rational>& cost, std::size_t c) const;
        bool can_enter(std::size_t c) const;
        std::optional<std::size_t> ratio_test(std::size_t c) const;

        const LinearProgramSpec& spec_;
        std::vector<std::vector<Rational>> t_;   // rows x (cols + 1), last entry = rhs
        std::vector<ColumnKind> kind_;
        std::vector<std::size_t> slack_row_;     // owning row of a slack column
        std::vector<std::size_t> basic_;         // basic column per row, or kNone
        std::vector<bool> free_row_;             // row defines a free variable
        std::vector<bool> removed_;              // redundant row
        std::vector<bool> lineality_;            // free variable that could not be pivoted in
        std::size_t pivots_ = 0;
};

Tableau::Tableau(const LinearProgramSpec& spec) : spec_(spec)
{
    const std::size_t nv = spec.variable_count();
    const std::size_t m = spec.constraints.rows();
    kind_.assign(nv, ColumnKind::Free);
    slack_row_.assign(nv, kNone);
    std::vector<std::size_t> slack_col(m, kNone);
    for (std::size_t r = 0; r < m; ++r) {
        if (spec.relations[r] == Relation::LessEqual) {
            slack_col[r] = kind_.size();
            kind_.push_back(ColumnKind::Slack);
            slack_row_.push_back(r);
        }
    }
    t_.assign(m, std::vector<Rational>(kind_.size() + 1));
    basic_.assign(m, kNone);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < nv; ++j)
            t_[r][j] = spec.constraints(r, j);
        if (slack_col[r] != kNone) {
            t_[r][slack_col[r]] = 1;
            basic_[r] = slack_col[r];
        }
        t_[r].back() = spec.rhs[r];
    }
    free_row_.assign(m, false);
    removed_.assign(m, false);
    lineality_.assign(nv, false);
}

void Tableau::pivot(std::size_t r, std::size_t c)
{
    ++pivots_;
    const Rational inv = Rational(1) / t_[r][c];
    for (auto& x : t_[r])
        x *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
        if (i == r || t_[i][c].is_zero())
            continue;
        const Rational f = t_[i][c];
        for (std::size_t j = 0; j < t_[i].size(); ++j)
            if (!t_[r][j].is_zero())
                t_[i][j] -= f * t_[r][j];
    }
    basic_[r] = c;
}

void Tableau::eliminate_free_variables()
{
    const std::size_t nv = spec_.variable_count();
    for (std::size_t k = 0; k < nv; ++k) {
        std::size_t chosen = kNone;
        for (int pass = 0; pass < 2 && chosen == kNone; ++pass) {
            const Relation wanted = pass == 0 ? Relation::Equal : Relation::LessEqual;
            for (std::size_t r = 0; r < rows(); ++r) {
                if (!free_row_[r] && spec_.relations[r] == wanted && !t_[r][k].is_zero()) {
                    chosen = r;
                    break;
                }
            }
        }
        if (chosen == kNone) {
            lineality_[k] = true;
            continue;
        }
        pivot(chosen, k);
        free_row_[chosen] = true;
    }
}

bool Tableau::can_enter(std::size_t c) const
{
    if (kind_[c] == ColumnKind::Free)
        return lineality_[c];
    for (std::size_t r = 0; r < rows(); ++r)
        if (!removed_[r] && basic_[r] == c)
            return false;
    return true;
}

Rational Tableau::reduced_cost(const std::vector<Rational>& cost, std::size_t c) const
{
    Rational d = cost[c];
    for (std::size_t r = 0; r < rows(); ++r) {
        if (removed_[r] || basic_[r] == kNone)
            continue;
        const Rational& cb = cost[basic_[r]];
        if (!cb.is_zero() && !t_[r][c].is_zero())
            d -= cb * t_[r][c];
    }
    return d;
}

std::optional<std::size_t> Tableau::ratio_test(std::size_t c) const
{
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows(); ++r) {
        if (removed_[r] || free_row_[r] || t_[r][c].sign() <= 0)
            continue;
        const Rational ratio = t_[r].back() / t_[r][c];
        if (!best || ratio < best_ratio ||
            (ratio == best_ratio && basic_[r] < basic_[*best])) {
            best = r;
            best_ratio = ratio;
        }
    }
    return best;
}

bool Tableau::optimize(const std::vector<Rational>& cost)
{
    for (;;) {
        std::size_t entering = kNone;
        for (std::size_t c = 0; c < cols(); ++c) {
            if (kind_[c] == ColumnKind::Artificial || !can_enter(c))
                continue;
            const Rational d = reduced_cost(cost, c);
            if (kind_[c] == ColumnKind::Free) {
                // An unconstrained direction with nonzero cost is unbounded.
                if (!d.is_zero())
                    return false;
                continue;
            }
            if (d.sign() > 0) {
                entering = c;
                break;
            }
        }
        if (entering == kNone)
            return true;
        const auto leaving = ratio_test(entering);
        if (!leaving)
            return false;
        pivot(*leaving, entering);
    }
}

bool Tableau::phase_one()
{
    std::vector<std::size_t> art_rows;
    for (std::size_t r = 0; r < rows(); ++r) {
        if (free_row_[r])
            continue;
        const bool needs = basic_[r] == kNone || rhs(r).sign() < 0;
        if (!needs)
            continue;
        if (rhs(r).sign() < 0)
            for (auto& x : t_[r])
                x = -x;
        art_rows.push_back(r);
    }
    if (art_rows.empty())
        return true;

    const std::size_t first_art = cols();
    for (std::size_t r : art_rows) {
        kind_.push_back(ColumnKind::Artificial);
        slack_row_.push_back(r);
    }
    for (auto& row : t_)
        row.insert(row.end() - 1, art_rows.size(), Rational());
    for (std::size_t a = 0; a < art_rows.size(); ++a) {
        t_[art_rows[a]][first_art + a] = 1;
        basic_[art_rows[a]] = first_art + a;
    }

    std::vector<Rational> cost(cols());
    for (std::size_t c = first_art; c < cols(); ++c)
        cost[c] = -1;
    // Artificials may enter during phase one as well.
    for (;;) {
        std::size_t entering = kNone;
        for (std::size_t c = 0; c < cols(); ++c) {
            if (kind_[c] == ColumnKind::Free || !can_enter(c))
                continue;
            if (reduced_cost(cost, c).sign() > 0) {
                entering = c;
                break;
            }
        }
        if (entering == kNone)
            break;
        const auto leaving = ratio_test(entering);
        if (!leaving)
            break;  // cannot happen: the phase-one objective is bounded by zero
        pivot(*leaving, entering);
    }

    Rational infeasibility;
    for (std::size_t r = 0; r < rows(); ++r)
        if (!removed_[r] && basic_[r] != kNone && kind_[basic_[r]] == ColumnKind::Artificial)
            infeasibility += t_[r].back();
    if (!infeasibility.is_zero())
        return false;

    // Drive remaining (zero-level) artificials out, dropping redundant rows.
    for (std::size_t r = 0; r < rows(); ++r) {
        if (removed_[r] || basic_[r] == kNone || kind_[basic_[r]] != ColumnKind::Artificial)
            continue;
        std::size_t replacement = kNone;
        for (std::size_t c = 0; c < first_art; ++c) {
            if (kind_[c] == ColumnKind::Slack && can_enter(c) && !t_[r][c].is_zero()) {
                replacement = c;
                break;
            }
        }
        if (replacement == kNone)
            removed_[r] = true;
        else
            pivot(r, replacement);
    }
    // Artificial columns are never eligible again (kind check in optimize()).
    return true;
}

LPSolution Tableau::run()
{
    LPSolution sol;
    const std::size_t nv = spec_.variable_count();
    eliminate_free_variables();
    if (!phase_one()) {
        sol.status = LPStatus::Infeasible;
        sol.pivots = pivots_;
        return sol;
    }

    std::vector<Rational> cost(cols());
    for (std::size_t k = 0; k < nv; ++k)
        cost[k] = spec_.objective[k];
    if (!optimize(cost)) {
        sol.status = LPStatus::Unbounded;
        sol.pivots = pivots_;
        return sol;
    }

    sol.status = LPStatus::Optimal;
    sol.point = RatVector(nv);
    for (std::size_t r = 0; r < rows(); ++r)
        if (!removed_[r] && basic_[r] != kNone && basic_[r] < nv)
            sol.point[basic_[r]] = t_[r].back();
    sol.value = dot(spec_.objective, sol.point);

    sol.strictly_optimal = true;
    for (std::size_t c = 0; c < cols(); ++c) {
        if (kind_[c] == ColumnKind::Artificial || !can_enter(c))
            continue;
        if (kind_[c] == ColumnKind::Free || reduced_cost(cost, c).is_zero()) {
            sol.strictly_optimal = false;
            break;
        }
    }

    std::vector<bool> slack_basic(spec_.constraints.rows(), false);
    for (std::size_t r = 0; r < rows(); ++r)
        if (!removed_[r] && basic_[r] != kNone && kind_[basic_[r]] == ColumnKind::Slack)
            slack_basic[slack_row_[basic_[r]]] = true;
    for (std::size_t r = 0; r < rows(); ++r) {
        if (removed_[r])
            continue;
        if (spec_.relations[r] == Relation::Equal || !slack_basic[r])
            sol.basis.push_back(r);
    }
    sol.pivots = pivots_;
    return sol;
}

}  // namespace

LPSolution solve_lp(const LinearProgramSpec& spec)
{
    spec.validate();
    Tableau tableau(spec);
    return tableau.run();
}

}  // namespace rank1
