// rank1: exact equilibrium computation for bimatrix games.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rank1/algorithms.hpp"
#include "rank1/errors.hpp"
#include "rank1/io.hpp"
#include "rank1/linalg.hpp"
#include "rank1/oracle.hpp"

using nlohmann::json;
using namespace rank1;

namespace {

enum Exit { Ok = 0, Other = 1, Parse = 2, Degenerate = 3, Guard = 4 };

struct Options
{
    std::string input;
    bool json = false;
    std::optional<std::uint64_t> perturb;
    std::string beta;
    std::size_t max_iters = 200;

    std::size_t all_from = 0;
    bool all = false;
    std::string k_eval;
    bool search = false;
    std::string tol = "0";
};

json rat(const Rational& r) { return r.str(); }

json vec(const RatVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(rat(x));
    return a;
}

json one_based(const std::vector<std::size_t>& s)
{
    json a = json::array();
    for (auto i : s)
        a.push_back(i + 1);
    return a;
}

json record_json(const EquilibriumRecord& r)
{
    json j;
    j["x"] = vec(r.profile.x);
    j["y"] = vec(r.profile.y);
    j["payoff1"] = rat(r.payoff1);
    j["payoff2"] = rat(r.payoff2);
    j["support"] = {{"rows", one_based(r.support.I)}, {"cols", one_based(r.support.J)}};
    j["index"] = r.index ? json(*r.index) : json(nullptr);
    j["provenance"] = r.provenance;
    return j;
}

std::string record_line(const EquilibriumRecord& r)
{
    std::string s = "x = " + to_string(r.profile.x) + "; y = " + to_string(r.profile.y);
    if (r.index)
        s += std::string("; index ") + (*r.index > 0 ? "+1" : "-1");
    return s;
}

class Session
{
    public:
        explicit Session(const Options& o) : opt_(o), game_(read_game_file(o.input))
        {
            if (!o.beta.empty()) {
                beta_ = parse_rational_list(o.beta);
                if (beta_->size() != game_.n())
                    throw ParseError("--beta needs " + std::to_string(game_.n()) + " entries");
            }
        }

        const BimatrixGame& game() const { return game_; }
        const Options& options() const { return opt_; }
        bool perturbed() const { return perturbed_; }

        std::size_t rank() const { return matrix_rank(game_.A + game_.B); }

        void perturb(std::uint64_t seed)
        {
            if (rank() <= 1)
                game_ = perturb_rank1(rank1_decomposition(), seed).game();
            else
                game_ = perturb_game(game_, seed);
            perturbed_ = true;
        }

        /** Zero-sum games get beta (default 1..n); a constant beta is reduced away. */
        Rank1Decomposition rank1_decomposition() const
        {
            const Rank1Decomposition d = decompose_rank1(game_, beta_);
            if (is_constant(d.beta))
                return decompose_rank1(reduce_constant_beta(d), beta_);
            return d;
        }

        GeneralDecomposition path_decomposition() const
        {
            if (rank() <= 1)
                return GeneralDecomposition::from_rank1(rank1_decomposition());
            return embed_general(game_, beta_ ? *beta_ : default_beta(game_.n()));
        }

        const std::optional<RatVector>& beta() const { return beta_; }

    private:
        Options opt_;
        BimatrixGame game_;
        std::optional<RatVector> beta_;
        bool perturbed_ = false;
};

void emit_records(const Session& s, const std::vector<EquilibriumRecord>& recs)
{
    if (s.options().json) {
        json a = json::array();
        for (const auto& r : recs)
            a.push_back(record_json(r));
        std::cout << a.dump(2) << '\n';
        return;
    }
    for (const auto& r : recs)
        std::cout << record_line(r) << '\n';
}

/** Equilibria of the game itself: the whole set for rank 1, the path's crossings otherwise. */
std::vector<EquilibriumRecord> path_equilibria(const Session& s)
{
    if (s.rank() <= 1) {
        auto recs = enumerate_rank1(s.rank1_decomposition());
        // A zero-sum reduction keeps profiles but not payoffs; restate them.
        for (auto& r : recs) {
            auto fixed = EquilibriumRecord::make(s.game(), r.profile, r.provenance);
            fixed.index = r.index;
            r = fixed;
        }
        return recs;
    }
    std::cerr << "warning: rank(A+B) > 1; only equilibria on the fully-labeled path are listed\n";
    return enumerate_path(s.path_decomposition());
}

int cmd_solve(const Session& s)
{
    EquilibriumRecord rec;
    json extra;
    if (s.rank() <= 1) {
        const BinSearchReport rep = solve_rank1(s.game(), s.beta());
        rec = rep.equilibrium;
        extra = {{"iterations", rep.iterations}, {"bound_k", rep.bound_k}, {"is_ne_calls", rep.is_ne_calls},
                 {"bit_length", rep.bit_length}};
    } else {
        std::cerr << "warning: rank(A+B) > 1; returning the first equilibrium on the fully-labeled path\n";
        rec = solve_general(s.game(), s.beta());
    }
    if (s.options().json) {
        json j = record_json(rec);
        if (!extra.is_null())
            j["bin_search"] = extra;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << record_line(rec) << '\n';
    }
    return Ok;
}

int cmd_enumerate(const Session& s)
{
    emit_records(s, path_equilibria(s));
    return Ok;
}

int cmd_index(const Session& s)
{
    const auto recs = path_equilibria(s);
    int total = 0;
    for (const auto& r : recs)
        total += r.index.value_or(0);
    if (s.options().json) {
        json a = json::array();
        for (const auto& r : recs)
            a.push_back(record_json(r));
        std::cout << json{{"equilibria", a}, {"index_sum", total}}.dump(2) << '\n';
    } else {
        for (const auto& r : recs)
            std::cout << record_line(r) << '\n';
        std::cout << "index sum " << (total > 0 ? "+" : "") << total << '\n';
    }
    return Ok;
}

int cmd_oracle(const Session& s)
{
    emit_records(s, support_enumeration(s.game()).equilibria);
    return Ok;
}

json trace_json(const ComponentTrace& t)
{
    json nodes = json::array(), edges = json::array();
    for (const auto& u : t.nodes)
        nodes.push_back({{"v_basis", one_based(u.v.basis)},
                         {"w_basis", one_based(u.w.basis)},
                         {"v", vec(u.v.coords)},
                         {"w", vec(u.w.coords)},
                         {"duplicate", u.duplicate + 1},
                         {"sign", u.sign},
                         {"lambda", rat(u.lambda())}});
    for (const auto& e : t.edges) {
        const auto [lo, hi] = lambda_range(e);
        edges.push_back({{"kind", e.kind == EdgeKind::VFixed ? "v_fixed" : "w_fixed"},
                         {"fixed_basis", one_based(e.fixed.basis)},
                         {"labels", one_based(e.moving.interior_labels())},
                         {"lambda", {lo, hi}}});
    }
    return {{"kind", t.kind == ComponentTrace::Kind::Path ? "path" : "cycle"}, {"nodes", nodes}, {"edges", edges}};
}

int cmd_trace(const Session& s)
{
    const PathInstance inst(s.path_decomposition());
    const ComponentTrace path = trace_path(inst);
    std::vector<ComponentTrace> out;
    const Options& o = s.options();

    if (o.all || o.all_from > 0) {
        auto pairs = fully_labeled_pairs(inst);
        std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
            return std::pair(a.first.basis, a.second.basis) < std::pair(b.first.basis, b.second.basis);
        });
        std::vector<NodeKey> seen;
        for (const auto& u : path.nodes)
            seen.push_back(u.key());
        auto is_seen = [&](const NodeKey& k) { return std::find(seen.begin(), seen.end(), k) != seen.end(); };
        if (o.all_from > 0) {
            if (o.all_from > pairs.size())
                throw std::invalid_argument("--all-from: only " + std::to_string(pairs.size()) +
                                            " fully-labeled pairs");
            const auto& [v, w] = pairs[o.all_from - 1];
            const PathNode seed = make_node(inst, v, w);
            out.push_back(is_seen(seed.key()) ? path : trace_cycle(inst, seed));
        } else {
            out.push_back(path);
            for (const auto& [v, w] : pairs) {
                const PathNode seed = make_node(inst, v, w);
                if (is_seen(seed.key()))
                    continue;
                ComponentTrace c = trace_cycle(inst, seed);
                for (const auto& u : c.nodes)
                    seen.push_back(u.key());
                out.push_back(std::move(c));
            }
        }
    } else {
        out.push_back(path);
    }

    if (o.json) {
        json a = json::array();
        for (const auto& t : out)
            a.push_back(trace_json(t));
        std::cout << a.dump(2) << '\n';
        return Ok;
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        std::cout << (out[c].kind == ComponentTrace::Kind::Path ? "path" : "cycle") << '\n';
        for (const auto& line : export_trace(out[c]))
            std::cout << line << '\n';
    }
    return Ok;
}

int cmd_rank(const Session& s)
{
    const std::size_t k = s.rank();
    json j{{"rank", k}};
    if (k <= 1) {
        const Rank1Decomposition d = decompose_rank1(s.game(), s.beta());
        j["gamma"] = vec(d.gamma);
        j["beta"] = vec(d.beta);
    } else {
        const RankKDecomposition d = decompose_rank_k(s.game());
        json g = json::array(), b = json::array();
        for (std::size_t l = 0; l < k; ++l) {
            g.push_back(vec(d.gammas[l]));
            b.push_back(vec(d.betas[l]));
        }
        j["gammas"] = g;
        j["betas"] = b;
    }
    if (s.options().json) {
        std::cout << j.dump(2) << '\n';
        return Ok;
    }
    std::cout << "rank " << k << '\n';
    if (k <= 1) {
        const Rank1Decomposition d = decompose_rank1(s.game(), s.beta());
        std::cout << "gamma = " << d.gamma << "\nbeta = " << d.beta << '\n';
    } else {
        const RankKDecomposition d = decompose_rank_k(s.game());
        for (std::size_t l = 0; l < k; ++l)
            std::cout << "gamma" << l + 1 << " = " << d.gammas[l] << "\nbeta" << l + 1 << " = " << d.betas[l] << '\n';
    }
    return Ok;
}

int cmd_regions(const Session& s)
{
    const PathInstance inst(s.path_decomposition());
    const RegionGraph g = region_graph(inst, trace_path(inst));
    auto kind = [](RegionKind k) {
        switch (k) {
            case RegionKind::HalfSpace: return "half_space";
            case RegionKind::Slab: return "slab";
            default: return "two_hyperplane_union";
        }
    };
    if (s.options().json) {
        json regions = json::array(), adj = json::array();
        for (const auto& r : g.regions) {
            json hs = json::array();
            for (const auto& h : r.hyperplanes)
                hs.push_back({{"coeffs", vec(h.coeffs)}, {"offset", rat(h.offset)}, {"w_basis", one_based(h.w_basis)}});
            regions.push_back({{"v_basis", one_based(r.vertex.basis)},
                               {"y", vec(r.vertex.coords)},
                               {"kind", kind(r.kind)},
                               {"hyperplanes", hs}});
        }
        for (const auto& [a, b] : g.adjacency)
            adj.push_back({a + 1, b + 1});
        std::cout << json{{"regions", regions}, {"adjacency", adj}}.dump(2) << '\n';
        return Ok;
    }
    for (std::size_t i = 0; i < g.regions.size(); ++i) {
        const Region& r = g.regions[i];
        std::cout << "region " << i + 1 << " v=" << format_labels(r.vertex.basis) << " kind=" << kind(r.kind) << '\n';
        for (const auto& h : r.hyperplanes)
            std::cout << "  alpha . " << h.coeffs << " = " << h.offset << '\n';
    }
    for (const auto& [a, b] : g.adjacency)
        std::cout << "adjacent " << a + 1 << ' ' << b + 1 << '\n';
    return Ok;
}

int cmd_fixedpoint(const Session& s)
{
    const Options& o = s.options();
    const RankKDecomposition d = decompose_rank_k(s.game());
    if (d.k() == 0)
        throw RankTooHigh("fixedpoint needs rank(A+B) >= 1");
    const RankKInstance inst(d);
    if (!o.k_eval.empty()) {
        const RatVector a = parse_rational_list(o.k_eval);
        if (a.size() != d.k())
            throw ParseError("--k-eval needs " + std::to_string(d.k()) + " values");
        const RatVector f = fixed_point_eval(inst, d.gammas, a);
        if (o.json)
            std::cout << json{{"a", vec(a)}, {"f", vec(f)}}.dump(2) << '\n';
        else
            std::cout << "f" << a << " = " << f << '\n';
        return Ok;
    }
    if (!o.search)
        throw std::invalid_argument("fixedpoint needs --k-eval or --search");
    std::cerr << "note: fixed-point search is an experimental heuristic\n";
    const auto r = fixed_point_search(inst, d.gammas, Rational::parse(o.tol), o.max_iters);
    if (!r) {
        if (o.json)
            std::cout << json{{"found", false}}.dump(2) << '\n';
        else
            std::cout << "no point within tolerance\n";
        return Ok;
    }
    if (o.json) {
        json j{{"found", true}, {"a", vec(r->a)}, {"residual", rat(r->residual)}, {"evaluations", r->evaluations}};
        j["equilibrium"] = r->equilibrium ? record_json(*r->equilibrium) : json(nullptr);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "a = " << r->a << "; residual " << r->residual << '\n';
        if (r->equilibrium)
            std::cout << record_line(*r->equilibrium) << '\n';
    }
    return Ok;
}

int run(const Options& o, const std::function<int(const Session&)>& cmd)
{
    Session s(o);
    try {
        return cmd(s);
    } catch (const DegeneratePolytope& e) {
        if (!o.perturb)
            throw;
        std::cerr << "degenerate (" << e.what() << "); retrying on a perturbed game, seed " << *o.perturb << '\n';
    }
    s.perturb(*o.perturb);
    if (!o.json) {
        std::cout << "# perturbed game, seed " << *o.perturb << '\n';
        std::istringstream game(render_game(s.game()));
        for (std::string line; std::getline(game, line);)
            std::cout << "# " << line << '\n';
        return cmd(s);
    }
    // Wrap the JSON result so it cannot be mistaken for output on the original game.
    std::ostringstream captured;
    std::streambuf* saved = std::cout.rdbuf(captured.rdbuf());
    int code = Other;
    try {
        code = cmd(s);
    } catch (...) {
        std::cout.rdbuf(saved);
        throw;
    }
    std::cout.rdbuf(saved);
    const json wrapped{{"perturbed", {{"seed", *o.perturb}, {"game", render_game(s.game())}}},
                       {"result", json::parse(captured.str())}};
    std::cout << wrapped.dump(2) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Nash equilibria of bimatrix games, with a polynomial method for rank(A+B) = 1"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--input", o.input, "game file")->required()->check(CLI::ExistingFile);
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--perturb", o.perturb, "perturb a degenerate game with this seed and retry");
    app.add_option("--beta", o.beta, "beta for zero-sum or general games, v1,...,vn");
    app.add_option("--max-iters", o.max_iters, "iteration limit for fixedpoint --search");
    app.fallthrough();

    std::function<int(const Session&)> cmd;
    auto sub = [&](const char* name, const char* help, int (*f)(const Session&)) {
        CLI::App* c = app.add_subcommand(name, help);
        c->callback([&cmd, f] { cmd = f; });
        return c;
    };
    sub("solve", "one equilibrium", cmd_solve);
    sub("enumerate", "all equilibria (rank 1) or those on the path", cmd_enumerate);
    CLI::App* trace = sub("trace", "fully-labeled path records", cmd_trace);
    trace->add_option("--all-from", o.all_from, "trace the component of the K-th fully-labeled pair (1-based)");
    trace->add_flag("--all", o.all, "path and every cycle");
    sub("index", "equilibria with indices", cmd_index);
    sub("oracle", "support enumeration", cmd_oracle);
    sub("rank", "rank(A+B) and decomposition", cmd_rank);
    sub("regions", "region graph of the rank-1 space", cmd_regions);
    CLI::App* fp = sub("fixedpoint", "rank-k fixed-point function", cmd_fixedpoint);
    fp->add_option("--k-eval", o.k_eval, "a1,...,ak");
    fp->add_flag("--search", o.search, "heuristic search for a fixed point");
    fp->add_option("--tol", o.tol, "residual tolerance for --search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Parse;
    }

    try {
        return run(o, cmd);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return Parse;
    } catch (const DegeneratePolytope& e) {
        std::cerr << "degenerate game: " << e.what() << " (try --perturb SEED)\n";
        return Degenerate;
    } catch (const ConstantBeta& e) {
        std::cerr << "degenerate game: " << e.what() << " (try --beta)\n";
        return Degenerate;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return Guard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Other;
    }
}
