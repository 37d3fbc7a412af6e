#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "fixtures.hpp"
#include "rank1/io.hpp"
#include "rank1/oracle.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {

struct Run
{
    int code;
    std::string out;
};

Run cli(const std::string& args)
{
    const std::string cmd = std::string(RANK1_CLI) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::string out;
    char buf[4096];
    while (std::size_t k = std::fread(buf, 1, sizeof buf, f))
        out.append(buf, k);
    const int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string input(const std::string& name) { return "--input " + data_file(name); }

std::string temp_game(const std::string& name, const std::string& text)
{
    const std::string path = std::string("/tmp/rank1_cli_") + name + ".game";
    std::ofstream(path) << text;
    return path;
}

void no_floats(const nlohmann::json& j)
{
    if (j.is_number_float())
        FAIL("float in JSON output: " << j.dump());
    if (j.is_structured())
        for (const auto& v : j)
            no_floats(v);
}

}  // namespace

TEST_CASE("solve")
{
    const Run r = cli(input("mp.game") + " solve");
    CHECK(r.code == 0);
    CHECK(r.out == "x = (1/2, 1/2); y = (1/2, 1/2); index +1\n");

    const Run j = cli(input("r1a.game") + " --json solve");
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    no_floats(doc);
    CHECK(doc.contains("bin_search"));
}

TEST_CASE("enumerate matches the oracle")
{
    const Run r = cli(input("r1a.game") + " --json enumerate");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    no_floats(doc);
    REQUIRE(doc.is_array());
    CHECK(doc.size() % 2 == 1);
    const auto oracle = support_enumeration(read_game_file(data_file("r1a.game"))).equilibria;
    CHECK(doc.size() == oracle.size());
    int sum = 0;
    for (const auto& e : doc)
        sum += e["index"].get<int>();
    CHECK(sum == 1);

    const Run o = cli(input("r1a.game") + " --json oracle");
    REQUIRE(o.code == 0);
    no_floats(nlohmann::json::parse(o.out));
}

TEST_CASE("trace")
{
    const Run r = cli(input("ex1.game") + " --beta 9,7,8 trace");
    REQUIRE(r.code == 0);
    const std::string last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
    CHECK(last.rfind("edge 4 kind=v_fixed fixed={3,5,6}", 0) == 0);

    const Run all = cli(input("ex1.game") + " --beta 9,7,8 trace --all");
    REQUIRE(all.code == 0);
    CHECK(all.out.find("cycle") != std::string::npos);
}

TEST_CASE("other subcommands")
{
    CHECK(cli(input("r1a.game") + " rank").out.rfind("rank 1\n", 0) == 0);
    CHECK(cli(input("k2.game") + " rank").out.rfind("rank 2\n", 0) == 0);
    const Run idx = cli(input("r1a.game") + " index");
    CHECK(idx.code == 0);
    CHECK(idx.out.find("index sum +1") != std::string::npos);
    CHECK(cli(input("r1a.game") + " regions").code == 0);
    CHECK(cli(input("k2.game") + " fixedpoint --search --tol 1/1000").code == 0);
    const Run ke = cli(input("k2.game") + " --json fixedpoint --k-eval 1/2,1/2");
    CHECK(ke.code == 0);
    no_floats(nlohmann::json::parse(ke.out));
}

TEST_CASE("exit codes")
{
    CHECK(cli(input("mp.game")).code == 2);                         // no subcommand
    CHECK(cli("--input /nonexistent/file.game solve").code == 2);  // missing file
    CHECK(cli("--input " + temp_game("bad", "2 2\n1 x\n0 0\n0 0\n0 0\n") + " solve").code == 2);

    const std::string deg = temp_game("deg", "2 2\n1 1\n1 1\n\n1 1\n1 1\n");
    CHECK(cli("--input " + deg + " solve").code == 3);
    const Run p = cli("--input " + deg + " --perturb 7 solve");
    CHECK(p.code == 0);
    CHECK(p.out.rfind("# perturbed game, seed 7\n", 0) == 0);
    const Run pj = cli("--input " + deg + " --perturb 7 --json solve");
    REQUIRE(pj.code == 0);
    const auto doc = nlohmann::json::parse(pj.out);
    CHECK(doc["perturbed"]["seed"] == 7);
    no_floats(doc);

    std::string big = "7 7\n";
    for (int k = 0; k < 14; ++k)
        big += "1 2 3 4 5 6 7\n";
    CHECK(cli("--input " + temp_game("big", big) + " oracle").code == 4);
}

TEST_CASE("game files round-trip")
{
    for (const char* name : {"mp.game", "ex1.game", "k2.game", "r1a.game"}) {
        const BimatrixGame g = read_game_file(data_file(name));
        CHECK(parse_game(render_game(g)) == g);
    }
}
