#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(UPLANE_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST_CASE("dtable numeric")
{
    const Run r = run("dtable --target cp2 --group so3 --max-p 2 --max-kappa 4 --mode numeric --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.find("target,group,mode,m,n,value,precision_used") == 0);
    CHECK(r.out.find("cp2,so3,numeric,0,0,1,") != std::string::npos);
    CHECK(r.out.find("cp2,so3,numeric,2,0,19/16,") != std::string::npos);
}

TEST_CASE("dtable symbolic json")
{
    const Run r = run("dtable --target cp2 --group su2 --mode symbolic --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["meta"]["mode"] == "symbolic");
    CHECK(j["meta"]["target"] == "cp2");
    bool found = false;
    for (const auto &row : j["rows"]) {
        if (row["indices"] == nlohmann::json::array({0, 0})) {
            CHECK(row["value"] == "-1/2*R1+13*R0");
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("dtable p1xp1")
{
    const Run r = run("dtable --target p1xp1 --group su2 --max-p 0 --max-kappa 2 --mode numeric");
    CHECK(r.status == 0);
    CHECK(r.out.find("   m   i   j  value") != std::string::npos);
    CHECK(r.out.find("   0   0   1  -2") != std::string::npos);
}

TEST_CASE("missing coefficients")
{
    const Run strict = run("dtable --target cp2 --group so3 --max-p 0 --max-kappa 16 --mode numeric");
    CHECK(strict.status == 2);
    const Run fallback = run("dtable --target cp2 --group so3 --max-p 0 --max-kappa 16");
    CHECK(fallback.status == 0);
    CHECK(fallback.out.find("symbolic") != std::string::npos);
}

TEST_CASE("data file extends the tables")
{
    const std::string path = "uplane_test_data.txt";
    {
        std::ofstream f(path);
        f << "H5 7\nH6 1\n";
    }
    const Run r = run("--data " + path + " dtable --target cp2 --group so3 --max-p 0 --max-kappa 16 --mode numeric");
    CHECK(r.status == 0);
    std::remove(path.c_str());
}

TEST_CASE("usage errors")
{
    CHECK(run("dtable --target k3").status == 64);
    CHECK(run("forms --name theta1").status == 64);
    CHECK(run("").status == 64);
    CHECK(run("--help").status == 0);
}

TEST_CASE("forms")
{
    CHECK(run("forms --name E2 --order 3").out == "0:1 1:-24 2:-72 3:-96\n");
    CHECK(run("forms --name eta3 --order 5").out.rfind("1/8:1 9/8:-3 25/8:5", 0) == 0);
    CHECK(run("forms --name u --order 8").out.rfind("-1/4:1/8", 0) == 0);
}

TEST_CASE("hurwitz")
{
    const Run r = run("hurwitz --max 12 --nonzero");
    CHECK(r.out == "0 -1/12\n3 1/3\n4 1/2\n7 1\n8 1\n11 1\n12 4/3\n");
}

TEST_CASE("check suites")
{
    CHECK(run("check --suite tables").status == 0);
    CHECK(run("check --suite identities").status == 0);
    const Run j = run("check --suite maass --json");
    CHECK(j.status == 0);
    CHECK(nlohmann::json::parse(j.out)[0]["ok"] == true);
}

TEST_CASE("output is deterministic")
{
    const std::string args = "dtable --target cp2hat --group so3 --max-p 1 --max-kappa 2 --mu-degree 5 --format json";
    CHECK(run(args).out == run(args).out);
}
