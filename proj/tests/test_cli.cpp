// Runs the rrlie executable and checks output and exit codes.

#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + RRLIE_CLI + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int st = ::pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST(Cli, CascadeByType)
{
    auto r = run("cascade --type A --rank 3 --format json");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["beta_names"], (std::vector<std::string>{"e1-e4", "e2-e3"}));
    r = run("cascade --type C --rank 2 --format json");
    EXPECT_EQ(nlohmann::json::parse(r.out)["beta_names"], (std::vector<std::string>{"2e1", "2e2"}));
    r = run("cascade --type A --rank 1 --format json");
    EXPECT_EQ(nlohmann::json::parse(r.out)["beta_names"], (std::vector<std::string>{"e1-e2"}));
    r = run("cascade --type BC --rank 2 --format json");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["beta_names"], (std::vector<std::string>{"2e1", "2e2"}));
}

TEST(Cli, CascadeMarkdown)
{
    const auto r = run("cascade --form split-A3");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("| 1 | e1-e4 |"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("cascade --form no-such-form").status, 2);
    EXPECT_EQ(run("cascade --type Q --rank 3").status, 2);
    EXPECT_EQ(run("cascade --type A --rank 12").status, 2);
    EXPECT_EQ(run("cascade").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("verify --form split-A3 --checks nonsense").status, 2);
    EXPECT_EQ(run("cascade --form split-A3 --format xml").status, 2);
    EXPECT_EQ(run("numeric --d 1 --lambda 0 --test orthogonality").status, 2);
    EXPECT_EQ(run("numeric --d 3 --test orthogonality").status, 2);
}

TEST(Cli, VerifySplitA3AllPass)
{
    const auto r = run("verify --form split-A3 --checks all --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verification"].size(), 9u);
    for (const auto& [k, v] : j["verification"].items())
        EXPECT_EQ(v, "pass") << k;
}

TEST(Cli, VerifyNonSplitSkipsSymbolic)
{
    const auto r = run("verify --form 'su(2,1)' --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verification"]["cascade"], "pass");
    EXPECT_EQ(j["verification"]["pfaffian"], "skipped(tier1)");
    EXPECT_TRUE(j["pfaffian"].is_null());
}

TEST(Cli, VerifyA1Degenerate)
{
    const auto r = run("verify --form split-A1 --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["pfaffian"], "1");
}

TEST(Cli, VerifySelectedChecksAndSeed)
{
    const auto a = run("verify --form split-B3 --checks pairing,pfaffian --seed 5 --format json");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(nlohmann::json::parse(a.out)["verification"].size(), 2u);
    EXPECT_EQ(a.out, run("verify --form split-B3 --checks pairing,pfaffian --seed 5 --format json").out);
}

TEST(Cli, StructuralFailureExitsOne)
{
    const std::string env = std::string("RRFORM_PATH=") + RRLIE_TEST_DATA_DIR;
    EXPECT_EQ(run("verify --form odd-layer", env).status, 1);
    EXPECT_EQ(run("verify --form 'sample-su(2,1)-copy'", env).status, 0);
}

TEST(Cli, NumericOrthogonality)
{
    const auto r = run("numeric --d 1 --test orthogonality --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["orthogonality"]["kappa_measured"].get<double>(), 6.2832, 1e-4);
    EXPECT_LT(j["orthogonality"]["spread"].get<double>(), 1e-5);
}

TEST(Cli, NumericInversion)
{
    const auto r = run("numeric --d 1 --test inversion --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_LT(nlohmann::json::parse(r.out)["inversion"]["relative_error"].get<double>(), 1e-6);
}

TEST(Cli, ListIncludesDataFiles)
{
    const auto r = run("list");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("split-E8"), std::string::npos);
    EXPECT_NE(r.out.find("su(2,1)"), std::string::npos);
}
