#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code = -1;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tailprice_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Invocation run(const std::string& args) const {
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd = std::string("'") + TAILPRICE_CLI + "' " + args + " 2>'" + err.string() + "'";
        Invocation r;
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) return r;
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
        const int status = ::pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err);
        return r;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write(const fs::path& p, const std::string& text) const { std::ofstream(p, std::ios::binary) << text; }

    std::string path(const std::string& name) const { return "'" + (dir_ / name).string() + "'"; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ReturnTailPriceIsFive) {
    const Invocation r = run("price --approach return --alpha 2 --l 0.1 --spot 100 --strike 120");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "5\n");
}

TEST_F(Cli, PutPrices) {
    const Invocation r = run("price --approach put --alpha 2 --l 0.1 --spot 100 --strike 90 80");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "strike,price\n90,8.18181818182\n80,3.23232323232\n");
}

TEST_F(Cli, ExitCodes) {
    const Invocation domain = run("price --approach return --alpha 2.75 --l 0.05 --spot 100 --strike 104");
    EXPECT_EQ(domain.code, 3);
    EXPECT_NE(domain.err.find("104"), std::string::npos);
    EXPECT_EQ(run("price --approach return --alpha 2 --l 0.1 --strike 120").code, 2);
    EXPECT_EQ(run("price --alpha 0.5 --l 1 --strike 10").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("ivol --price 0 --spot 100 --strike 120 --expiry 1").code, 5);
    EXPECT_EQ(run("alpha-bound --strike 125 --spot 100 --l 0.05 --expiry 0.25 --sigma 0.25 --sigma-slope 10").code, 10);
    EXPECT_EQ(run("curve --chain /nonexistent.csv --spot 100 --expiry 1 --alpha 2 --anchor-strike 110").code, 11);
}

TEST_F(Cli, AsChainRoundTripsThroughCheckArb) {
    const Invocation gen = run("price --approach return --alpha 2.75 --l 0.05 --spot 100 --expiry 0.5 --as-chain "
                               "--strike 110 120 130 140 150 175 200 --out " + path("chain.csv"));
    ASSERT_EQ(gen.code, 0) << gen.err;
    ASSERT_TRUE(fs::exists(dir_ / "chain.json"));
    const Invocation arb = run("check-arb --chain " + path("chain.csv") + " --alpha 2.75 --side call");
    EXPECT_EQ(arb.code, 0) << arb.err << arb.out;
    EXPECT_EQ(arb.out.rfind("strike,evaluated", 0), 0u);

    write(dir_ / "bad.csv", "strike,side,price\n110,C,3\n120,C,2.5\n130,C,0.5\n");
    const Invocation bad = run("check-arb --chain " + path("bad.csv") + " --spot 100 --expiry 0.5 --alpha 2.75");
    EXPECT_EQ(bad.code, 1);
}

TEST_F(Cli, PutCurveFromMoneynessAnchor) {
    const Invocation gen = run("price --approach put --alpha 2.75 --l 0.05 --spot 100 --expiry 0.5 --as-chain "
                               "--strike 60 70 75 80 85 90 --out " + path("puts.csv"));
    ASSERT_EQ(gen.code, 0) << gen.err;
    const Invocation curve = run("curve --chain " + path("puts.csv") + " --anchor-moneyness 90 --side put --alpha 2.75");
    ASSERT_EQ(curve.code, 0) << curve.err;
    std::istringstream lines(curve.out);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "strike,model_price,market_price,ratio,implied_vol_model,implied_vol_market");
    int rows = 0;
    while (std::getline(lines, row)) {
        ++rows;
        const auto ratio = std::stod(row.substr(row.find(',', row.find(',', row.find(',') + 1) + 1) + 1));
        EXPECT_NEAR(ratio, 1.0, 1e-9) << row;
    }
    EXPECT_EQ(rows, 6);

    const Invocation near = run("curve --chain " + path("puts.csv") + " --anchor-moneyness 89 --side put --alpha 2.75");
    EXPECT_EQ(near.code, 0);
    EXPECT_NE(near.err.find("90"), std::string::npos);
    const Invocation none = run("curve --chain " + path("puts.csv") + " --anchor-moneyness 110 --side call --alpha 2.75");
    EXPECT_EQ(none.code, 7);
}

TEST_F(Cli, JsonChainAndFitAlpha) {
    write(dir_ / "chain.json", R"({"spot": 100, "expiry_years": 0.5, "quotes": [
        {"strike": 110, "side": "C", "price": 2.28717145461},
        {"strike": 120, "side": "C", "price": 0.689072958098},
        {"strike": 130, "side": "C", "price": 0.340917063005},
        {"strike": 150, "side": "C", "price": 0.135426064618}]})");
    const Invocation fit = run("fit-alpha --chain " + path("chain.json") + " --anchor-strike 110 --side call --format json");
    ASSERT_EQ(fit.code, 0) << fit.err;
    EXPECT_NE(fit.out.find("\"alpha\""), std::string::npos);
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
    write(dir_ / "cfg.json", R"({"approach": "return", "alpha": 2, "l": 0.1, "spot": 100})");
    const Invocation r = run("price --config " + path("cfg.json") + " --strike 120");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "5\n");
    write(dir_ / "nested.json", R"({"price": {"approach": "return", "alpha": 2, "l": 0.1, "spot": 100}})");
    EXPECT_EQ(run("price --config " + path("nested.json") + " --strike 120").out, "5\n");
    const Invocation overridden = run("price --config " + path("cfg.json") + " --alpha 3 --strike 120");
    EXPECT_NE(overridden.out, "5\n");
}

TEST_F(Cli, HelpShowsDefaultsAndExitCodes) {
    const Invocation r = run("check-arb --help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1e-12"), std::string::npos);
    const Invocation top = run("--help");
    EXPECT_NE(top.out.find("Exit codes"), std::string::npos);
    EXPECT_NE(top.out.find("alpha-bound"), std::string::npos);
}

TEST_F(Cli, AlphaBoundAndZipf) {
    const Invocation b = run("alpha-bound --strike 120 --spot 100 --l 0.05 --expiry 0.25 --sigma 0.25");
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_NEAR(std::stod(b.out), 1.98153156677, 1e-9);
    const Invocation z = run("zipf --l 1 --alpha 2.5 --transform identity --x 2 4 8");
    ASSERT_EQ(z.code, 0) << z.err;
    EXPECT_EQ(z.out.rfind("x,local_slope\n", 0), 0u);
    EXPECT_NE(z.out.find("-2.5"), std::string::npos);
}

TEST_F(Cli, OutputIsDeterministic) {
    ASSERT_EQ(run("price --approach return --alpha 2.75 --l 0.05 --spot 100 --expiry 0.5 --as-chain --strike "
                  "110 120 130 140 150 --out " + path("c.csv")).code,
              0);
    const std::string args = "report --chain " + path("c.csv") + " --side call --anchor-strike 110 120 --alpha 2";
    const Invocation a = run(args);
    const Invocation b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}
