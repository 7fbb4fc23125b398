#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SO3TQFT_BIN) + " " + args + " 2>/dev/null";
    Run res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, VerifyAllPasses) {
    const auto r = run("verify-all --r 7");
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = parse(r);
    EXPECT_EQ(doc["schema"], "1");
    EXPECT_EQ(doc["command"], "verify-all");
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_TRUE(doc["skipped_capacity"].empty());
}

TEST(Cli, VerifyAllAboveImageCapacitySkips) {
    const auto r = run("verify-all --r 17");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(parse(r)["skipped_capacity"].size(), 4u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("dims --r 4 --genus 2").exit_code, 2);
    EXPECT_EQ(run("dims --r 9 --genus 2").exit_code, 2);
    EXPECT_EQ(run("dims --r 7 --genus 2 --boundary 1").exit_code, 2);
    EXPECT_EQ(run("dims --r 7 --genus 2 --boundary x").exit_code, 2);
    EXPECT_EQ(run("tau --r 7 --heegaard sxt").exit_code, 2);
    EXPECT_EQ(run("modular-data --r 7 --format csv").exit_code, 2);
    EXPECT_EQ(run("no-such-command").exit_code, 2);
    EXPECT_EQ(run("").exit_code, 2);
}

TEST(Cli, CapacityErrors) {
    EXPECT_EQ(run("chartab --r 17").exit_code, 3);
    EXPECT_EQ(run("image --r 17").exit_code, 3);
    EXPECT_EQ(run("dims --r 7 --genus 13").exit_code, 3);
    EXPECT_EQ(run("modular-data --r 67").exit_code, 3);
    EXPECT_EQ(run("verify-all --r 67").exit_code, 3);
    EXPECT_EQ(run("dims --r 1009 --genus 2").exit_code, 0);
}

TEST(Cli, Dims) {
    const auto r = run("dims --r 7 --genus 2");
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = parse(r);
    EXPECT_EQ(doc["dim"], 14);
    EXPECT_EQ(doc["margin_checks"]["binomial_margin"], -7);
    EXPECT_EQ(doc["margin_checks"]["twist_multiplicities"], (std::vector<long>{3, 6, 5}));
    const auto v = parse(run("dims --r 11 --genus 3 --verlinde-check"));
    EXPECT_TRUE(v["verlinde_agrees"].get<bool>());
    EXPECT_EQ(parse(run("dims --r 7 --genus 1 --boundary 0"))["dim"], 3);
}

TEST(Cli, Image) {
    const auto doc = parse(run("image --r 7 --generators weil --threads 2"));
    EXPECT_EQ(doc["order"], 168);
    EXPECT_EQ(doc["matches"], "PSL2");
    EXPECT_EQ(doc["reduction"]["kernel_size"], 2);
    const auto capped = run("image --r 7 --max-order 50");
    EXPECT_EQ(capped.exit_code, 0);
    EXPECT_FALSE(parse(capped)["finite"].get<bool>());
}

TEST(Cli, ChartabCsvAndBorel) {
    const auto csv = run("chartab --r 5 --format csv");
    ASSERT_EQ(csv.exit_code, 0);
    std::istringstream is(csv.out);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    EXPECT_GE(lines, 10);
    EXPECT_EQ(run("chartab --r 5 --check-ltwo").exit_code, 0);
    const auto doc = parse(run("chartab --r 7 --check-small-tensor --check-borel"));
    EXPECT_TRUE(doc["small_tensor"]["holds"].get<bool>());
    EXPECT_FALSE(doc["borel"]["degrees_in_one_or_r_minus_1"].get<bool>());
    EXPECT_EQ(doc["screening"]["survivors"], nlohmann::json::parse("[[7,1,48]]"));
}

TEST(Cli, Tau) {
    const auto doc = parse(run("tau --r 5 --chain 0"));
    EXPECT_NEAR(doc["norm"].get<double>(), 1.0, 1e-12);
    const auto lens = parse(run("tau --r 5 --chain 2 --heegaard stts"));
    EXPECT_NEAR(lens["heegaard"]["norm"].get<double>(), 0.850651, 1e-6);
    const auto sv = parse(run("tau --r 5 --survey 12"));
    EXPECT_EQ(sv["survey"]["classes_reached"], 60);
}

TEST(Cli, DeterministicAndRoundTrips) {
    const auto a = run("modular-data --r 11 --threads 3");
    const auto b = run("modular-data --r 11");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(parse(a).dump(2) + "\n", a.out);
    const auto img1 = run("image --r 11 --threads 1");
    const auto img4 = run("image --r 11 --threads 4");
    EXPECT_EQ(img1.out, img4.out);
}

TEST(Cli, OutputFileAndText) {
    const auto path = std::filesystem::temp_directory_path() / "so3tqft_cli_test.json";
    ASSERT_EQ(run("weil --r 5 --verify --output " + path.string()).exit_code, 0);
    std::ifstream f(path);
    const auto doc = nlohmann::json::parse(f);
    EXPECT_TRUE(doc["identification"]["s_identity"].get<bool>());
    std::filesystem::remove(path);
    const auto text = run("tau --r 7 --chain 1,1 --format text");
    EXPECT_EQ(text.exit_code, 0);
    EXPECT_NE(text.out.find("schema: 1"), std::string::npos);
}

TEST(Cli, TimingOnlyWhenRequested) {
    EXPECT_FALSE(parse(run("image --r 5")).contains("wall_time"));
    EXPECT_TRUE(parse(run("image --r 5 --timing")).contains("wall_time"));
}
