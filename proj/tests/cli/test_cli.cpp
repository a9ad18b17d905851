#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using nlohmann::json;
using namespace shiftlab::cli;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "shiftlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    Result r;
    std::ostringstream out, err;
    int code = 0;
    auto cfg = parse_args(static_cast<int>(argv.size()), argv.data(), err, code);
    if (cfg) code = run(*cfg, out, err);
    r.code = code;
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("shiftlab_cli_test_" + name);
}

}  // namespace

TEST(CliParse, Defaults) {
    std::ostringstream err;
    int code = -1;
    const char* argv[] = {"shiftlab", "check"};
    auto cfg = parse_args(2, argv, err, code);
    ASSERT_TRUE(cfg.has_value());
    EXPECT_EQ(cfg->command, "check");
    EXPECT_EQ(cfg->space, "lp_Z:2");
    EXPECT_EQ(cfg->weights, "constant:2");
    EXPECT_EQ(cfg->criterion, "all");
    EXPECT_TRUE(cfg->timestamp);
}

TEST(CliParse, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"check", "--n-max", "0"}).code, kUsage);
    EXPECT_EQ(invoke({"check", "--mode", "float"}).code, kUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
    EXPECT_EQ(invoke({"check", "--criterion", "bogus", "--no-timestamp"}).code, kUsage);
    EXPECT_EQ(invoke({"check", "--m-grid", "4:1"}).code, kUsage);
    Result r = invoke({"check", "--space", "nowhere"});
    EXPECT_EQ(r.code, kUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliParse, NegativeRanges) {
    Result r = invoke({"orbit", "--space", "s_Z", "--weights", "constant:1", "--side", "forward", "--n", "-3:3", "--k",
                       "1:1", "--format", "csv", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.rfind("n,log2_norm_1\r\n-3,2\r\n", 0), 0U) << r.out;
}

TEST(CliCheck, UniformExpansivityJson) {
    Result r = invoke({"check", "--criterion", "ue", "--n-max", "200", "--window", "40", "--m-grid", "0:8", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_FALSE(j.contains("timestamp"));
    EXPECT_TRUE(j.contains("version"));
    const json& ue = j.at("reports").at("ue");
    EXPECT_EQ(ue.at("kind"), "CertifiedUnbounded");
    EXPECT_EQ(ue.at("property"), "a");
    EXPECT_EQ(ue.at("positive"), true);
}

TEST(CliCheck, TimestampPresentByDefault) {
    Result r = invoke({"check", "--criterion", "ae", "--n-max", "20", "--window", "5", "--m-grid", "0:2"});
    ASSERT_EQ(r.code, kOk);
    EXPECT_TRUE(json::parse(r.out).contains("timestamp"));
}

TEST(CliCheck, DeterministicWithoutTimestamp) {
    std::vector<std::string> args{"check", "--n-max", "100", "--window", "20", "--m-grid", "0:6", "--no-timestamp",
                                  "--weights", "two_sided:2,1/2"};
    Result a = invoke(args), b = invoke(args);
    ASSERT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
    args.push_back("--threads");
    args.push_back("3");
    Result c = invoke(args);
    json ja = json::parse(a.out), jc = json::parse(c.out);
    ja.at("config").at("horizon").erase("threads");
    jc.at("config").at("horizon").erase("threads");
    for (json* doc : {&ja, &jc}) {
        for (auto& [name, rep] : doc->at("reports").items()) {
            if (rep.is_object()) rep.erase("config");
        }
    }
    EXPECT_EQ(ja, jc);
}

TEST(CliCheck, CsvRows) {
    Result r = invoke({"check", "--criterion", "ae", "--format", "csv", "--n-max", "50", "--window", "10", "--m-grid",
                       "0:2", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk);
    EXPECT_EQ(r.out.rfind("criterion,kind,property,k,l,M,first_n\r\n", 0), 0U);
    EXPECT_NE(r.out.find("ae,CertifiedUnbounded,,1,,4,3\r\n"), std::string::npos);
}

TEST(CliCsv, Quoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(CliSynthesize, OneBlock) {
    Result r = invoke({"synthesize", "--blocks", "1", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    json j = json::parse(r.out);
    const json& b = j.at("blocks").at(0);
    auto as_strings = [](const json& arr) {
        std::vector<std::string> out;
        for (const auto& x : arr) {
            std::string s = x.at("num").get<std::string>();
            if (x.at("den") != "1") s += "/" + x.at("den").get<std::string>();
            out.push_back(s);
        }
        return out;
    };
    EXPECT_EQ(as_strings(b.at("A")),
              (std::vector<std::string>{"1", "1", "1", "1/4", "1/2", "1/2", "1/2", "1", "2", "2", "2", "2"}));
    EXPECT_EQ(as_strings(b.at("B")), (std::vector<std::string>{"1/2", "1/2", "1", "2", "2"}));
    EXPECT_EQ(as_strings(b.at("C")),
              (std::vector<std::string>{"1/2", "1/2", "1/2", "1/2", "1", "2", "2", "2", "4", "1", "1", "1"}));
    const json& p = j.at("layout").at(0);
    EXPECT_EQ(p.at("a"), 12);
    EXPECT_EQ(p.at("b"), 5);
    EXPECT_EQ(p.at("s"), 12);
    EXPECT_EQ(p.at("t"), 17);
    EXPECT_TRUE(j.at("audits").at("passed").get<bool>());
}

TEST(CliSynthesize, SearchCapExit) {
    Result r = invoke({"synthesize", "--blocks", "3", "--i-cap", "100", "--no-timestamp"});
    EXPECT_EQ(r.code, kSearchCap);
    EXPECT_NE(r.err.find("E-CAP"), std::string::npos);
}

TEST(CliSynthesize, WeightsFileRoundTrip) {
    const auto path = temp_file("blocks.json");
    Result s = invoke({"synthesize", "--blocks", "2", "--no-timestamp", "-o", path.string()});
    ASSERT_EQ(s.code, kOk);
    EXPECT_TRUE(s.out.empty());
    Result o = invoke({"orbit", "--weights", path.string(), "--space", "c0_Z", "--vector", "e:-1", "--n", "105:105",
                       "--k", "1:1", "--mode", "exact", "--format", "csv", "--no-timestamp"});
    ASSERT_EQ(o.code, kOk) << o.err;
    EXPECT_EQ(o.out, "n,norm_1\r\n105,1/3\r\n");
    Result bad = invoke({"check", "--weights", path.string(), "--space", "lp_N:2", "--no-timestamp"});
    EXPECT_EQ(bad.code, kIncompatibleIndexSets);
    EXPECT_NE(bad.err.find("E-INDEX"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(CliErrors, MalformedJson) {
    const auto path = temp_file("broken.json");
    {
        std::ofstream f(path);
        f << "{\"family\": \"constant\", ";
    }
    Result r = invoke({"check", "--weights", path.string(), "--no-timestamp"});
    EXPECT_EQ(r.code, kMalformedJson);
    EXPECT_NE(r.err.find("E-JSON"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(CliOrbit, ExactColumns) {
    Result r = invoke({"orbit", "--weights", "constant:2", "--vector", "0=1,1=1", "--space", "lp_Z:1", "--n", "0:2",
                       "--k", "1:1", "--mode", "exact", "--format", "csv", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out, "n,norm_1\r\n0,2\r\n1,4\r\n2,8\r\n");
}

TEST(CliDensity, BlockWeights) {
    const auto path = temp_file("blocks3.json");
    ASSERT_EQ(invoke({"synthesize", "--blocks", "3", "--no-timestamp", "-o", path.string()}).code, kOk);
    Result r = invoke({"density", "--weights", path.string(), "--space", "c0_Z", "--levels", "2,3", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j.at("config").at("horizon").at("mode"), "exact");
    for (const auto& lv : j.at("report").at("levels")) EXPECT_TRUE(lv.at("irregularity_evidence").get<bool>());
    Result csv = invoke({"density", "--weights", path.string(), "--space", "c0_Z", "--n", "5", "--format", "csv",
                         "--no-timestamp", "--tau", "1/2", "--large", "2"});
    ASSERT_EQ(csv.code, kOk) << csv.err;
    EXPECT_EQ(csv.out.substr(0, csv.out.find("\r\n")), "n,norm,running_average,ratio_small(1/2),ratio_large(2)");
    std::filesystem::remove(path);
}

TEST(CliProps, SmallBattery) {
    Result r = invoke({"props", "--blocks", "0", "--n-max", "64", "--window", "16", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_TRUE(j.at("props").at("passed").get<bool>());
}
