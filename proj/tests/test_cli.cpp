#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vide/cli.hpp"

namespace fs = std::filesystem;

namespace {

int call(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"vide"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return vide::run_cli(static_cast<int>(argv.size()), argv.data());
}

// run_cli writes help/config to stdout; capture it for assertions.
struct CaptureStdout {
    std::ostringstream buffer;
    std::streambuf* saved = std::cout.rdbuf(buffer.rdbuf());
    ~CaptureStdout() { std::cout.rdbuf(saved); }
    std::string str() const { return buffer.str(); }
};

fs::path temp_file(const char* name) {
    fs::path p = fs::temp_directory_path() / name;
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("help exits zero") {
    CaptureStdout cap;
    CHECK(call({"--help"}) == 0);
    CHECK(call({"run", "--help"}) == 0);
    CHECK(cap.str().find("--alpha") != std::string::npos);
}

TEST_CASE("usage errors exit two") {
    CaptureStdout cap;
    CHECK(call({}) == 2);                             // missing subcommand
    CHECK(call({"run", "--no-such-flag"}) == 2);      // unknown option
    CHECK(call({"run", "--alpha", "1.5"}) == 2);      // alpha outside (0,1)
    CHECK(call({"run", "--alpha", "0.0"}) == 2);
    CHECK(call({"run", "--problem", "nope"}) == 2);   // unknown problem
    CHECK(call({"run", "--scheme", "bogus", "--alpha", "0.5"}) == 2);
    CHECK(call({"run", "--nx", "1", "--alpha", "0.5"}) == 2);  // degenerate mesh
    CHECK(call({"run", "--k", "1", "--alpha", "0.5"}) == 2);   // ratio below 2
    CHECK(call({"temporal-study", "--alpha", "0.5"}) == 2);    // no ladder
    CHECK(call({"run", "--alpha", "0.5", "--nx", "8", "--N", "2", "--k", "2",
                "--format", "xml"}) == 2);
}

TEST_CASE("reference fallback is refused where it makes no sense") {
    CHECK(call({"spatial-study", "--problem", "example3", "--alpha", "0.5",
                "--M-ladder", "4", "8", "--N", "2", "--k", "2"}) == 2);
}

TEST_CASE("a tiny run writes a parsable json report") {
    fs::path out = temp_file("vide_cli_run.json");
    CHECK(call({"run", "--problem", "example2", "--alpha", "0.5", "--nx", "8",
                "--N", "2", "--k", "2", "--output", out.string()}) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["problem"] == "example2");
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["scheme"] == "TTGCN");
    CHECK(j["rows"][0]["error"].get<double>() > 0.0);
    fs::remove(out);
}

TEST_CASE("temporal study writes the csv schema") {
    fs::path out = temp_file("vide_cli_study.csv");
    CHECK(call({"temporal-study", "--problem", "example2", "--alpha", "0.5",
                "--nx", "8", "--k", "2", "--N-ladder", "2", "4", "--output",
                out.string()}) == 0);
    std::ifstream in(out);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "scheme,alpha,k,tau_C,tau_F,h,error,rate,cpu_seconds");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    fs::remove(out);
}

TEST_CASE("relative outputs honor VIDE_OUTPUT_DIR") {
    fs::path dir = fs::temp_directory_path() / "vide_cli_outdir";
    fs::create_directories(dir);
    setenv("VIDE_OUTPUT_DIR", dir.c_str(), 1);
    CHECK(call({"run", "--problem", "example2", "--alpha", "0.5", "--nx", "6",
                "--N", "2", "--k", "2", "--output", "report.json"}) == 0);
    unsetenv("VIDE_OUTPUT_DIR");
    CHECK(fs::exists(dir / "report.json"));
    fs::remove_all(dir);
}

TEST_CASE("dump-config echoes the effective settings and skips the solve") {
    CaptureStdout cap;
    CHECK(call({"run", "--alpha", "0.25", "--nx", "640", "--N", "512",
                "--dump-config"}) == 0);
    const std::string text = cap.str();
    CHECK(text.find("nx=640") != std::string::npos);
    CHECK(text.find("N=512") != std::string::npos);  // a real solve would be slow
}

TEST_CASE("config file round-trip") {
    fs::path cfg = temp_file("vide_cli.cfg");
    {
        CaptureStdout cap;
        REQUIRE(call({"run", "--alpha", "0.75", "--nx", "8", "--N", "2", "--k",
                      "2", "--dump-config"}) == 0);
        std::istringstream lines(cap.str());
        std::ofstream out_cfg(cfg);
        for (std::string line; std::getline(lines, line);)
            if (line.rfind("dump-config", 0) != 0) out_cfg << line << '\n';
    }
    fs::path out = temp_file("vide_cli_cfg_run.json");
    CHECK(call({"run", "--config", cfg.string(), "--output", out.string()}) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["rows"][0]["alpha"] == 0.75);
    fs::remove(cfg);
    fs::remove(out);
}
