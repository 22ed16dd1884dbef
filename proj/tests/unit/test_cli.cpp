#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latinfo/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = latinfo::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("latinfo_cli_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = path / name;
        std::ofstream(p) << content;
        return p.string();
    }
};

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"lattice"}).code == 2);
    CHECK(cli({"lattice", "--d", "0"}).code == 2);
    CHECK(cli({"lattice", "--d", "3", "--bogus"}).code == 2);
    CHECK(cli({"measure", "--input", "/nonexistent/latinfo.csv", "--columns", "a,b"}).code == 2);
    CHECK(cli({"synth", "xor", "--n", "10", "--bogus"}).code == 2);
}

TEST_CASE("cli: help exits 0") {
    const auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("measure") != std::string::npos);
}

TEST_CASE("cli: non-numeric cell is an input error naming the row") {
    TempDir dir;
    const auto path = dir.file("bad.csv", "a,b\n1,2\n3,x\n4,5\n");
    const auto r = cli({"measure", "--input", path, "--columns", "a,b"});
    CHECK(r.code == 2);
    CHECK(r.err.find("row 2") != std::string::npos);
    CHECK(r.err.find("'b'") != std::string::npos);
}

TEST_CASE("cli: unknown column exits 2") {
    TempDir dir;
    const auto path = dir.file("ok.csv", "a,b\n1,2\n3,4\n5,7\n");
    CHECK(cli({"measure", "--input", path, "--columns", "a,c"}).code == 2);
}

TEST_CASE("cli: estimator precondition failure exits 3 with term context") {
    TempDir dir;
    const auto path = dir.file("ties.csv", "a,b\n1,2\n1,2\n1,2\n1,2\n1,2\n1,2\n");
    const auto r = cli({"measure", "--input", path, "--columns", "a,b", "--k", "2"});
    CHECK(r.code == 3);
    CHECK(r.err.find("[term ") != std::string::npos);
    CHECK(cli({"measure", "--input", path, "--columns", "a,b", "--k", "2", "--tie-policy", "jitter"}).code == 0);
}

TEST_CASE("cli: synth row counts and lattice size") {
    const auto xor_rows = lines(cli({"synth", "xor", "--n", "25", "--seed", "2"}).out);
    CHECK(xor_rows.size() == 26);
    const auto lat = cli({"lattice", "--d", "4"});
    REQUIRE(lat.code == 0);
    const auto j = nlohmann::json::parse(lat.out);
    CHECK(j["elements"].size() == 15);
}

TEST_CASE("cli: scan enumerates every subset of the order") {
    TempDir dir;
    const auto wide = cli({"synth", "gaussian", "--family", "sigma1", "--rho", "0.3", "--n", "120", "--d", "12",
                           "--seed", "4"});
    REQUIRE(wide.code == 0);
    const auto path = dir.file("wide.csv", wide.out);

    const auto three = cli({"scan", "--input", path, "--order", "3", "--k", "5"});
    REQUIRE(three.code == 0);
    CHECK(lines(three.out).size() == 1 + 220);

    const auto pairs = cli({"scan", "--input", path, "--order", "2", "--columns", "x1,x2,x3", "--k", "5"});
    REQUIRE(pairs.code == 0);
    CHECK(lines(pairs.out).size() == 1 + 3);

    const auto sampled = cli({"scan", "--input", path, "--order", "3", "--sample", "7", "--k", "5", "--seed", "9"});
    REQUIRE(sampled.code == 0);
    auto rows = lines(sampled.out);
    rows.erase(rows.begin());
    CHECK(rows.size() == 7);
    std::set<std::string> subsets;
    for (const auto& r : rows) subsets.insert(r.substr(0, r.find(',')));
    CHECK(subsets.size() == 7);

    CHECK(cli({"scan", "--input", path, "--order", "6"}).code == 2);
}

TEST_CASE("cli: validate lattice passes") {
    const auto r = cli({"validate", "lattice"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
