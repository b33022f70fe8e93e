// Copyright 2026 The supermap-forge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "supermap_forge/cli.hpp"
#include "supermap_forge/io.hpp"
#include "support.hpp"

using namespace smf;
namespace fs = std::filesystem;

namespace {

const std::string fixtures = SMF_FIXTURE_DIR;

std::string fixture(const std::string& name) { return fixtures + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("smf-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* const bundled[] = {"identity_supermap.json", "cdp08_supermap.json", "hybrid_supermap.json",
                               "tp_broken_supermap.json", "bound6_supermap.json"};

} // namespace

TEST_CASE("matrix and algebra documents") {
    Matrix m(1, 2);
    m << Complex(0.1, -1e-300), Complex(1.0 / 3.0, 2e17);
    const auto j = io::matrix_to_json(m);
    CHECK(j[0][0][0].get<std::string>() == "0.10000000000000001");
    CHECK((io::matrix_from_json(j) - m).norm() == 0.0);
    CHECK(test::error_code([] { io::matrix_from_json(io::Json::parse(R"([[["1"]]])")); }) == Errc::Parse);
    CHECK(test::error_code([] { io::matrix_from_json(io::Json::parse(R"([[["1","0"]],[]])")); }) == Errc::Parse);

    const auto a = Algebra({{"x", 2}, {"y", 1}});
    const auto back = io::algebra_from_json(io::algebra_to_json(a));
    CHECK(back == a);
    CHECK(test::error_code([] { io::document_payload(io::Json::parse(R"({"kind":"x"})"), "supermap"); }) ==
          Errc::Parse);
}

TEST_CASE("bundled fixtures round-trip bit-exactly") {
    for (const char* name : bundled) {
        const auto doc = io::read_document(fixture(name));
        const auto s = io::supermap_from_payload(io::document_payload(doc, "supermap"));
        const auto again = io::make_document("supermap", io::supermap_payload(s));
        CHECK(again == doc);
        CHECK(io::dump(again) == io::dump(doc));
        const auto s2 = io::supermap_from_payload(io::document_payload(again, "supermap"));
        CHECK(s2.inner().choi_distance(s.inner()) == 0.0);
    }
    CHECK(test::error_code([] { io::read_document(fixture("truncated_supermap.json")); }) == Errc::Parse);
    CHECK(test::error_code([] { io::read_document(fixture("missing.json")); }) == Errc::Parse);
}

TEST_CASE("realisation documents round-trip") {
    const auto path = (scratch() / "r.json").string();
    REQUIRE(run({"realize", fixture("hybrid_supermap.json"), "--out", path}).code == cli::kOk);
    const auto doc = io::read_document(path);
    const auto r = io::realisation_from_payload(io::document_payload(doc, "realisation"));
    CHECK(io::make_document("realisation", io::realisation_payload(r)) == doc);
    CHECK(r.p_dim <= r.p_bound);
}

TEST_CASE("verify exit codes") {
    auto ok = run({"verify", fixture("identity_supermap.json")});
    CHECK(ok.code == cli::kOk);
    CHECK(run({"verify", fixture("tp_broken_supermap.json")}).code == cli::kFailure);
    const auto bad = run({"verify", fixture("truncated_supermap.json")});
    CHECK(bad.code == cli::kInputError);
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"verify", fixture("missing.json")}).code == cli::kInputError);
    CHECK(run({"verify", fixture("identity_supermap.json"), "--tol", "-1"}).code == cli::kInputError);

    const auto rep = (scratch() / "rep.json").string();
    CHECK(run({"verify", fixture("hybrid_supermap.json"), "--out", rep}).code == cli::kOk);
    const auto payload = io::document_payload(io::read_document(rep), "report");
    CHECK(payload.at("verdict").get<bool>());
    CHECK(payload.contains("n_map"));
}

TEST_CASE("realize and check") {
    const auto r6 = run({"realize", fixture("bound6_supermap.json")});
    CHECK(r6.code == cli::kOk);
    CHECK(r6.out.find("dim(K_in,k): 6") != std::string::npos);
    CHECK(run({"realize", fixture("tp_broken_supermap.json")}).code == cli::kFailure);
    CHECK(run({"realize", fixture("identity_supermap.json"), "--completion", "bogus"}).code == cli::kInputError);

    for (const char* name : bundled) {
        if (std::string(name) == "tp_broken_supermap.json") continue;
        const auto path = (scratch() / (std::string("real-") + name)).string();
        REQUIRE(run({"realize", fixture(name), "--out", path}).code == cli::kOk);
        CHECK(run({"check", fixture(name), path}).code == cli::kOk);
        CHECK(run({"check", fixture(name), path, "--trials", "0"}).code == cli::kOk);
    }
    const auto cdp = (scratch() / "real-cdp08_supermap.json").string();
    // Same algebras, different supermap.
    CHECK(run({"check", fixture("identity_supermap.json"), cdp}).code == cli::kFailure);
    // Different algebras.
    CHECK(run({"check", fixture("hybrid_supermap.json"), cdp}).code == cli::kInputError);
    CHECK(run({"check", fixture("identity_supermap.json"), fixture("identity_supermap.json")}).code ==
          cli::kInputError);
}

TEST_CASE("demo and usage errors") {
    for (const char* name : {"cdp08", "multimeter", "povm-to-state"}) CHECK(run({"demo", name}).code == cli::kOk);
    const auto unknown = run({"demo", "nope"});
    CHECK(unknown.code == cli::kInputError);
    CHECK(unknown.err.find("multimeter") != std::string::npos);
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"frobnicate"}).code == cli::kInputError);
    CHECK(run({"verify"}).code == cli::kInputError);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("gen") {
    const auto a = run({"gen", "supermap", "--a", "2", "--b", "1,1", "--c", "1,2", "--d", "2", "--seed", "5"});
    const auto b = run({"gen", "supermap", "--a", "2", "--b", "1,1", "--c", "1,2", "--d", "2", "--seed", "5"});
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    const auto c = run({"gen", "supermap", "--a", "2", "--b", "1,1", "--c", "1,2", "--d", "2", "--seed", "6"});
    CHECK(c.out != a.out);
    CHECK(run({"gen", "channel", "--a", "2", "--b", "0"}).code == cli::kInputError);
    CHECK(run({"gen", "channel", "--a", "2,x", "--b", "1"}).code == cli::kInputError);
    CHECK(run({"gen", "widget", "--a", "2", "--b", "1"}).code == cli::kInputError);
    const auto ch = (scratch() / "ch.json").string();
    CHECK(run({"gen", "channel", "--a", "2", "--b", "1,2", "--out", ch}).code == cli::kOk);
    const auto m = io::cpmap_from_payload(io::document_payload(io::read_document(ch), "channel"));
    CHECK(is_tp(m, 1e-10).ok);
}

TEST_CASE("gen -> verify -> realize -> check pipeline") {
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto dims = [&](std::uint64_t salt) {
            std::string s;
            const auto n = 1 + split_seed(seed, salt) % 2;
            for (std::size_t k = 0; k < n; ++k) {
                if (k) s += ",";
                s += std::to_string(1 + split_seed(seed, salt * 10 + k) % 2);
            }
            return s;
        };
        const auto sm = (scratch() / ("p" + std::to_string(seed) + ".json")).string();
        const auto re = (scratch() / ("q" + std::to_string(seed) + ".json")).string();
        REQUIRE(run({"gen", "supermap", "--a", dims(1), "--b", dims(2), "--c", dims(3), "--d", dims(4), "--seed",
                     std::to_string(seed), "--out", sm})
                    .code == cli::kOk);
        CHECK(run({"verify", sm}).code == cli::kOk);
        CHECK(run({"realize", sm, "--out", re}).code == cli::kOk);
        CHECK(run({"check", sm, re, "--seed", std::to_string(seed)}).code == cli::kOk);
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    CHECK(took.count() < 60.0);
}
