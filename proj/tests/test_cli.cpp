// Copyright 2026 The quditcost Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = quditcost::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path samples_dir() {
    const char *env = std::getenv("QUDITCOST_SAMPLES");
    return env ? fs::path(env) : fs::path("samples");
}

} // namespace

TEST_CASE("dense --dim 2 --all") {
    const auto r = run({"dense", "--dim", "2", "--all"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "m,n,state,quantum_cost,basic_kinds,decoded_ok");
    CHECK(l[1] == "0,0,phi_1,5,2,true");
    CHECK(l[2] == "0,1,phi_2,6,3,true");
    CHECK(l[3] == "1,0,phi_3,6,3,true");
    CHECK(l[4] == "1,1,phi_4,6,3,true");
}

TEST_CASE("dense single message and json") {
    const auto r = run({"dense", "--dim", "3", "--message", "0,0"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(1) == "0,0,phi_1,6,3,true");
    const auto j = run({"dense", "--dim", "6", "--all", "--format", "json"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.size() == 36);
    for (const auto &row : parsed) CHECK(row["decoded_ok"] == true);
}

TEST_CASE("teleport tables") {
    const auto q = run({"teleport", "--dim", "2", "--all"});
    CHECK(q.code == 0);
    const auto l = lines(q.out);
    REQUIRE(l.size() == 5);
    CHECK(l[1].starts_with("0,0,phi_1,9,"));
    CHECK(l[2].starts_with("0,1,phi_2,11,"));
    CHECK(l[3].starts_with("1,0,phi_3,11,"));
    CHECK(l[4].starts_with("1,1,phi_4,13,"));
    const auto one = run({"teleport", "--dim", "4", "--channel", "2,3"});
    CHECK(lines(one.out).at(1).starts_with("2,3,phi_12,13,"));
    const auto s7 = run({"teleport", "--dim", "3", "--all", "--seed", "7"});
    CHECK(s7.code == 0);
    CHECK(lines(s7.out).size() == 10);
    CHECK(s7.out.find("false") == std::string::npos);
}

TEST_CASE("teleport --corrections for qubits") {
    const auto r = run({"teleport", "--dim", "2", "--corrections"});
    CHECK(r.code == 0);
    CHECK(r.out == "m,n,phi_1,phi_2,phi_3,phi_4\n"
                   "0,0,I2,sX,sZ,sZsX\n"
                   "0,1,sX,I2,sZsX,sZ\n"
                   "1,0,sZ,sZsX,I2,sX\n"
                   "1,1,sZsX,sZ,sX,I2\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"dense", "--dim", "2"}).code == 2);
    CHECK(run({"dense", "--dim", "2", "--message", "0,1", "--all"}).code == 2);
    CHECK(run({"dense", "--dim", "2", "--message", "0,2"}).code == 2);
    CHECK(run({"dense", "--dim", "1", "--all"}).code == 2);
    CHECK(run({"dense", "--dim", "2", "--message", "x"}).code == 2);
    CHECK(run({"teleport", "--dim", "3", "--channel", "3,0"}).code == 2);
    CHECK(run({"fidelity", "--noise", "bit-flip"}).code == 2);
    CHECK(run({"fidelity", "--dim-range", "5:3"}).code == 2);
    CHECK(run({"fidelity", "--p-steps", "1"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("circuit analysis of the samples") {
    const auto bell = run({"circuit", (samples_dir() / "bell_prep.qcf").string()});
    REQUIRE(bell.code == 0);
    CHECK(nlohmann::json::parse(bell.out)["total_cost"] == 3);
    const auto dc = run({"circuit", (samples_dir() / "dense_coding_d2_m0n1.qcf").string()});
    REQUIRE(dc.code == 0);
    CHECK(nlohmann::json::parse(dc.out)["total_cost"] == 6);
    const auto tp = run({"circuit", (samples_dir() / "teleport_d3_phi6.qcf").string()});
    REQUIRE(tp.code == 0);
    CHECK(nlohmann::json::parse(tp.out)["total_cost"] == 13);
}

TEST_CASE("circuit parse errors report the line") {
    const auto dir = fs::temp_directory_path() / "quditcost_cli_test";
    fs::create_directories(dir);
    const auto bad = dir / "bad.qcf";
    std::ofstream(bad) << "dim 3\nwires 2\napply H 1\napply P 1 : k=7\n";
    const auto r = run({"circuit", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find(":4:") != std::string::npos);
    CHECK(run({"circuit", (dir / "missing.qcf").string()}).code == 2);
}

TEST_CASE("fidelity datasets") {
    const auto dir = fs::temp_directory_path() / "quditcost_cli_fid";
    fs::remove_all(dir);
    const auto r = run({"fidelity", "--noise", "dit-flip", "--dim-range", "2:16", "--p-steps",
                        "11", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto text = slurp(dir / "fidelity_dit-flip.csv");
    const auto l = lines(text);
    REQUIRE(l.size() == 1 + 15 * 11);
    CHECK(l[0] == "kind,d,D,p,fidelity_sim,fidelity_closed");
    CHECK(l[1] == "dit-flip,2,6,0,1,1");
    CHECK(l.back().starts_with("dit-flip,16,20,1,"));

    // identical configuration, identical bytes
    const auto dir2 = fs::temp_directory_path() / "quditcost_cli_fid2";
    fs::remove_all(dir2);
    run({"fidelity", "--noise", "dit-flip", "--out", dir2.string()});
    CHECK(slurp(dir2 / "fidelity_dit-flip.csv") == text);

    // the depolarizing closed form disagrees with simulation, so the gate trips
    const auto dep = run({"fidelity", "--noise", "depolarizing", "--dim-range", "2:3"});
    CHECK(dep.code == 1);
    CHECK(dep.err.find("depolarizing") != std::string::npos);
}

TEST_CASE("verify reports every suite") {
    const auto r = run({"verify"});
    const auto l = lines(r.out);
    CHECK(l.size() == 8);
    int fails = 0;
    for (const auto &line : l) {
        if (line.starts_with("FAIL")) {
            ++fails;
            CHECK(line.find("depolarizing") != std::string::npos);
        }
    }
    CHECK(fails == 1);
    CHECK(r.code == 1);
}
