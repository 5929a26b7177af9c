#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bibd/constructions.hpp"
#include "bibd/design.hpp"
#include "bibd/isomorphism.hpp"

using namespace bibd;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "bibd_cli_tests";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    fs::path capture = work_dir() / "capture.txt";
    std::string cmd = std::string(BIBD_CLI_PATH) + " " + args + " > " +
                      capture.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << content;
    return p.string();
}

std::string design_file(const std::string& name, const Design& d) {
    return write_file(name, design_to_text(d));
}

} // namespace

TEST_CASE("construct then verify round-trips through files") {
    fs::path out = work_dir() / "pgc3.txt";
    auto built = run_cli("construct pg-complement --n 3 -o " + out.string());
    REQUIRE(built.exit_code == 0);
    CHECK(parse_design_file(out.string()) == pg_complement(3));

    auto verified = run_cli("verify " + out.string() + " --format json");
    CHECK(verified.exit_code == 0);
    json j = json::parse(verified.output);
    CHECK(j["bibd"] == true);
    CHECK(j["params"]["v"] == 7);
    CHECK(j["params"]["k"] == 4);
    CHECK(j["params"]["lambda"] == 2);
    CHECK(j["params"]["symmetric"] == true);
    CHECK(j["intersection_size"] == 2);

    // Constructing again yields a byte-identical file.
    fs::path out2 = work_dir() / "pgc3_again.txt";
    run_cli("construct pg-complement --n 3 -o " + out2.string());
    std::ifstream a(out), b(out2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("construct to stdout") {
    auto res = run_cli("construct sdp-biplane");
    CHECK(res.exit_code == 0);
    std::istringstream is(res.output);
    CHECK(parse_design(is) == sdp_biplane());
}

TEST_CASE("group-check accepts a closed design and reports the rank criterion") {
    std::string path = design_file("pgc4.txt", pg_complement(4));
    auto res = run_cli("group-check " + path + " --format json");
    CHECK(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["closed"] == true);
    CHECK(j["group_order"] == 16);
    CHECK(j["dimension_n"] == 4);
    CHECK(j["elementary_abelian"] == true);
    CHECK(j["lemma2"]["params_match"] == true);
    CHECK(j["lemma2"]["n_from_rank"] == 4);
    CHECK(j["lemma2"]["consistent"] == true);
}

TEST_CASE("group-check rejects the Fano plane with a witness") {
    Design fano = Design::from_point_lists(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    std::string path = design_file("fano.txt", fano);
    auto res = run_cli("group-check " + path + " --format json");
    CHECK(res.exit_code == 1);
    json j = json::parse(res.output);
    CHECK(j["closed"] == false);
    REQUIRE(j.contains("witness"));
    std::size_t wi = j["witness"][0], wj = j["witness"][1];
    BitVector escape = fano.block(wi) ^ fano.block(wj);
    bool is_block = false;
    for (const auto& blk : fano.blocks())
        is_block = is_block || blk == escape;
    CHECK_FALSE(is_block);
}

TEST_CASE("rank reports the bound for the matching parameter shape") {
    std::string path = design_file("pgc4_rank.txt", pg_complement(4));
    auto res = run_cli("rank " + path + " --format json");
    CHECK(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["rank"] == 4);
    CHECK(j["hamada"]["n"] == 4);
    CHECK(j["hamada"]["bound_holds"] == true);
    CHECK(j["hamada"]["equality"] == true);

    // Fano: rank only, no bound section (different parameter shape).
    Design fano = Design::from_point_lists(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    auto res2 = run_cli("rank " + design_file("fano_rank.txt", fano) + " --format json");
    CHECK(res2.exit_code == 0);
    json j2 = json::parse(res2.output);
    CHECK(j2["rank"] == 4);
    CHECK_FALSE(j2.contains("hamada"));
}

TEST_CASE("iso emits a machine-checkable certificate") {
    Design base = pg_complement(3);
    Design relabeled = apply_permutation(base, PointPermutation({3, 5, 0, 6, 1, 2, 4}));
    std::string p1 = design_file("iso_a.txt", base);
    std::string p2 = design_file("iso_b.txt", relabeled);

    auto res = run_cli("iso " + p1 + " " + p2 + " --emit-certificate --format json");
    CHECK(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["isomorphic"] == true);
    PointPermutation cert = PointPermutation::from_line(j["certificate"]);
    CHECK(verify_certificate(base, relabeled, cert));

    // Non-isomorphic pair exits 1.
    Design fano = Design::from_point_lists(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    auto res2 = run_cli("iso " + p1 + " " + design_file("iso_c.txt", fano));
    CHECK(res2.exit_code == 1);
}

TEST_CASE("sdp-check and good-blocks") {
    auto sdp = run_cli("sdp-check " + design_file("biplane.txt", sdp_biplane()) +
                       " --format json");
    CHECK(sdp.exit_code == 0);
    CHECK(json::parse(sdp.output)["is_sdp"] == true);

    Design h3 = hadamard_to_3design(sylvester_hadamard(3));
    auto good = run_cli("good-blocks " + design_file("h3.txt", h3) + " --format json");
    CHECK(good.exit_code == 0);
    json j = json::parse(good.output);
    CHECK(j["blocks"] == 14);
    CHECK(j["good_blocks"] == 14);
    CHECK(j["classes"] == 7);
    CHECK(j["group_table_ok"] == true);
    CHECK(j["kimberley_order"] == 8);
}

TEST_CASE("enumerate --v 7") {
    fs::path out_dir = work_dir() / "enum7";
    auto res = run_cli("enumerate --v 7 --out-dir " + out_dir.string() + " --format json");
    CHECK(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["labeled_count"] == 30);
    CHECK(j["classes"] == 1);
    CHECK(j["class_sizes"] == json::array({30}));
    CHECK(j["all_bibd"] == true);
    CHECK(j["isomorphic_to_pg_complement"] == json::array({true}));

    Design rep = parse_design_file((out_dir / "class_0.txt").string());
    CHECK(are_isomorphic(rep, pg_complement(3)).has_value());
}

TEST_CASE("text and json formats carry the same facts") {
    std::string path = design_file("parity.txt", pg_complement(3));
    auto text = run_cli("verify " + path + " --format text");
    auto as_json = run_cli("verify " + path + " --format json");
    REQUIRE(text.exit_code == 0);
    REQUIRE(as_json.exit_code == 0);
    json j = json::parse(as_json.output);
    // Every leaf of the JSON report appears as a "dotted.key: value" line.
    CHECK(text.output.find("bibd: true") != std::string::npos);
    for (const std::string key : {"v", "b", "k", "lambda", "r"}) {
        std::ostringstream line;
        line << "params." << key << ": " << j["params"][key].get<std::uint64_t>();
        CHECK(text.output.find(line.str()) != std::string::npos);
    }
    CHECK(text.output.find("params.symmetric: true") != std::string::npos);
    CHECK(text.output.find("intersection_size: 2") != std::string::npos);
}

TEST_CASE("error handling exits with the usage code") {
    std::string bad = write_file("bad.txt", "DESIGN 4 2\n0 1\n");
    auto res = run_cli("verify " + bad);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("error: line") != std::string::npos);

    CHECK(run_cli("verify /nonexistent/file.txt").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("enumerate --v 12").exit_code == 2);
    CHECK(run_cli("enumerate --v 31").exit_code == 2); // needs --allow-long
    CHECK(run_cli("construct pg --n 0").exit_code == 2);
    CHECK(run_cli("verify " + bad + " --format yaml").exit_code == 2);
}
