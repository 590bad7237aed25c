#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "posreal/cli.hpp"
#include "posreal/error.hpp"
#include "posreal/io.hpp"
#include "posreal/regions.hpp"

using namespace posreal;
using posreal::io::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("posreal_cli_" + std::to_string(std::rand()) + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "posreal");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("transfer function JSON, coefficient form") {
    const auto h = io::tf_from_json(json::parse(R"({"b": [1, 0, 0], "a": [1, 0, 0, -1]})"));
    CHECK(h.order() == 3);
    const auto j = io::tf_to_json(h);
    CHECK(j.at("b") == json::array({1.0, 0.0, 0.0}));
    CHECK(j.at("a") == json::array({1.0, 0.0, 0.0, -1.0}));
    const auto back = io::tf_from_json(json::parse(j.dump()));
    CHECK(back.den() == h.den());
    CHECK(back.num() == h.num());
}

TEST_CASE("transfer function JSON, zero-pole-gain form") {
    const auto h = io::tf_from_json(json::parse(R"({"zeros": [], "poles": [[1, 0], [0.5, 0]], "gain": 2})"));
    CHECK(h.den() == Polynomial{1, -1.5, 0.5});
    CHECK(h.num() == Polynomial{0, 2});
    // zeros and gain default to none and 1
    CHECK(io::tf_from_json(json::parse(R"({"poles": [[1, 0]]})")).gain() == 1.0);
    CHECK_THROWS_AS(io::tf_from_json(json::parse(R"({"gain": 1})")), Error);
    CHECK_THROWS_AS(io::tf_from_json(json::parse(R"({"b": "x", "a": [1, -1]})")), Error);
}

TEST_CASE("realization JSON round-trips bit for bit") {
    StateSpaceRealization ss;
    ss.A = Eigen::MatrixXd(2, 2);
    ss.A << 0.1, 1.0 / 3.0, 2e-300, 0.7;
    ss.B = Eigen::Vector2d(1, 0);
    ss.C = Eigen::RowVector2d(0.123456789012345678, 5);
    ss.max_clamp = 1e-12;
    const auto j = io::realization_to_json(ss, {1.0, 0.25});
    CHECK(j.at("N") == 2);
    CHECK(j.at("q") == json::array({1.0, 0.25}));
    const auto back = io::realization_from_json(json::parse(j.dump()));
    CHECK(back.A == ss.A);
    CHECK(back.B == ss.B);
    CHECK(back.C == ss.C);
    CHECK(back.max_clamp == ss.max_clamp);
}

TEST_CASE("config parsing") {
    TempDir dir;
    const auto path = dir.write("posreal.conf", "# tolerances\nfeas_tol = 1e-10\n\nn_max=12\nthreads = 2\n");
    const auto cfg = load_config_file(path);
    CHECK(cfg.feas_tol == 1e-10);
    CHECK(cfg.n_max == 12);
    CHECK(cfg.threads == 2u);
    CHECK(cfg.axis_tol == Config{}.axis_tol);
    Config c;
    CHECK_THROWS_AS(c.set("no_such_key", "1"), Error);
    CHECK_THROWS_AS(c.set("feas_tol", "abc"), Error);
    CHECK_THROWS_AS(load_config_file(dir.write("bad.conf", "just words\n")), Error);
}

TEST_CASE("cli minimal-dim") {
    TempDir dir;
    const auto one = dir.write("one.json", R"({"b": [1], "a": [1, -1]})");
    const auto r = run({"minimal-dim", "--tf", one});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("N") == 1);
    CHECK(j.at("q") == json::array({1.0}));
    CHECK(j.contains("certified_minimal"));

    const auto five = dir.write("five.json", R"({"zeros": [], "poles": [[1, 0], [-0.8090169943749475, 0.5877852522924731], [-0.8090169943749475, -0.5877852522924731]], "gain": 1})");
    const auto r5 = run({"minimal-dim", "--tf", five});
    CHECK(r5.code == 0);
    CHECK(json::parse(r5.out).at("N") == 5);
    CHECK(json::parse(r5.out).at("certified_minimal") == true);

    const auto two = dir.write("two.json", R"({"zeros": [], "poles": [[1, 0], [0.5, 0], [-0.3, 0]], "gain": 1})");
    const auto bad = run({"minimal-dim", "--tf", two});
    CHECK(bad.code == 1);
    const auto e = json::parse(bad.err);
    CHECK(e.at("error") == "MultiplePositivePoles");
    CHECK(e.at("detail") == "multiple positive poles: no Markov realization exists for any N");
    // stable across runs
    CHECK(run({"minimal-dim", "--tf", two}).code == 1);
}

TEST_CASE("cli realize") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"b": [1], "a": [1, -1]})");
    const auto r = run({"realize", "--tf", tf, "--dim", "3"});
    REQUIRE(r.code == 0);
    const auto ss = io::realization_from_json(json::parse(r.out));
    CHECK(ss.dimension() == 3);
    CHECK(ss.C == Eigen::RowVector3d(1, 1, 1));

    const auto out = (dir.path / "ss.json").string();
    CHECK(run({"realize", "--tf", tf, "--dim", "2", "--out", out}).code == 0);
    CHECK(io::realization_from_json(io::read_json_file(out)).dimension() == 2);

    const auto five = dir.write("five.json", R"({"zeros": [], "poles": [[1, 0], [-0.7685661446562, 0.5583959896778495], [-0.7685661446562, -0.5583959896778495]], "gain": 1})");
    const auto inf = run({"realize", "--tf", five, "--dim", "4"});
    CHECK(inf.code == 1);
    CHECK(json::parse(inf.err).at("error") == "Infeasible");
    CHECK(run({"realize", "--tf", five, "--dim", "5"}).code == 0);
    CHECK(run({"realize", "--tf", five, "--dim", "2"}).code == 1);
}

TEST_CASE("cli certify and classify") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"b": [1, 0, 0], "a": [1, 0, 0, -1]})");
    const auto c = run({"certify", "--tf", tf});
    REQUIRE(c.code == 0);
    const auto j = json::parse(c.out);
    CHECK(j.at("N") == 3);
    CHECK(j.at("mu") == json::array({1, 3}));
    CHECK(j.at("omega").size() == 3);

    const auto irr = dir.write("irr.json", R"({"zeros": [], "poles": [[1, 0], [0.4862789007, 0.7573164012], [0.4862789007, -0.7573164012]], "gain": 1})");
    const auto ci = run({"certify", "--tf", irr});
    CHECK(ci.code == 1);
    CHECK(json::parse(ci.err).at("error") == "IrrationalAngles");

    const auto k = run({"classify", "--tf", tf});
    REQUIRE(k.code == 0);
    const auto cj = json::parse(k.out);
    CHECK(cj.at("positive_pole_count") == 1);
    CHECK(cj.at("in_M") == true);

    const auto nonpos = dir.write("neg.json", R"({"b": [1], "a": [1, 1]})");
    const auto kn = run({"classify", "--tf", nonpos});
    CHECK(kn.code == 1);
    CHECK(json::parse(kn.err).at("error") == "NonpositiveDominantPole");
}

TEST_CASE("cli compound") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"b": [1], "a": [1, -1.5, 0.5]})");
    const auto r = run({"compound", "--tf", tf});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("plan").at("mode") == "series");
    CHECK(j.at("plan").at("dims") == json::array({1, 1}));
    CHECK(j.at("realization").at("N") == 2);
    const auto p = run({"compound", "--tf", tf, "--mode", "parallel"});
    CHECK(p.code == 1);
    CHECK(json::parse(p.err).at("error") == "DecompositionFailed");
}

TEST_CASE("cli region-scan") {
    TempDir dir;
    const auto out = (dir.path / "psi3.csv").string();
    REQUIRE(run({"region-scan", "--N", "3", "--out", out}).code == 0);
    const regions::GridSpec grid;
    const auto s = regions::read_csv(out, grid);
    // nearest grid point below (-0.5, 0.866) that lies inside the disk
    CHECK(s.at(50, 186) == regions::Cell::Feasible);
    CHECK(std::abs(grid.x(50) + 0.5) < 1e-12);
    CHECK(std::abs(grid.y(186) - 0.86) < 1e-12);
    const auto stdout_run = run({"region-scan", "--N", "3", "--grid", "21"});
    CHECK(stdout_run.code == 0);
    CHECK(stdout_run.out.rfind("x,y,N,feasible\n", 0) == 0);
}

TEST_CASE("cli usage errors exit 2") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"b": [1], "a": [1, -1]})");
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"minimal-dim"}).code == 2);
    CHECK(run({"minimal-dim", "--tf", (dir.path / "missing.json").string()}).code == 2);
    CHECK(run({"region-scan", "--N", "2"}).code == 2);
    CHECK(run({"compound", "--tf", tf, "--mode", "diagonal"}).code == 2);
    const auto bad_set = run({"--set", "bogus=1", "minimal-dim", "--tf", tf});
    CHECK(bad_set.code == 2);
    CHECK(json::parse(bad_set.err).at("error") == "Usage");
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli config file and overrides") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"zeros": [], "poles": [[1, 0], [-0.7685661446562, 0.5583959896778495], [-0.7685661446562, -0.5583959896778495]], "gain": 1})");
    const auto conf = dir.write("small.conf", "n_max = 4\n");
    CHECK(run({"--config", conf, "minimal-dim", "--tf", tf}).code == 1);
    CHECK(run({"--set", "n_max=4", "minimal-dim", "--tf", tf}).code == 1);
    CHECK(run({"--config", conf, "minimal-dim", "--tf", tf, "--max", "8"}).code == 0);
    setenv("POSREAL_CONFIG", conf.c_str(), 1);
    CHECK(run({"minimal-dim", "--tf", tf}).code == 1);
    unsetenv("POSREAL_CONFIG");
    CHECK(run({"minimal-dim", "--tf", tf}).code == 0);
}

TEST_CASE("JSON output uses shortest round-trip digits") {
    TempDir dir;
    const auto tf = dir.write("tf.json", R"({"b": [0.1], "a": [1, -0.3]})");
    const auto r = run({"realize", "--tf", tf, "--dim", "1"});
    REQUIRE(r.code == 0);
    const auto ss = io::realization_from_json(json::parse(r.out));
    CHECK(ss.A(0, 0) == 0.3);
    CHECK(ss.C(0) == 0.1);
}
