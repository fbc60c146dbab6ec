#include <cmath>
#include <filesystem>
#include <limits>

#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/io.hpp"

using namespace oufpt;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    auto d = fs::temp_directory_path() / "oufpt_io_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("double formatting round-trips exactly") {
    Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(gen.uniform(-1.0, 1.0), gen.integer(-1060, 1020));
        CHECK(io::parse_double(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(std::numeric_limits<double>::denorm_min()) == "5e-324");
    CHECK(io::format_double(HUGE_VAL) == "inf");
    CHECK(io::format_double(-HUGE_VAL) == "-inf");
    CHECK(io::format_double(std::nan("")) == "nan");
    CHECK(std::isnan(io::parse_double("nan")));
    CHECK(io::parse_double(" +2.5\r") == 2.5);
    CHECK_THROWS_AS(io::parse_double("1.5x"), DomainError);
    CHECK_THROWS_AS(io::parse_double(""), DomainError);
}

TEST_CASE("density CSV is reproduced byte for byte") {
    DensityCurve c;
    Gen gen(3);
    for (int i = 1; i <= 200; ++i) {
        c.times.push_back(0.01 * i);
        c.values.push_back(gen.uniform(0.0, 2.0) * std::pow(10.0, gen.integer(-300, 3)));
    }
    c.values[4] = 0.0;
    const std::string csv = io::density_csv(c);
    CHECK(csv.rfind("t,g\n", 0) == 0);
    const auto table = io::parse_two_columns(csv);
    CHECK(table.first == c.times);
    CHECK(table.second == c.values);
    CHECK(io::density_csv(table) == csv);
}

TEST_CASE("two-column parsing errors name the line") {
    CHECK(io::parse_two_columns("1,2\n3,4\n").first.size() == 2);
    CHECK(io::parse_two_columns("t,S\r\n1,2\r\n\n").first.size() == 1);
    try {
        io::parse_two_columns("t,S\n1,2\n3\n");
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_two_columns("t,S\n1,abc\n"), DomainError);
}

TEST_CASE("threshold tables") {
    const auto th = io::parse_threshold_csv("t,S\n0,1\n0.5,1.2\n1,1.5\n");
    CHECK(th.t_min() == 0.0);
    CHECK(th.t_max() == 1.0);
    CHECK(th(0.5) == doctest::Approx(1.2));
    CHECK_THROWS_AS(io::parse_threshold_csv("t,S\n0,1\n"), DomainError);
    CHECK_THROWS_AS(io::parse_threshold_csv("0,1\n1,2\n1,3\n"), DomainError);
    CHECK_THROWS_AS(io::parse_threshold_csv("0,1\n1,inf\n"), DomainError);
    const auto path = scratch_dir() / "threshold.csv";
    io::write_atomic(path, "0,1\n2,3\n");
    CHECK(io::read_threshold_csv(path)(1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(io::read_threshold_csv(scratch_dir() / "missing.csv"), DomainError);
}

TEST_CASE("atomic writes replace content without leaving temporaries") {
    const auto dir = scratch_dir() / "atomic";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto path = dir / "out.csv";
    io::write_atomic(path, "first\n");
    io::write_atomic(path, "second\n");
    CHECK(io::read_file(path) == "second\n");
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    CHECK_THROWS(io::write_atomic(dir / "no" / "such" / "dir.csv", "x"));
}

TEST_CASE("density JSON carries the solver metadata") {
    DensityCurve c;
    c.times = {0.5, 1.0};
    c.values = {0.25, 0.125};
    c.params = OUParams{2.0, 0.5, 1.5};
    c.threshold = ExpThreshold{1.0, 0.5};
    c.x0 = -1.0;
    c.info = CurveInfo{0.5, false, 2.5, "midpoint-first-kind", 2, 1.0};
    const auto j = nlohmann::json::parse(io::density_json(c));
    CHECK(j["grid"].size() == 2);
    CHECK(j["values"][1].get<double>() == 0.125);
    const auto& m = j["metadata"];
    CHECK(m["params"]["theta"].get<double>() == 2.0);
    CHECK(m["threshold"]["type"] == "exp-family");
    CHECK(m["q"].get<double>() == 0.5);
    CHECK(m["on_boundary"] == false);
    CHECK(m["x"].get<double>() == 2.5);
    CHECK(m["scheme"] == "midpoint-first-kind");
}

TEST_CASE("run manifests round-trip") {
    io::RunManifest m;
    m.command = "density";
    m.argv = {"--theta", "1", "--q", "-0.5"};
    m.parameters = {{"theta", "1"}, {"q", "-0.5"}, {"scheme", "block-by-block"}};
    m.artifacts = {"run.csv", "run.json"};
    m.timestamp = io::utc_timestamp();
    m.tool_version = "0.4.0";
    const auto back = io::RunManifest::from_json(m.to_json());
    CHECK(back.command == m.command);
    CHECK(back.argv == m.argv);
    CHECK(back.parameters == m.parameters);
    CHECK(back.artifacts == m.artifacts);
    CHECK(back.timestamp == m.timestamp);
    CHECK(back.tool_version == m.tool_version);
    CHECK(m.timestamp.size() == 20);
    CHECK(m.timestamp.back() == 'Z');
    CHECK_THROWS_AS(io::RunManifest::from_json("{\"command\": 3}"), DomainError);
    CHECK_THROWS_AS(io::RunManifest::from_json("not json"), DomainError);
}

TEST_CASE("transform CSV rows") {
    TransformCase c{"single", "theta=1;z=0", {}};
    c.check.lambda = 1.0;
    c.check.rhs_vanishes = true;
    const auto csv = io::transform_csv({c}, 1e-6);
    CHECK(csv == "family,inputs,lambda,lhs,rhs,rel_err,abs_err,pass\nsingle,theta=1;z=0,1,0,0,0,0,1\n");
}
