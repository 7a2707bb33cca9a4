#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "holo/channel_io.hpp"
#include "holo/errors.hpp"
#include "holo/report.hpp"
#include "holo/smooth.hpp"
#include "test_util.hpp"

using holo::ChannelSequence;
using holo::Complex;
using holo::ExperimentReport;
using holo::KrausRep;
using holo::Matrix;
using nlohmann::ordered_json;
using testutil::dist;

namespace {

ExperimentReport sample_report() {
    ExperimentReport rep("demo");
    rep.seed = 17;
    rep.set_param("width", std::int64_t(3));
    rep.set_param("strength", 0.25);
    rep.set_param("family", std::string("ramp"));
    rep.set_scalar("norm", 1.5);
    rep.set_complex("phase", Complex(0.6, -0.8));
    rep.set_series_columns({"s", "value"});
    rep.add_series_row({0.0, 1.0});
    rep.add_series_row({0.5, 0.3333333333333333});
    rep.add_check("unitarity", 1e-12, 1e-8);
    rep.add_check("drift", 2e-3, 1e-4);  // fails
    rep.add_check("closure", 0.0, 1e-10);
    rep.finalize();
    return rep;
}

}  // namespace

TEST_SUITE("report_io") {

TEST_CASE("reports serialize with a stable key order and round trip") {
    ExperimentReport rep = sample_report();
    ordered_json j = rep.to_json();
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    const std::vector<std::string> expected{
        "name",    "params", "seed",   "toolVersion", "scalars",
        "complexScalars", "seriesColumns", "series", "residuals",
        "thresholds", "passed"};
    CHECK(keys == expected);

    // Through text and back: everything must survive bit-exactly.
    ExperimentReport back = ExperimentReport::from_json(
        ordered_json::parse(j.dump()));
    CHECK(back.name() == "demo");
    CHECK(back.seed == 17);
    CHECK(back.tool_version == rep.tool_version);
    CHECK(back.scalar("norm") == 1.5);
    CHECK(back.complex_scalar("phase") == Complex(0.6, -0.8));
    CHECK(back.series() == rep.series());
    CHECK(back.series_columns() == rep.series_columns());
    REQUIRE(back.checks().size() == 3);
    CHECK(back.checks()[1].key == "drift");
    CHECK(back.checks()[1].residual == 2e-3);
    CHECK(back.checks()[1].threshold == 1e-4);
    CHECK(back.passed() == rep.passed());
}

TEST_CASE("the verdict and exit code follow the first failing check") {
    ExperimentReport rep = sample_report();
    CHECK_FALSE(rep.passed());
    CHECK(rep.exit_code() == 2);  // second check fails
    ExperimentReport clean("clean");
    clean.add_check("only", 0.0, 1.0);
    clean.finalize();
    CHECK(clean.passed());
    CHECK(clean.exit_code() == 0);
    // No checks at all counts as a pass.
    ExperimentReport empty("empty");
    empty.finalize();
    CHECK(empty.passed());
    CHECK(empty.exit_code() == 0);
}

TEST_CASE("scalar maps upsert and complain about unknown keys") {
    ExperimentReport rep("x");
    rep.set_scalar("a", 1.0);
    rep.set_scalar("a", 2.0);
    CHECK(rep.scalar("a") == 2.0);
    CHECK(rep.to_json()["scalars"].size() == 1);
    CHECK_THROWS_AS(rep.scalar("b"), holo::UnknownName);
    CHECK_THROWS_AS(rep.complex_scalar("a"), holo::UnknownName);
}

TEST_CASE("series shape violations are rejected") {
    ExperimentReport rep("x");
    rep.set_series_columns({"a", "b"});
    rep.add_series_row({1.0, 2.0});
    CHECK_THROWS_AS(rep.add_series_row({1.0}), holo::DimensionMismatch);
    CHECK_THROWS_AS(rep.set_series_columns({"a"}), holo::DimensionMismatch);
    // Reshaping an empty series is allowed.
    ExperimentReport fresh("y");
    fresh.set_series_columns({"a"});
    CHECK_NOTHROW(fresh.set_series_columns({"a", "b", "c"}));
}

TEST_CASE("the CSV block mirrors the series") {
    ExperimentReport rep = sample_report();
    std::istringstream csv(rep.to_csv());
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "s,value");
    REQUIRE(std::getline(csv, line));
    CHECK(line == "0,1");
    REQUIRE(std::getline(csv, line));
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) == 0.5);
    CHECK(std::stod(line.substr(comma + 1)) == 0.3333333333333333);
    CHECK_FALSE(std::getline(csv, line));
}

TEST_CASE("matrices and channels survive the JSON round trip") {
    std::mt19937_64 rng(3);
    Matrix m = testutil::random_complex(3, 2, rng);
    Matrix m2 = holo::matrix_from_json(
        ordered_json::parse(holo::matrix_to_json(m).dump()));
    CHECK(dist(m, m2) == 0.0);

    KrausRep rep = holo::random_channel(2, 3, 5);
    KrausRep rep2 = holo::channel_from_json(
        ordered_json::parse(holo::channel_to_json(rep).dump()));
    CHECK(rep2.dim == 2);
    REQUIRE(rep2.kraus_number() == 3);
    for (int k = 0; k < 3; ++k) CHECK(dist(rep.ops[k], rep2.ops[k]) == 0.0);

    ChannelSequence seq{holo::phase_flip(0.2), holo::amplitude_damping(0.4)};
    ChannelSequence seq2 = holo::sequence_from_json(
        ordered_json::parse(holo::sequence_to_json(seq).dump()));
    REQUIRE(seq2.size() == 2);
    CHECK(dist(seq2[1].ops[0], seq[1].ops[0]) == 0.0);
}

TEST_CASE("malformed documents raise parse errors") {
    CHECK_THROWS_AS(holo::matrix_from_json(ordered_json::array()),
                    holo::ParseError);
    CHECK_THROWS_AS(
        holo::matrix_from_json(ordered_json::parse("[[[1,0]],[[1,0],[0,0]]]")),
        holo::ParseError);
    CHECK_THROWS_AS(holo::matrix_from_json(ordered_json::parse("[[[1]]]")),
                    holo::ParseError);
    CHECK_THROWS_AS(holo::matrix_from_json(ordered_json::parse("[[1,2],[3,4]]")),
                    holo::ParseError);
    CHECK_THROWS_AS(holo::channel_from_json(ordered_json::parse("{\"dim\": 2}")),
                    holo::ParseError);
    CHECK_THROWS_AS(
        holo::sequence_from_json(ordered_json::parse("{\"dim\": 2}")),
        holo::ParseError);
    CHECK_THROWS_AS(
        ExperimentReport::from_json(ordered_json::parse("{\"name\": \"x\"}")),
        holo::ParseError);
}

TEST_CASE("sampled paths interpolate linearly between their grid points") {
    holo::ChannelPath ramp = holo::named_path("damping_ramp", {0.2, 0.7});
    ordered_json j;
    j["dim"] = 2;
    j["k"] = 2;
    j["samples"] = ordered_json::array();
    for (double s : {0.0, 0.5, 1.0}) {
        ordered_json sample;
        sample["s"] = s;
        ordered_json ops = ordered_json::array();
        for (const Matrix& e : ramp.ops_at(s)) ops.push_back(holo::matrix_to_json(e));
        sample["kraus"] = std::move(ops);
        j["samples"].push_back(std::move(sample));
    }
    holo::ChannelPath loaded = holo::path_from_json(j);
    CHECK(loaded.dim() == 2);
    CHECK(loaded.kraus_count() == 2);
    CHECK(loaded.has_analytic_derivative());

    std::vector<Matrix> a = ramp.ops_at(0.0);
    std::vector<Matrix> b = ramp.ops_at(0.5);
    std::vector<Matrix> mid = loaded.ops_at(0.25);
    std::vector<Matrix> slope = loaded.derivative_at(0.25);
    for (int m = 0; m < 2; ++m) {
        CHECK(dist(mid[m], Matrix(0.5 * (a[m] + b[m]))) < 1e-15);
        CHECK(dist(slope[m], Matrix((b[m] - a[m]) / 0.5)) < 1e-15);
    }
    // Outside [0, 1] the lookup clamps, so finite differences at the ends
    // stay well defined.
    CHECK(dist(loaded.ops_at(-0.2)[0], a[0]) == 0.0);
    CHECK_NOTHROW(loaded.rep_at(0.0));
    CHECK_NOTHROW(loaded.rep_at(1.0));
}

TEST_CASE("densely sampled paths approximate the analytic holonomy") {
    holo::ChannelPath ramp = holo::named_path("damping_ramp", {0.2, 0.7});
    ordered_json j;
    j["dim"] = 2;
    j["k"] = 2;
    j["samples"] = ordered_json::array();
    const int n = 101;
    for (int i = 0; i < n; ++i) {
        const double s = double(i) / (n - 1);
        ordered_json sample;
        sample["s"] = s;
        ordered_json ops = ordered_json::array();
        for (const Matrix& e : ramp.ops_at(s)) ops.push_back(holo::matrix_to_json(e));
        sample["kraus"] = std::move(ops);
        j["samples"].push_back(std::move(sample));
    }
    holo::ChannelPath loaded = holo::path_from_json(j);
    CHECK(dist(holo::smooth_holonomy(loaded, 512),
               holo::smooth_holonomy(ramp, 512)) < 1e-2);
}

TEST_CASE("path documents are validated before use") {
    ordered_json good;
    good["dim"] = 2;
    good["k"] = 1;
    auto one_sample = [](double s, const Matrix& m) {
        ordered_json sample;
        sample["s"] = s;
        sample["kraus"] = ordered_json::array({holo::matrix_to_json(m)});
        return sample;
    };
    Matrix id = Matrix::Identity(2, 2);
    good["samples"] = ordered_json::array(
        {one_sample(0.0, id), one_sample(1.0, id)});
    CHECK_NOTHROW(holo::path_from_json(good));

    ordered_json too_few = good;
    too_few["samples"] = ordered_json::array({one_sample(0.0, id)});
    CHECK_THROWS_AS(holo::path_from_json(too_few), holo::ParseError);

    ordered_json backwards = good;
    backwards["samples"] = ordered_json::array(
        {one_sample(0.0, id), one_sample(0.7, id), one_sample(0.3, id)});
    CHECK_THROWS_AS(holo::path_from_json(backwards), holo::NonMonotoneGrid);

    ordered_json offset = good;
    offset["samples"] = ordered_json::array(
        {one_sample(0.1, id), one_sample(1.0, id)});
    CHECK_THROWS_AS(holo::path_from_json(offset), holo::ParamOutOfRange);

    ordered_json wrong_count = good;
    wrong_count["k"] = 2;
    CHECK_THROWS_AS(holo::path_from_json(wrong_count), holo::ParseError);
}

TEST_CASE("file helpers round trip and report missing files") {
    namespace fs = std::filesystem;
    const fs::path file = fs::temp_directory_path() / "holo_report_io_test.json";
    ordered_json j = sample_report().to_json();
    holo::save_json_file(file.string(), j);
    ordered_json back = holo::load_json_file(file.string());
    CHECK(back == j);
    std::remove(file.string().c_str());
    CHECK_THROWS_AS(holo::load_json_file(file.string()), holo::ParseError);
    CHECK_THROWS_AS(
        holo::save_json_file("/nonexistent_dir_zz/x.json", j),
        holo::ParseError);
}

}  // TEST_SUITE
