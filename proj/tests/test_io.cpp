#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvlab/experiments.hpp"
#include "cvlab/io.hpp"

using namespace cvlab;

namespace {
std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("curve csv round trip") {
  densities::DensityCurve curve;
  curve.kind = densities::CurveKind::SaddleLimit;
  curve.convention = densities::Convention::PaperForm;
  curve.chi = 2;
  curve.xs = {0.0, 0.1234567890123456789, 1.0 / 3.0};
  curve.values = {0.0, 4.9e-324, -1.2345678901234567e-5};

  const auto path = temp_file("cvlab_curve_test.csv");
  io::write_curve_csv_file(path.string(), curve);
  const io::CurveFile read = io::read_curve_csv_file(path.string());

  CHECK(read.meta.at("curve") == "saddle");
  CHECK(read.meta.at("convention") == "paper");
  CHECK(read.meta.at("chi") == "2");
  REQUIRE(read.xs.size() == curve.xs.size());
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    CHECK(read.xs[i] == curve.xs[i]);        // %.17g round-trips exactly
    CHECK(read.values[i] == curve.values[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("finite-n curve header carries n") {
  densities::DensityCurve curve;
  curve.kind = densities::CurveKind::FiniteN;
  curve.n = 64;
  curve.xs = {0.0, 1.0};
  curve.values = {0.0, 0.5};
  std::ostringstream os;
  io::write_curve_csv(os, curve);
  CHECK(os.str().rfind("# curve=finite_n,convention=count,chi=2,n=64\n", 0) == 0);
}

TEST_CASE("points csv round trip with metadata") {
  experiments::ExperimentSummary summary;
  summary.n = 7;
  summary.samples = 3;
  summary.accepted = 2;
  summary.identity_failures = 1;
  summary.ensemble = Ensemble::Spherical;
  summary.master_seed = 99;

  std::vector<experiments::PointRecord> pts;
  pts.push_back({0, critpoints::MorseIndex::Saddle, 0.25,
                 {geometry::Chart::Z, {0.5, -0.25}}, 1e-14});
  pts.push_back({2, critpoints::MorseIndex::Max, 1.5,
                 {geometry::Chart::W, {-0.125, 0.75}}, 2e-13});

  const auto path = temp_file("cvlab_points_test.csv");
  io::write_points_csv_file(path.string(), summary, pts);
  const io::PointsFile read = io::read_points_csv_file(path.string());

  CHECK(read.meta.at("n") == "7");
  CHECK(read.meta.at("samples") == "3");
  CHECK(read.meta.at("accepted") == "2");
  CHECK(read.meta.at("ensemble") == "spherical");
  CHECK(read.meta.at("seed") == "99");
  REQUIRE(read.points.size() == 2);
  CHECK(read.points[0].sample_id == 0);
  CHECK(read.points[0].index == critpoints::MorseIndex::Saddle);
  CHECK(read.points[0].value == 0.25);
  CHECK(read.points[1].location.chart == geometry::Chart::W);
  CHECK(read.points[1].location.coord == std::complex<double>{-0.125, 0.75});
  CHECK(read.points[1].residual == 2e-13);
  std::filesystem::remove(path);
}

TEST_CASE("summary json is deterministic and timing-free") {
  experiments::ExperimentSummary summary;
  summary.n = 5;
  summary.samples = 10;
  summary.accepted = 10;
  summary.master_seed = 4242;
  summary.saddle.total = 31;
  summary.saddle.histogram.bins = 4;
  summary.saddle.histogram.xmax = 2.0;
  summary.saddle.histogram.counts = {1, 2, 3, 4};
  summary.runtime_seconds = 123.456;

  const std::string a = io::summary_json(summary);
  summary.runtime_seconds = 0.001;  // timing must not leak into the bytes
  const std::string b = io::summary_json(summary);
  CHECK(a == b);
  CHECK(a.find("runtime") == std::string::npos);
  CHECK(a.find("\"master_seed\": 4242") != std::string::npos);
  CHECK(a.find("\"counts\": [1, 2, 3, 4]") != std::string::npos);
}

TEST_CASE("manifest json carries the run identity") {
  const std::string m = io::manifest_json("cvlab simulate --n 4", "n=4", "v1.2.3", 77);
  CHECK(m.find("\"command_line\": \"cvlab simulate --n 4\"") != std::string::npos);
  CHECK(m.find("\"build\": \"v1.2.3\"") != std::string::npos);
  CHECK(m.find("\"master_seed\": 77") != std::string::npos);
  CHECK(m.find("timestamp_utc") != std::string::npos);
}

TEST_CASE("format_g17 round trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 6.283185307179586, 4.9e-324, -0.0}) {
    CHECK(std::stod(io::format_g17(v)) == v);
  }
}
