#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cvlab/densities.hpp"
#include "cvlab/experiments.hpp"

namespace cvlab::io {

// Theory curve CSV: one comment header
//   # curve=<name>,convention=<paper|count>,chi=<chi>[,n=<n>]
// then `x,value` rows with 17 significant digits.
void write_curve_csv(std::ostream& os, const densities::DensityCurve& curve);
void write_curve_csv_file(const std::string& path,
                          const densities::DensityCurve& curve);

struct CurveFile {
  std::map<std::string, std::string> meta;
  std::vector<double> xs;
  std::vector<double> values;
};
CurveFile read_curve_csv_file(const std::string& path);

// Simulation points CSV: self-describing comment header with the run
// metadata, a column header row, then one row per critical point:
//   sample_id,index_type,x_value,chart,re,im,residual
void write_points_csv(std::ostream& os, const experiments::ExperimentSummary& summary,
                      const std::vector<experiments::PointRecord>& points);
void write_points_csv_file(const std::string& path,
                           const experiments::ExperimentSummary& summary,
                           const std::vector<experiments::PointRecord>& points);

struct PointsFile {
  std::map<std::string, std::string> meta;  // n, samples, accepted, ...
  std::vector<experiments::PointRecord> points;
};
PointsFile read_points_csv_file(const std::string& path);

// Deterministic JSON rendering of a summary (fixed key order, no timing
// fields), so equal seeds give byte-identical files.
std::string summary_json(const experiments::ExperimentSummary& summary);
void write_summary_json_file(const std::string& path,
                             const experiments::ExperimentSummary& summary);

// Sidecar run manifest (command line, config echo, build id, seed, wall
// clock).  Kept out of the data files so those stay reproducible.
std::string manifest_json(const std::string& command_line,
                          const std::string& config_echo,
                          const std::string& build_id,
                          std::uint64_t master_seed);
void write_manifest_file(const std::string& path,
                         const std::string& command_line,
                         const std::string& config_echo,
                         const std::string& build_id,
                         std::uint64_t master_seed);

std::string format_g17(double v);

}  // namespace cvlab::io
