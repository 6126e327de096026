#include "cvlab/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cvlab::io {

namespace {

using experiments::ExperimentSummary;
using experiments::Histogram;
using experiments::PointRecord;

std::map<std::string, std::string> parse_meta(const std::string& line) {
  // "# key=value,key=value"
  std::map<std::string, std::string> meta;
  std::string body = line;
  body.erase(0, body.find_first_not_of("# \t"));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    meta[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return meta;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

void json_histogram(std::ostream& os, const Histogram& h, const char* indent) {
  os << "{\n";
  os << indent << "  \"bins\": " << h.bins << ",\n";
  os << indent << "  \"xmax\": " << format_g17(h.xmax) << ",\n";
  os << indent << "  \"overflow\": " << h.overflow << ",\n";
  os << indent << "  \"counts\": [";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    if (i) os << ", ";
    os << h.counts[i];
  }
  os << "]\n" << indent << "}";
}

void json_index_stats(std::ostream& os, const experiments::IndexStats& st,
                      const char* indent) {
  os << "{\n";
  os << indent << "  \"total\": " << st.total << ",\n";
  os << indent << "  \"count_mean\": " << format_g17(st.count_mean) << ",\n";
  os << indent << "  \"count_variance\": " << format_g17(st.count_variance)
     << ",\n";
  os << indent << "  \"mass\": " << format_g17(st.mass) << ",\n";
  os << indent << "  \"ks_vs_limit\": " << format_g17(st.ks_vs_limit) << ",\n";
  os << indent << "  \"histogram\": ";
  json_histogram(os, st.histogram, (std::string(indent) + "  ").c_str());
  os << "\n" << indent << "}";
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const densities::DensityCurve& curve) {
  os << "# curve=" << densities::curve_name(curve.kind) << ",convention="
     << (curve.convention == densities::Convention::PaperForm ? "paper"
                                                              : "count")
     << ",chi=" << curve.chi;
  if (curve.kind == densities::CurveKind::FiniteN) os << ",n=" << curve.n;
  os << "\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i)
    os << format_g17(curve.xs[i]) << "," << format_g17(curve.values[i]) << "\n";
}

void write_curve_csv_file(const std::string& path,
                          const densities::DensityCurve& curve) {
  auto os = open_out(path);
  write_curve_csv(os, curve);
}

CurveFile read_curve_csv_file(const std::string& path) {
  auto is = open_in(path);
  CurveFile out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto meta = parse_meta(line);
      out.meta.insert(meta.begin(), meta.end());
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    out.xs.push_back(std::stod(line.substr(0, comma)));
    out.values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (out.xs.empty()) throw std::runtime_error("empty curve file: " + path);
  return out;
}

void write_points_csv(std::ostream& os, const ExperimentSummary& summary,
                      const std::vector<PointRecord>& points) {
  os << "# n=" << summary.n << ",samples=" << summary.samples
     << ",accepted=" << summary.accepted
     << ",identity_failures=" << summary.identity_failures
     << ",degenerate_samples=" << summary.degenerate_samples
     << ",ensemble=" << to_string(summary.ensemble)
     << ",seed=" << summary.master_seed << "\n";
  os << "sample_id,index_type,x_value,chart,re,im,residual\n";
  for (const auto& p : points) {
    os << p.sample_id << "," << critpoints::to_string(p.index) << ","
       << format_g17(p.value) << ","
       << (p.location.chart == geometry::Chart::Z ? 'Z' : 'W') << ","
       << format_g17(p.location.coord.real()) << ","
       << format_g17(p.location.coord.imag()) << ","
       << format_g17(p.residual) << "\n";
  }
}

void write_points_csv_file(const std::string& path,
                           const ExperimentSummary& summary,
                           const std::vector<PointRecord>& points) {
  auto os = open_out(path);
  write_points_csv(os, summary, points);
}

PointsFile read_points_csv_file(const std::string& path) {
  auto is = open_in(path);
  PointsFile out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto meta = parse_meta(line);
      out.meta.insert(meta.begin(), meta.end());
      continue;
    }
    if (line.rfind("sample_id,", 0) == 0) continue;  // column header
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw std::runtime_error("malformed points row: " + line);
    PointRecord p;
    p.sample_id = std::stoll(fields[0]);
    p.index = fields[1] == "saddle" ? critpoints::MorseIndex::Saddle
                                    : critpoints::MorseIndex::Max;
    p.value = std::stod(fields[2]);
    p.location.chart = fields[3] == "Z" ? geometry::Chart::Z : geometry::Chart::W;
    p.location.coord = {std::stod(fields[4]), std::stod(fields[5])};
    p.residual = std::stod(fields[6]);
    out.points.push_back(p);
  }
  return out;
}

std::string summary_json(const ExperimentSummary& s) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << s.n << ",\n";
  os << "  \"samples\": " << s.samples << ",\n";
  os << "  \"ensemble\": \"" << to_string(s.ensemble) << "\",\n";
  os << "  \"master_seed\": " << s.master_seed << ",\n";
  os << "  \"accepted\": " << s.accepted << ",\n";
  os << "  \"identity_failures\": " << s.identity_failures << ",\n";
  os << "  \"degenerate_samples\": " << s.degenerate_samples << ",\n";
  os << "  \"saddle\": ";
  json_index_stats(os, s.saddle, "  ");
  os << ",\n  \"max\": ";
  json_index_stats(os, s.maxima, "  ");
  os << "\n}\n";
  return os.str();
}

void write_summary_json_file(const std::string& path,
                             const ExperimentSummary& summary) {
  auto os = open_out(path);
  os << summary_json(summary);
}

std::string manifest_json(const std::string& command_line,
                          const std::string& config_echo,
                          const std::string& build_id,
                          std::uint64_t master_seed) {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  std::ostringstream os;
  os << "{\n";
  os << "  \"command_line\": \"" << command_line << "\",\n";
  os << "  \"config\": \"" << config_echo << "\",\n";
  os << "  \"build\": \"" << build_id << "\",\n";
  os << "  \"master_seed\": " << master_seed << ",\n";
  os << "  \"timestamp_utc\": \"" << stamp << "\"\n";
  os << "}\n";
  return os.str();
}

void write_manifest_file(const std::string& path,
                         const std::string& command_line,
                         const std::string& config_echo,
                         const std::string& build_id,
                         std::uint64_t master_seed) {
  auto os = open_out(path);
  os << manifest_json(command_line, config_echo, build_id, master_seed);
}

}  // namespace cvlab::io
