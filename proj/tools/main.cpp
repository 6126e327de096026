// cvlab: theory curves, Monte Carlo simulation, and cross-checks for
// critical values of random sections on the sphere.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure,
// 4 acceptance-threshold breach.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvlab/densities.hpp"
#include "cvlab/ensembles.hpp"
#include "cvlab/errors.hpp"
#include "cvlab/experiments.hpp"
#include "cvlab/io.hpp"
#include "cvlab/oracle.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitThreshold = 4;

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

void write_manifest_for(const std::string& data_path,
                        const std::string& command_line,
                        const std::string& config_echo,
                        std::uint64_t seed) {
  cvlab::io::write_manifest_file(data_path + ".manifest.json", command_line,
                                 config_echo, CVLAB_GIT_DESCRIBE, seed);
}

// Piecewise-linear CDF built from a sampled density curve.
struct CurveCdf {
  std::vector<double> xs, cum;
  double mass = 0.0;

  explicit CurveCdf(const cvlab::io::CurveFile& curve) : xs(curve.xs) {
    cum.resize(xs.size(), 0.0);
    for (std::size_t i = 1; i < xs.size(); ++i)
      cum[i] = cum[i - 1] + 0.5 * (curve.values[i] + curve.values[i - 1]) *
                                (xs[i] - xs[i - 1]);
    mass = cum.back();
  }

  double operator()(double x) const {
    if (mass <= 0.0) return 0.0;
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return 1.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (cum[i - 1] + t * (cum[i] - cum[i - 1])) / mass;
  }
};

struct IndexReport {
  std::string name;
  bool present = false;
  std::size_t count = 0;
  double ks = 0.0;
  double mass_emp = 0.0;
  double mass_theory = 0.0;
  double mass_rel_err = 0.0;
  double mass_tol = 0.0;
  bool pass = true;
};

int cmd_theory(const std::string& curve, const std::string& convention,
               int chi, double xmax, int steps, const std::string& out,
               const std::string& command_line) {
  using namespace cvlab::densities;
  CurveKind kind;
  if (curve == "saddle") kind = CurveKind::SaddleLimit;
  else if (curve == "max") kind = CurveKind::MaxLimit;
  else if (curve == "total") kind = CurveKind::TotalLimit;
  else if (curve == "finf") kind = CurveKind::SecondOrder;
  else {
    std::cerr << "theory: unknown --curve '" << curve << "'\n";
    return kExitUsage;
  }
  if (kind == CurveKind::SecondOrder && convention == "paper") {
    std::cerr << "theory: finf has no paper-form normalization\n";
    return kExitUsage;
  }
  const Convention conv =
      convention == "paper" ? Convention::PaperForm : Convention::CountForm;
  DensityCurve data = sample_curve(kind, conv, 0, chi, xmax, steps);
  cvlab::io::write_curve_csv_file(out, data);
  std::ostringstream echo;
  echo << "curve=" << curve << " convention=" << convention << " chi=" << chi
       << " xmax=" << xmax << " steps=" << steps;
  write_manifest_for(out, command_line, echo.str(), 0);
  return 0;
}

int cmd_kacrice(int n, double xmax, int steps, const std::string& out,
                const std::string& command_line) {
  using namespace cvlab::densities;
  DensityCurve data =
      sample_curve(CurveKind::FiniteN, Convention::CountForm, n, 2, xmax, steps);
  cvlab::io::write_curve_csv_file(out, data);
  std::ostringstream echo;
  echo << "n=" << n << " xmax=" << xmax << " steps=" << steps;
  write_manifest_for(out, command_line, echo.str(), 0);
  return 0;
}

int cmd_simulate(int n, int samples, const std::string& ensemble,
                 std::uint64_t seed, unsigned threads, const std::string& out,
                 const std::string& summary_path,
                 const std::string& command_line) {
  cvlab::experiments::ExperimentConfig cfg;
  cfg.n = n;
  cfg.samples = samples;
  cfg.ensemble = ensemble == "spherical" ? cvlab::Ensemble::Spherical
                                         : cvlab::Ensemble::Gaussian;
  cfg.master_seed = seed;
  cfg.threads = threads;
  const auto result = cvlab::experiments::run_experiment(cfg);
  cvlab::io::write_points_csv_file(out, result.summary, result.points);
  cvlab::io::write_summary_json_file(summary_path, result.summary);
  std::ostringstream echo;
  echo << "n=" << n << " samples=" << samples << " ensemble=" << ensemble
       << " seed=" << seed;
  write_manifest_for(out, command_line, echo.str(), seed);
  std::cerr << "simulate: " << result.points.size() << " points from "
            << result.summary.accepted << "/" << samples << " samples in "
            << result.summary.runtime_seconds << " s\n";
  if (result.summary.accepted == 0) {
    std::cerr << "simulate: no accepted samples\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_compare(const std::string& sim, const std::string& theory,
                const std::string& report, const std::string& command_line) {
  using cvlab::critpoints::MorseIndex;
  const auto points = cvlab::io::read_points_csv_file(sim);
  const auto curve = cvlab::io::read_curve_csv_file(theory);
  const CurveCdf cdf(curve);

  const int n = std::stoi(points.meta.at("n"));
  const int accepted = std::stoi(points.meta.at("accepted"));
  if (accepted <= 0) {
    std::cerr << "compare: simulation has no accepted samples\n";
    return kExitNumerical;
  }
  const std::string curve_name =
      curve.meta.count("curve") ? curve.meta.at("curve") : "total";

  std::vector<double> saddle_vals, max_vals, all_vals;
  for (const auto& p : points.points) {
    all_vals.push_back(p.value);
    (p.index == MorseIndex::Saddle ? saddle_vals : max_vals).push_back(p.value);
  }

  std::vector<IndexReport> reports;
  auto evaluate = [&](const std::string& name, std::vector<double> vals,
                      double mass_tol) {
    IndexReport rep;
    rep.name = name;
    rep.present = true;
    rep.count = vals.size();
    rep.mass_emp = static_cast<double>(vals.size()) / (accepted * double(n));
    rep.mass_theory = cdf.mass;
    rep.mass_rel_err =
        cdf.mass > 0 ? std::abs(rep.mass_emp - cdf.mass) / cdf.mass : 1.0;
    rep.mass_tol = mass_tol;
    rep.ks = vals.size() >= 10
                 ? cvlab::experiments::ks_statistic(
                       std::move(vals), [&](double x) { return cdf(x); })
                 : 1.0;
    rep.pass = rep.ks < 0.05 && rep.mass_rel_err < mass_tol;
    reports.push_back(rep);
  };

  if (curve_name == "saddle") {
    evaluate("saddle", std::move(saddle_vals), 0.03);
  } else if (curve_name == "max") {
    evaluate("max", std::move(max_vals), 0.06);
  } else {
    evaluate("total", std::move(all_vals), 0.03);
  }

  bool overall = true;
  for (const auto& r : reports) overall = overall && r.pass;

  std::ofstream os(report);
  if (!os) {
    std::cerr << "compare: cannot write " << report << "\n";
    return kExitNumerical;
  }
  os << "{\n  \"sim\": \"" << sim << "\",\n  \"theory\": \"" << theory
     << "\",\n  \"curve\": \"" << curve_name << "\",\n  \"indices\": [\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << "    {\"index\": \"" << r.name << "\", \"count\": " << r.count
       << ", \"ks\": " << cvlab::io::format_g17(r.ks)
       << ", \"mass_empirical\": " << cvlab::io::format_g17(r.mass_emp)
       << ", \"mass_theory\": " << cvlab::io::format_g17(r.mass_theory)
       << ", \"mass_rel_err\": " << cvlab::io::format_g17(r.mass_rel_err)
       << ", \"ks_threshold\": 0.05"
       << ", \"mass_tolerance\": " << cvlab::io::format_g17(r.mass_tol)
       << ", \"pass\": " << (r.pass ? "true" : "false") << "}"
       << (i + 1 < reports.size() ? ",\n" : "\n");
  }
  os << "  ],\n  \"pass\": " << (overall ? "true" : "false") << "\n}\n";
  os.close();
  write_manifest_for(report, command_line, "curve=" + curve_name, 0);

  for (const auto& r : reports)
    std::cerr << "compare[" << r.name << "]: ks=" << r.ks
              << " mass_rel_err=" << r.mass_rel_err
              << (r.pass ? " PASS" : " FAIL") << "\n";
  return overall ? 0 : kExitThreshold;
}

int cmd_oracle(int n, int samples, std::uint64_t seed) {
  using namespace cvlab;
  int mismatches = 0;
  for (int i = 0; i < samples; ++i) {
    const Section s = ensembles::draw_section(n, Ensemble::Gaussian, seed, i);
    const auto finder = critpoints::find_critical_points(s);
    const auto oracle = critpoints::algebraic_oracle_robust(s);
    const double d = critpoints::pairing_distance(finder.points, oracle);
    if (!(d < 1e-8)) {
      ++mismatches;
      std::cerr << "oracle: sample " << i << " newton=" << finder.points.size()
                << " resultant=" << oracle.size() << " pairing="
                << d << "\n";
    }
  }
  std::cerr << "oracle: " << (samples - mismatches) << "/" << samples
            << " samples matched\n";
  return mismatches == 0 ? 0 : kExitThreshold;
}

int cmd_plot(const std::string& curves, const std::string& out,
             const std::string& command_line) {
  std::vector<std::string> files;
  std::stringstream ss(curves);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) files.push_back(item);
  }
  if (files.empty()) {
    std::cerr << "plot: --curves needs at least one CSV\n";
    return kExitUsage;
  }
  std::vector<std::string> titles;
  for (const auto& f : files) {
    const auto curve = cvlab::io::read_curve_csv_file(f);
    std::string title = curve.meta.count("curve") ? curve.meta.at("curve") : f;
    if (curve.meta.count("n")) title += ", n=" + curve.meta.at("n");
    titles.push_back(title);
  }
  std::ofstream os(out);
  if (!os) {
    std::cerr << "plot: cannot write " << out << "\n";
    return kExitNumerical;
  }
  os << "# gnuplot script generated by cvlab plot\n";
  os << "set terminal pngcairo size " << 560 * files.size() << ",420\n";
  os << "set output '" << out << ".png'\n";
  os << "set datafile separator ','\n";
  os << "set xlabel 'x'\n";
  os << "set style data lines\n";
  os << "set multiplot layout 1," << files.size() << "\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    os << "set title '" << titles[i] << "'\n";
    os << "plot '" << files[i] << "' using 1:2 notitle lw 2\n";
  }
  os << "unset multiplot\n";
  os.close();
  write_manifest_for(out, command_line, "curves=" + curves, 0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command_line = join_args(argc, argv);

  CLI::App app{"critical values of random sections on the sphere"};
  app.require_subcommand(1);

  // theory
  std::string th_curve, th_conv = "count", th_out;
  int th_chi = 2, th_steps = 400;
  double th_xmax = 2.5;
  auto* theory = app.add_subcommand("theory", "sample a limit/second-order curve");
  theory->add_option("--curve", th_curve, "saddle|max|total|finf")->required();
  theory->add_option("--convention", th_conv, "paper|count")
      ->check(CLI::IsMember({"paper", "count"}));
  theory->add_option("--chi", th_chi, "Euler characteristic (finf)");
  theory->add_option("--xmax", th_xmax, "grid end");
  theory->add_option("--steps", th_steps, "grid intervals");
  theory->add_option("--out", th_out, "output CSV")->required();

  // kacrice
  int kr_n = 0, kr_steps = 400;
  double kr_xmax = 2.5;
  std::string kr_out;
  auto* kacrice = app.add_subcommand("kacrice", "finite-n expected density");
  kacrice->add_option("--n", kr_n, "degree (>= 2)")->required();
  kacrice->add_option("--xmax", kr_xmax, "grid end");
  kacrice->add_option("--steps", kr_steps, "grid intervals");
  kacrice->add_option("--out", kr_out, "output CSV")->required();

  // simulate
  int sim_n = 0, sim_samples = 0;
  std::string sim_ensemble = "gaussian", sim_out, sim_summary;
  std::uint64_t sim_seed = 42;
  unsigned sim_threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo critical points");
  simulate->add_option("--n", sim_n, "degree (>= 2)")->required();
  simulate->add_option("--samples", sim_samples, "number of sections")->required();
  simulate->add_option("--ensemble", sim_ensemble, "gaussian|spherical")
      ->check(CLI::IsMember({"gaussian", "spherical"}));
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--threads", sim_threads, "worker cap (0 = auto)");
  simulate->add_option("--out", sim_out, "points CSV")->required();
  simulate->add_option("--summary", sim_summary, "summary JSON")->required();

  // compare
  std::string cp_sim, cp_theory, cp_report;
  auto* compare = app.add_subcommand("compare", "simulation vs theory curve");
  compare->add_option("--sim", cp_sim, "points CSV from simulate")->required();
  compare->add_option("--theory", cp_theory, "curve CSV")->required();
  compare->add_option("--report", cp_report, "report JSON")->required();

  // oracle
  int or_n = 0, or_samples = 0;
  std::uint64_t or_seed = 7;
  auto* oracle = app.add_subcommand("oracle", "newton vs resultant cross-check");
  oracle->add_option("--n", or_n, "degree (1..8)")->required();
  oracle->add_option("--samples", or_samples, "number of sections")->required();
  oracle->add_option("--seed", or_seed, "master seed");

  // plot
  std::string pl_curves, pl_out;
  auto* plot = app.add_subcommand("plot", "emit a gnuplot script for curves");
  plot->add_option("--curves", pl_curves, "comma-separated curve CSVs")->required();
  plot->add_option("--out", pl_out, "script path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (theory->parsed()) {
      if (th_steps < 1 || th_xmax <= 0.0) {
        std::cerr << "theory: --steps and --xmax must be positive\n";
        return kExitUsage;
      }
      return cmd_theory(th_curve, th_conv, th_chi, th_xmax, th_steps, th_out,
                        command_line);
    }
    if (kacrice->parsed()) {
      if (kr_n < 2 || kr_steps < 1 || kr_xmax <= 0.0) {
        std::cerr << "kacrice: need --n >= 2 and positive grid\n";
        return kExitUsage;
      }
      return cmd_kacrice(kr_n, kr_xmax, kr_steps, kr_out, command_line);
    }
    if (simulate->parsed()) {
      if (sim_n < 2 || sim_samples < 1) {
        std::cerr << "simulate: need --n >= 2 and --samples >= 1\n";
        return kExitUsage;
      }
      return cmd_simulate(sim_n, sim_samples, sim_ensemble, sim_seed,
                          sim_threads, sim_out, sim_summary, command_line);
    }
    if (compare->parsed())
      return cmd_compare(cp_sim, cp_theory, cp_report, command_line);
    if (oracle->parsed()) {
      if (or_n < 1 || or_n > 8 || or_samples < 1) {
        std::cerr << "oracle: need 1 <= --n <= 8 and --samples >= 1\n";
        return kExitUsage;
      }
      return cmd_oracle(or_n, or_samples, or_seed);
    }
    if (plot->parsed()) return cmd_plot(pl_curves, pl_out, command_line);
  } catch (const cvlab::ToleranceNotMet& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const cvlab::IllConditioned& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
