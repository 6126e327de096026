#include "cvlab/critpoints.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cvlab/ensembles.hpp"
#include "cvlab/rng.hpp"

namespace cvlab::critpoints {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kStartSalt = 0x5b8d2c9a11f4e073ULL;

using geometry::Chart;
using geometry::ChartPoint;

GradientField gradient_from_jet(int n, std::complex<double> z, const Jet2& jet) {
  const double r2 = std::norm(z);
  const std::complex<double> zbar = std::conj(z);
  GradientField g;
  g.v = (1.0 + r2) * jet.df - static_cast<double>(n) * zbar * jet.f;
  g.vz = (1.0 + r2) * jet.d2f + (1.0 - static_cast<double>(n)) * zbar * jet.df;
  g.vzbar = z * jet.df - static_cast<double>(n) * jet.f;
  return g;
}

// Invariant gradient norm |V| (1+|z|^2)^(-n/2), scaled by sqrt(n+1) so the
// tolerance is degree-independent for a unit-L2 section.
double invariant_residual(int n, std::complex<double> z,
                          std::complex<double> v) {
  const double log_scale = -0.5 * n * std::log1p(std::norm(z)) -
                           0.5 * std::log(static_cast<double>(n) + 1.0);
  return std::abs(v) * std::exp(log_scale);
}

std::vector<std::complex<double>> derivative_coeffs(
    const std::vector<std::complex<double>>& a) {
  std::vector<std::complex<double>> d;
  if (a.size() < 2) return d;
  d.resize(a.size() - 1);
  for (std::size_t j = 1; j < a.size(); ++j)
    d[j - 1] = static_cast<double>(j) * a[j];
  return d;
}

std::vector<std::complex<double>> poly_roots(
    std::vector<std::complex<double>> p) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  while (!p.empty() && std::abs(p.back()) <= 1e-14 * scale) p.pop_back();
  if (p.size() < 2) return {};
  const auto d = static_cast<Eigen::Index>(p.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i)
    companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

// Unit-sphere embedding, used to synthesize seed points between zeros.
using Vec3 = std::array<double, 3>;

Vec3 embed(const ChartPoint& p) {
  const std::complex<double> a = p.chart == Chart::Z
                                     ? std::complex<double>{1.0, 0.0}
                                     : p.coord;
  const std::complex<double> b = p.chart == Chart::Z
                                     ? p.coord
                                     : std::complex<double>{1.0, 0.0};
  const double n2 = std::norm(a) + std::norm(b);
  const std::complex<double> ab = std::conj(a) * b;
  return {2.0 * ab.real() / n2, 2.0 * ab.imag() / n2,
          (std::norm(a) - std::norm(b)) / n2};
}

ChartPoint unembed(Vec3 v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (r == 0.0) return {Chart::Z, {0.0, 0.0}};
  for (auto& c : v) c /= r;
  if (v[2] > -0.5)
    return geometry::canonicalize(
        {Chart::Z, {v[0] / (1.0 + v[2]), v[1] / (1.0 + v[2])}});
  return geometry::canonicalize(
      {Chart::W, {v[0] / (1.0 - v[2]), -v[1] / (1.0 - v[2])}});
}

// One Fubini-Study uniform point, already canonical.
ChartPoint fs_uniform_point(rng::Stream& stream) {
  const double u = stream.next_unit_open();
  const double theta = 2.0 * kPi * stream.next_unit_open();
  const std::complex<double> dir{std::cos(theta), std::sin(theta)};
  if (u <= 0.5) return {Chart::Z, std::sqrt(u / (1.0 - u)) * dir};
  return {Chart::W, std::sqrt((1.0 - u) / u) * dir};
}

struct NewtonOutcome {
  bool converged = false;
  std::complex<double> z{0.0, 0.0};
  double residual = 0.0;
  double last_step = 0.0;
};

// Newton on the logarithmic gradient F = s'/s - n zbar/(1+|z|^2), whose
// Wirtinger data are exactly the classifier's Q and Lambda.  The poles of
// F at zeros of s repel iterates into the critical cells, which gives far
// better basin coverage than iterating on V directly.  Convergence is
// declared on the invariant residual of V, then the point is polished
// until the step stalls so dedup sees machine-accurate positions.
NewtonOutcome newton_log_field(int n,
                               const std::vector<std::complex<double>>& a,
                               std::complex<double> z0,
                               const FinderOptions& opts) {
  NewtonOutcome out;
  std::complex<double> z = z0;
  double last_step = 0.0;
  bool inside_tol = false;
  int polish_left = 6;
  const double dn = n;
  for (int iter = 0; iter < opts.max_iters + 6; ++iter) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return out;
    if (std::abs(z) > 3.0) return out;  // basin belongs to the other chart
    const Jet2 jet = eval_jet2(a, z);
    const GradientField g = gradient_from_jet(n, z, jet);
    const double res = invariant_residual(n, z, g.v);
    if (res < opts.newton_tol) inside_tol = true;
    if (inside_tol) {
      out.converged = true;
      out.z = z;
      out.residual = res;
      out.last_step = last_step;
      if (last_step < 1e-13 * (1.0 + std::abs(z)) || polish_left-- <= 0)
        return out;
    } else if (iter >= opts.max_iters) {
      return out;
    }
    if (jet.f == std::complex<double>{0.0, 0.0}) return out;
    const double opz = 1.0 + std::norm(z);
    const std::complex<double> lg = jet.df / jet.f;
    const std::complex<double> f =
        lg - dn * std::conj(z) / opz;
    const std::complex<double> q =
        jet.d2f / jet.f - lg * lg +
        dn * std::conj(z) * std::conj(z) / (opz * opz);
    const double lam = -dn / (opz * opz);
    const double det = std::norm(q) - lam * lam;
    if (det == 0.0 || !std::isfinite(det)) return out;
    const std::complex<double> delta =
        (lam * std::conj(f) - std::conj(q) * f) / det;
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag()))
      return out;
    z += delta;
    last_step = std::abs(delta);
  }
  return out;
}

}  // namespace

const char* to_string(MorseIndex k) {
  return k == MorseIndex::Saddle ? "saddle" : "max";
}

GradientField gradient_field(const Section& s, std::complex<double> z) {
  const auto a = monomial_coeffs(s);
  return gradient_from_jet(s.n, z, eval_jet2(a, z));
}

Classification classify(const Section& s, std::complex<double> z,
                        double degeneracy_band) {
  const auto a = monomial_coeffs(s);
  const Jet2 jet = eval_jet2(a, z);
  if (jet.f == std::complex<double>{0.0, 0.0})
    throw std::invalid_argument("classify: s(z) = 0 is not a critical point");
  const double n = static_cast<double>(s.n);
  const double denom = 1.0 + std::norm(z);
  const std::complex<double> logd1 = jet.df / jet.f;
  const std::complex<double> q =
      jet.d2f / jet.f - logd1 * logd1 +
      n * std::conj(z) * std::conj(z) / (denom * denom);
  const double lambda = n / (denom * denom);  // |Lambda|; Lambda itself < 0
  const double aq = std::abs(q);

  Classification cls;
  cls.discriminant = aq * aq - lambda * lambda;
  cls.morse_index = aq > lambda ? MorseIndex::Saddle : MorseIndex::Max;
  const GradientField g = gradient_from_jet(s.n, z, jet);
  const double det = std::norm(g.vz) - std::norm(g.vzbar);
  cls.topological_index = det > 0.0 ? 1 : -1;
  // The Jacobian sign must reproduce the Hessian classification; treat a
  // mismatch like a band hit so the sample gets excluded, not misfiled.
  const bool sign_consistent =
      (cls.morse_index == MorseIndex::Saddle) == (cls.topological_index == 1);
  cls.degenerate = std::abs(aq - lambda) <
                       degeneracy_band * std::max({aq, lambda, 1.0}) ||
                   !sign_consistent;
  return cls;
}

FinderResult find_critical_points(const Section& s, const FinderOptions& opts) {
  if (s.n < 1) throw std::invalid_argument("find_critical_points: n >= 1 required");
  const double norm = ensembles::l2_norm(s);
  if (norm == 0.0)
    throw std::invalid_argument("find_critical_points: zero section");
  if (opts.starts_per_degree <= 0 || opts.newton_tol <= 0 ||
      opts.max_iters <= 0 || opts.dedup_radius <= 0 || opts.degeneracy_band <= 0)
    throw std::invalid_argument("find_critical_points: options must be positive");

  const Section unit = ensembles::scaled(s, 1.0 / norm);
  const Section unit_w = geometry::chart_flip(unit);
  const std::array<std::vector<std::complex<double>>, 2> rep = {
      monomial_coeffs(unit), monomial_coeffs(unit_w)};

  const int n = s.n;
  // Nonvanishing threshold: sup |s|_{h^n} <= ||s|| sqrt((n+1)/pi), so this
  // cut only ever removes (near-)zeros of s.
  const double zero_cut = 1e-10 * std::sqrt((n + 1.0) / kPi);

  rng::Stream starts(rng::mix64(s.seed_fingerprint, kStartSalt));

  struct Accepted {
    ChartPoint loc;
    double value = 0.0;
    double residual = 0.0;
    double last_step = 0.0;
    Classification cls;
  };
  std::vector<Accepted> pts;
  int starts_used = 0;

  auto run_start = [&](const ChartPoint& p) {
    ++starts_used;
    const std::size_t ci = p.chart == Chart::Z ? 0 : 1;
    const NewtonOutcome out = newton_log_field(n, rep[ci], p.coord, opts);
    if (!out.converged) return;
    ChartPoint loc = geometry::canonicalize(ChartPoint{p.chart, out.z});
    const double value = geometry::hermitian_value(unit, loc);
    if (value <= zero_cut) return;  // zero of s, not a critical point
    for (auto& kept : pts) {
      if (geometry::chordal_distance(loc, kept.loc) < opts.dedup_radius) {
        if (out.residual < kept.residual) {
          kept.loc = loc;
          kept.value = value;
          kept.residual = out.residual;
          kept.last_step = out.last_step;
        }
        return;
      }
    }
    pts.push_back({loc, value, out.residual, out.last_step, {}});
  };

  auto run_uniform_starts = [&](int count) {
    for (int k = 0; k < count; ++k) run_start(fs_uniform_point(starts));
  };

  // Roots of s' in each chart: cheap cover of near-extremal basins.
  auto run_derivative_seeds = [&]() {
    for (std::size_t ci = 0; ci < 2; ++ci)
      for (const auto& r : poly_roots(derivative_coeffs(rep[ci])))
        run_start(geometry::canonicalize(
            ChartPoint{ci == 0 ? Chart::Z : Chart::W, r}));
  };

  // log|s|^2_{h^n} is the potential of the zero configuration against the
  // uniform background, so saddles sit between nearby zeros and maxima in
  // the holes next to them.  Seed the midpoint of each close zero pair
  // plus the two points perpendicular to it at half the pair separation.
  auto run_zero_structure_seeds = [&]() {
    std::vector<ChartPoint> zeros;
    for (const auto& r : poly_roots(rep[0]))
      if (std::abs(r) <= 1.0) zeros.push_back({Chart::Z, r});
    for (const auto& r : poly_roots(rep[1]))
      if (std::abs(r) < 1.0) zeros.push_back({Chart::W, r});
    const std::size_t neighbors = 6;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      std::vector<std::pair<double, std::size_t>> dist;
      dist.reserve(zeros.size());
      for (std::size_t j = 0; j < zeros.size(); ++j)
        if (j != i)
          dist.emplace_back(geometry::chordal_distance(zeros[i], zeros[j]), j);
      std::sort(dist.begin(), dist.end());
      const Vec3 a = embed(zeros[i]);
      for (std::size_t k = 0; k < std::min(neighbors, dist.size()); ++k) {
        const Vec3 b = embed(zeros[dist[k].second]);
        const Vec3 mid{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
        run_start(unembed(mid));
        const Vec3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
        Vec3 c{mid[1] * d[2] - mid[2] * d[1], mid[2] * d[0] - mid[0] * d[2],
               mid[0] * d[1] - mid[1] * d[0]};
        const double cn = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        const double half_sep =
            0.5 * std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (cn < 1e-12) continue;
        for (const double sign : {1.0, -1.0}) {
          const double f = sign * half_sep / cn;
          run_start(unembed({0.5 * mid[0] + f * c[0], 0.5 * mid[1] + f * c[1],
                             0.5 * mid[2] + f * c[2]}));
        }
      }
    }
  };

  auto classify_all = [&]() {
    for (auto& p : pts) {
      const Section& chart_rep = p.loc.chart == Chart::Z ? unit : unit_w;
      p.cls = classify(chart_rep, p.loc.coord, opts.degeneracy_band);
    }
  };

  auto identity_holds = [&]() {
    int s_count = 0, m_count = 0;
    for (const auto& p : pts)
      (p.cls.morse_index == MorseIndex::Saddle ? s_count : m_count)++;
    return m_count >= 1 && s_count - m_count == n - 2;
  };

  const int base_starts =
      static_cast<int>(std::ceil(opts.starts_per_degree * n));
  run_uniform_starts(base_starts);
  run_derivative_seeds();
  run_zero_structure_seeds();
  classify_all();

  FinderResult result;
  if (!identity_holds()) {
    result.retried = true;
    run_uniform_starts(4 * base_starts);
    classify_all();
  }

  result.complete = identity_holds();
  result.starts_used = starts_used;
  for (const auto& p : pts) {
    CriticalPoint cp;
    cp.location = p.loc;
    cp.value = p.value * norm;  // undo the unit-L2 scaling
    cp.morse_index = p.cls.morse_index;
    cp.topological_index = p.cls.topological_index;
    cp.discriminant = p.cls.discriminant;
    cp.newton_residual = p.residual;
    result.points.push_back(cp);
    (cp.morse_index == MorseIndex::Saddle ? result.saddles : result.maxima)++;
    result.degenerate = result.degenerate || p.cls.degenerate;
  }
  std::sort(result.points.begin(), result.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.location.coord.real() != b.location.coord.real())
                return a.location.coord.real() < b.location.coord.real();
              return a.location.coord.imag() < b.location.coord.imag();
            });
  return result;
}

}  // namespace cvlab::critpoints
