#include "cvlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cvlab/ensembles.hpp"
#include "cvlab/errors.hpp"
#include "cvlab/rng.hpp"

namespace cvlab::critpoints {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealSliceTol = 1e-8;
constexpr std::uint64_t kRetrySalt = 0x7c31b5a6d28e94f1ULL;

using Poly = std::vector<std::complex<double>>;  // a[k] z^k

double max_abs(const Poly& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

Poly trimmed(Poly p, double rel_tol = 1e-14) {
  const double scale = max_abs(p);
  while (!p.empty() && std::abs(p.back()) <= rel_tol * scale) p.pop_back();
  return p;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void add_scaled(Poly& acc, const Poly& p, std::complex<double> c) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += c * p[i];
}

Poly derivative(const Poly& a) {
  Poly d;
  if (a.size() < 2) return d;
  d.resize(a.size() - 1);
  for (std::size_t j = 1; j < a.size(); ++j)
    d[j - 1] = static_cast<double>(j) * a[j];
  return d;
}

std::complex<double> eval(const Poly& a, std::complex<double> z) {
  std::complex<double> f{0.0, 0.0};
  for (std::size_t k = a.size(); k-- > 0;) f = f * z + a[k];
  return f;
}

std::vector<std::complex<double>> companion_roots(const Poly& p) {
  const auto d = static_cast<Eigen::Index>(p.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i)
    companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

// A few Newton steps on the holomorphic system
//   G1 = (1+zw) s'(z) - n w s(z),  G2 = (1+zw) t'(w) - n z t(w)
// to polish companion-matrix roots.
void polish(const Poly& s, const Poly& t, int n, std::complex<double>& z,
            std::complex<double>& w) {
  const Poly s1 = derivative(s), s2 = derivative(s1);
  const Poly t1 = derivative(t), t2 = derivative(t1);
  const double dn = n;
  for (int iter = 0; iter < 8; ++iter) {
    const std::complex<double> sv = eval(s, z), s1v = eval(s1, z),
                               s2v = eval(s2, z);
    const std::complex<double> tv = eval(t, w), t1v = eval(t1, w),
                               t2v = eval(t2, w);
    const std::complex<double> u = 1.0 + z * w;
    const std::complex<double> g1 = u * s1v - dn * w * sv;
    const std::complex<double> g2 = u * t1v - dn * z * tv;
    const std::complex<double> g1z = u * s2v + (1.0 - dn) * w * s1v;
    const std::complex<double> g1w = z * s1v - dn * sv;
    const std::complex<double> g2z = w * t1v - dn * tv;
    const std::complex<double> g2w = u * t2v + (1.0 - dn) * z * t1v;
    const std::complex<double> det = g1z * g2w - g1w * g2z;
    if (std::abs(det) == 0.0) return;
    const std::complex<double> dz = (-g1 * g2w + g2 * g1w) / det;
    const std::complex<double> dw = (-g2 * g1z + g1 * g2z) / det;
    if (!std::isfinite(std::abs(dz)) || !std::isfinite(std::abs(dw))) return;
    z += dz;
    w += dw;
  }
}

// Companion-matrix roots of the eliminant are only trustworthy near the
// unit disc of the chart the eliminant was built in, so the caller runs
// this once per chart and keeps each chart's disc.
std::vector<CriticalPoint> oracle_one_chart(const Section& unit) {
  const int n = unit.n;
  const Poly a = monomial_coeffs(unit);
  const Poly s1 = derivative(a);

  Poly p(s1.size());  // P = -s'
  for (std::size_t i = 0; i < s1.size(); ++i) p[i] = -s1[i];
  Poly q(a.size());  // Q = z s' - n s = sum (j-n) a_j z^j
  for (std::size_t j = 0; j < a.size(); ++j)
    q[j] = (static_cast<double>(j) - n) * a[j];
  q = trimmed(q);
  if (q.empty() || max_abs(q) == 0.0)
    throw IllConditioned("algebraic_oracle: Q vanishes");

  Poly tbar(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) tbar[j] = std::conj(a[j]);

  // T1 = sum_j j conj(a_j) P^(j-1) Q^(n-j),  T0 = sum_j conj(a_j) P^j Q^(n-j)
  std::vector<Poly> ppow(static_cast<std::size_t>(n) + 1),
      qpow(static_cast<std::size_t>(n) + 1);
  ppow[0] = {1.0};
  qpow[0] = {1.0};
  for (int k = 1; k <= n; ++k) {
    ppow[static_cast<std::size_t>(k)] = mul(ppow[static_cast<std::size_t>(k - 1)], p);
    qpow[static_cast<std::size_t>(k)] = mul(qpow[static_cast<std::size_t>(k - 1)], q);
  }
  Poly t1_poly, t0_poly;
  for (int j = 0; j <= n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    add_scaled(t0_poly, mul(ppow[ju], qpow[static_cast<std::size_t>(n - j)]), tbar[ju]);
    if (j >= 1)
      add_scaled(t1_poly,
                 mul(ppow[ju - 1], qpow[static_cast<std::size_t>(n - j)]),
                 static_cast<double>(j) * tbar[ju]);
  }

  // Eliminant R = s T1 + z T0.  Every root of Q is a spurious root of R
  // (carried along by clearing denominators); those are filtered below by
  // the |Q(z)| cut rather than divided out, which would be unstable when
  // Q's leading coefficient is small.
  Poly rt = mul(a, t1_poly);
  Poly zt0(t0_poly.size() + 1, 0.0);
  for (std::size_t i = 0; i < t0_poly.size(); ++i) zt0[i + 1] = t0_poly[i];
  add_scaled(rt, zt0, 1.0);
  // Leading coefficients below 1e-12 of the coefficient scale are treated
  // as a degree drop: the affected roots sit far outside this chart's disc
  // and are recovered by the opposite-chart run.
  rt = trimmed(rt, 1e-12);
  if (rt.size() < 2) throw IllConditioned("algebraic_oracle: eliminant collapsed");

  const double q_scale = max_abs(q);
  std::vector<CriticalPoint> points;
  for (auto z : companion_roots(rt)) {
    if (std::abs(z) > 1.001) continue;  // the other chart owns this point
    const std::complex<double> qv = eval(q, z);
    if (std::abs(qv) < 1e-10 * q_scale) continue;  // leftover of the Q factor
    std::complex<double> w = eval(p, z) / qv;
    polish(a, tbar, n, z, w);
    if (std::abs(w - std::conj(z)) >= kRealSliceTol) {
      // Near a zero of s the eliminant root sits in a tight cluster with an
      // off-slice solution that can capture the polish; restarting from the
      // slice projection recovers the on-slice root of the pair.
      w = std::conj(z);
      polish(a, tbar, n, z, w);
      if (std::abs(w - std::conj(z)) >= kRealSliceTol) continue;
      if (std::abs(z) > 1.001) continue;
    }

    geometry::ChartPoint loc = geometry::canonicalize({geometry::Chart::Z, z});
    const double value = geometry::hermitian_value(unit, loc);
    if (value <= 1e-10 * std::sqrt((n + 1.0) / kPi)) continue;

    bool dup = false;
    for (const auto& kept : points)
      if (geometry::chordal_distance(loc, kept.location) < kRealSliceTol) {
        dup = true;
        break;
      }
    if (dup) continue;

    const Section rep = loc.chart == geometry::Chart::Z
                            ? unit
                            : geometry::chart_flip(unit);
    const double residual =
        std::abs(gradient_field(rep, loc.coord).v) *
        std::exp(-0.5 * n * geometry::fs_potential(loc.coord)) /
        std::sqrt(n + 1.0);
    if (residual > 1e-10) continue;  // polish left the system unsolved
    const Classification cls = classify(rep, loc.coord);
    CriticalPoint cp;
    cp.location = loc;
    cp.value = value;
    cp.morse_index = cls.morse_index;
    cp.topological_index = cls.topological_index;
    cp.discriminant = cls.discriminant;
    cp.newton_residual = residual;
    points.push_back(cp);
  }
  return points;
}

std::vector<CriticalPoint> oracle_on_unit(const Section& unit) {
  std::vector<CriticalPoint> points = oracle_one_chart(unit);
  for (CriticalPoint cp : oracle_one_chart(geometry::chart_flip(unit))) {
    cp.location.chart = cp.location.chart == geometry::Chart::Z
                            ? geometry::Chart::W
                            : geometry::Chart::Z;
    bool dup = false;
    for (const auto& kept : points)
      if (geometry::chordal_distance(cp.location, kept.location) <
          kRealSliceTol) {
        dup = true;
        break;
      }
    if (!dup) points.push_back(cp);
  }
  std::sort(points.begin(), points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              return a.value < b.value;
            });
  return points;
}

}  // namespace

std::vector<CriticalPoint> algebraic_oracle(const Section& s) {
  if (s.n < 1 || s.n > 8)
    throw std::invalid_argument("algebraic_oracle: 1 <= n <= 8 required");
  const double norm = ensembles::l2_norm(s);
  if (norm == 0.0) throw std::invalid_argument("algebraic_oracle: zero section");
  auto points = oracle_on_unit(ensembles::scaled(s, 1.0 / norm));
  for (auto& cp : points) cp.value *= norm;
  return points;
}

std::vector<CriticalPoint> algebraic_oracle_robust(const Section& s,
                                                   int max_retries) {
  try {
    return algebraic_oracle(s);
  } catch (const IllConditioned&) {
  }
  rng::Stream stream(rng::mix64(s.seed_fingerprint, kRetrySalt));
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::complex<double> alpha, beta;
    ensembles::random_su2(stream, alpha, beta);
    try {
      auto rotated = algebraic_oracle(ensembles::su2_rotate(s, alpha, beta));
      // Map locations back through the rotation; values are invariant.
      for (auto& cp : rotated) {
        const bool at_infinity =
            cp.location.chart == geometry::Chart::W &&
            cp.location.coord == std::complex<double>{0.0, 0.0};
        geometry::ChartPoint back;
        if (at_infinity) {
          // phi(infinity) = -alpha/conj(beta)
          back = beta == std::complex<double>{0.0, 0.0}
                     ? geometry::ChartPoint{geometry::Chart::W, {0.0, 0.0}}
                     : geometry::ChartPoint{geometry::Chart::Z,
                                            -alpha / std::conj(beta)};
        } else {
          const std::complex<double> z = cp.location.chart == geometry::Chart::Z
                                             ? cp.location.coord
                                             : 1.0 / cp.location.coord;
          back = {geometry::Chart::Z, ensembles::mobius_image(z, alpha, beta)};
        }
        cp.location = geometry::canonicalize(back);
      }
      std::sort(rotated.begin(), rotated.end(),
                [](const CriticalPoint& a, const CriticalPoint& b) {
                  return a.value < b.value;
                });
      return rotated;
    } catch (const IllConditioned&) {
    }
  }
  throw IllConditioned("algebraic_oracle_robust: retries exhausted");
}

double pairing_distance(const std::vector<CriticalPoint>& a,
                        const std::vector<CriticalPoint>& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return inf;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& pa : a) {
    double best = inf;
    std::size_t best_j = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || b[j].morse_index != pa.morse_index) continue;
      const double d = geometry::chordal_distance(pa.location, b[j].location);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best_j == b.size()) return inf;
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace cvlab::critpoints
