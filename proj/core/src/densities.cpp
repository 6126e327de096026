#include "cvlab/densities.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "cvlab/errors.hpp"

namespace cvlab::densities {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;
const double kPi3 = kPi * kPi * kPi;

void check_quad(const QuadratureSpec& q) {
  if (!(q.abs_tol > 0.0) || !(q.abs_tol < 1e-6))
    throw std::invalid_argument("QuadratureSpec: abs_tol must be in (0, 1e-6)");
}

// ---- adaptive radial quadrature (GSL), the cross-check route ----------

struct GslEnv {
  GslEnv() { old = gsl_set_error_handler_off(); }
  ~GslEnv() { gsl_set_error_handler(old); }
  gsl_error_handler_t* old;
};

double gsl_call(const std::function<double(double)>& f, double a, double b,
                bool to_infinity, double abs_tol) {
  static GslEnv env;  // keep GSL from aborting the process
  gsl_function gf;
  gf.function = [](double x, void* params) -> double {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
  };
  gf.params = const_cast<void*>(static_cast<const void*>(&f));
  std::unique_ptr<gsl_integration_workspace,
                  decltype(&gsl_integration_workspace_free)>
      ws(gsl_integration_workspace_alloc(512), &gsl_integration_workspace_free);
  double result = 0.0, abserr = 0.0;
  const double eps = abs_tol / 8.0;
  int status;
  if (to_infinity)
    status = gsl_integration_qagiu(&gf, a, eps, 1e-12, 512, ws.get(), &result,
                                   &abserr);
  else
    status = gsl_integration_qag(&gf, a, b, eps, 1e-12, 512,
                                 GSL_INTEG_GAUSS61, ws.get(), &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw ToleranceNotMet("adaptive radial quadrature failed");
  if (abserr > abs_tol)
    throw ToleranceNotMet("adaptive radial quadrature above abs_tol");
  return result;
}

// int_0^inf e^{-beta t} |t - a| weight(t) dt with the absolute value split
// at t = a so each piece is smooth.
double radial_abs_integral(double beta, double a,
                           const std::function<double(double)>& weight,
                           double abs_tol) {
  auto lower = [&](double t) { return std::exp(-beta * t) * (a - t) * weight(t); };
  auto upper = [&](double t) { return std::exp(-beta * t) * (t - a) * weight(t); };
  double v = 0.0;
  if (a > 0.0) v += gsl_call(lower, 0.0, a, false, abs_tol / 2);
  v += gsl_call(upper, a, 0.0, true, abs_tol / 2);
  return v;
}

// ---- elementary incomplete-gamma reductions ----------------------------

// J0(beta,a) = int_0^inf e^{-beta t} |t-a| dt
//            = a/beta - 1/beta^2 + 2 e^{-beta a}/beta^2
double j0_closed(double beta, double a) {
  const double b2 = beta * beta;
  return a / beta - 1.0 / b2 + 2.0 * std::exp(-beta * a) / b2;
}

// J1(beta,a) = int_0^inf e^{-beta t} t |t-a| dt
//            = a/beta^2 - 2/beta^3 + e^{-beta a} (4 + 2 beta a)/beta^3
double j1_closed(double beta, double a) {
  const double b2 = beta * beta, b3 = b2 * beta;
  return a / b2 - 2.0 / b3 + std::exp(-beta * a) * (4.0 + 2.0 * beta * a) / b3;
}

double convention_factor(Convention c) {
  return c == Convention::CountForm ? kPi3 : 1.0;
}

// Bracket of the maxima density, 2x^2/pi - 4/pi^2 + (4/pi^2) e^{-pi x^2/2};
// the expm1 form keeps the x^4/2 small-x behavior at full precision.
double max_bracket(double x) {
  const double x2 = x * x;
  return 2.0 * x2 / kPi + (4.0 / kPi2) * std::expm1(-0.5 * kPi * x2);
}

double saddle_bracket(double x) {
  return (4.0 / kPi2) * std::exp(-1.5 * kPi * x * x);
}

}  // namespace

double dens_max_limit(double x, Convention c) {
  if (x < 0.0) throw std::domain_error("dens_max_limit: x >= 0 required");
  return convention_factor(c) * x * max_bracket(x) * std::exp(-kPi * x * x);
}

double dens_saddle_limit(double x, Convention c) {
  if (x < 0.0) throw std::domain_error("dens_saddle_limit: x >= 0 required");
  return convention_factor(c) * x * saddle_bracket(x) * std::exp(-kPi * x * x);
}

double dens_total_limit(double x, Convention c) {
  return dens_max_limit(x, c) + dens_saddle_limit(x, c);
}

double index_integral_f1k(double x, critpoints::MorseIndex k,
                          const QuadratureSpec& quad) {
  if (x < 0.0) throw std::domain_error("index_integral_f1k: x >= 0 required");
  check_quad(quad);
  if (quad.method == QuadMethod::IncompleteGammaClosedForm)
    return k == critpoints::MorseIndex::Max ? max_bracket(x) : saddle_bracket(x);
  // (2/pi) int e^{-pi|xi|^2} |2|xi|^2 - x^2| dxi over the index domain;
  // dxi = pi dt with t = |xi|^2 and the domain splits at t = x^2/2.
  const double half = 0.5 * x * x;
  if (k == critpoints::MorseIndex::Max) {
    if (half == 0.0) return 0.0;
    auto f = [x](double t) { return std::exp(-kPi * t) * (x * x - 2.0 * t); };
    return 2.0 * gsl_call(f, 0.0, half, false, quad.abs_tol);
  }
  auto f = [x](double t) { return std::exp(-kPi * t) * (2.0 * t - x * x); };
  return 2.0 * gsl_call(f, half, 0.0, true, quad.abs_tol);
}

double second_order(double x, int chi, const QuadratureSpec& quad) {
  if (x < 0.0) throw std::domain_error("second_order: x >= 0 required");
  check_quad(quad);
  if (chi == 0) return 0.0;
  const double a = x * x;
  double radial;  // int_0^inf e^{-pi t/2} (pi t - 2) |t - a| dt
  if (quad.method == QuadMethod::IncompleteGammaClosedForm) {
    // pi J1 - 2 J0 at beta = pi/2, written cancellation-free:
    // (16/pi^2) expm1(-pi a/2) + 8/pi^2 + (8a/pi) e^{-pi a/2}
    radial = (16.0 / kPi2) * std::expm1(-0.5 * kPi * a) + 8.0 / kPi2 +
             (8.0 * a / kPi) * std::exp(-0.5 * kPi * a);
  } else {
    auto weight = [](double t) { return kPi * t - 2.0; };
    radial = radial_abs_integral(0.5 * kPi, a, weight, quad.abs_tol);
  }
  return -(chi * kPi3 * x / 4.0) * std::exp(-kPi * a) * radial;
}

double kac_rice_finite(int n, double x, const QuadratureSpec& quad) {
  if (n < 2) throw std::domain_error("kac_rice_finite: n >= 2 required");
  if (x < 0.0) throw std::domain_error("kac_rice_finite: x >= 0 required");
  check_quad(quad);
  const double dn = n;
  const double beta = kPi * dn / (2.0 * (dn - 1.0));
  const double a = x * x;
  double radial;
  if (quad.method == QuadMethod::IncompleteGammaClosedForm) {
    radial = j0_closed(beta, a);
  } else {
    auto weight = [](double) { return 1.0; };
    radial = radial_abs_integral(beta, a, weight, quad.abs_tol);
  }
  return kPi3 * dn / (dn - 1.0) * x * std::exp(-kPi * a) * radial;
}

double saddle_limit_cdf(double x) {
  return -std::expm1(-1.5 * kPi * x * x);
}

double max_limit_cdf(double x) {
  const double a = kPi * x * x;
  return 1.0 + 3.0 * std::exp(-a) * (1.0 - a) - 4.0 * std::exp(-1.5 * a);
}

std::string curve_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::SaddleLimit: return "saddle";
    case CurveKind::MaxLimit: return "max";
    case CurveKind::TotalLimit: return "total";
    case CurveKind::FiniteN: return "finite_n";
    case CurveKind::SecondOrder: return "finf";
    case CurveKind::IndexIntegral: return "index_integral";
  }
  return "unknown";
}

DensityCurve sample_curve(CurveKind kind, Convention convention, int n,
                          int chi, double xmax, int steps,
                          const QuadratureSpec& quad) {
  if (steps < 1) throw std::invalid_argument("sample_curve: steps >= 1 required");
  if (!(xmax > 0.0)) throw std::invalid_argument("sample_curve: xmax > 0 required");
  DensityCurve curve;
  curve.kind = kind;
  curve.convention = convention;
  curve.n = n;
  curve.chi = chi;
  curve.xs.resize(static_cast<std::size_t>(steps) + 1);
  curve.values.resize(curve.xs.size());
  for (int i = 0; i <= steps; ++i) {
    const double x = xmax * i / steps;
    double v = 0.0;
    switch (kind) {
      case CurveKind::SaddleLimit: v = dens_saddle_limit(x, convention); break;
      case CurveKind::MaxLimit: v = dens_max_limit(x, convention); break;
      case CurveKind::TotalLimit: v = dens_total_limit(x, convention); break;
      case CurveKind::FiniteN: v = kac_rice_finite(n, x, quad); break;
      case CurveKind::SecondOrder: v = second_order(x, chi, quad); break;
      case CurveKind::IndexIntegral:
        v = index_integral_f1k(x, critpoints::MorseIndex::Saddle, quad);
        break;
    }
    curve.xs[static_cast<std::size_t>(i)] = x;
    curve.values[static_cast<std::size_t>(i)] = v;
  }
  return curve;
}

double curve_mass(const DensityCurve& curve) {
  double mass = 0.0;
  for (std::size_t i = 1; i < curve.xs.size(); ++i)
    mass += 0.5 * (curve.values[i] + curve.values[i - 1]) *
            (curve.xs[i] - curve.xs[i - 1]);
  return mass;
}

}  // namespace cvlab::densities
