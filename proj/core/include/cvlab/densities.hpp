#pragma once

#include <string>
#include <vector>

#include "cvlab/critpoints.hpp"

namespace cvlab::densities {

// PaperForm is the bare closed form of the limit densities; CountForm is
// pi^3 times that, normalized so that the total mass equals the expected
// number of critical points over n (4/3 saddles + 1/3 maxima).  Monte
// Carlo comparisons always use CountForm.
enum class Convention { PaperForm, CountForm };

enum class QuadMethod { IncompleteGammaClosedForm, AdaptiveRadial };

struct QuadratureSpec {
  double abs_tol = 1e-11;  // must be positive and < 1e-6
  QuadMethod method = QuadMethod::IncompleteGammaClosedForm;
};

// Limit density of critical values at local maxima:
//   x (2x^2/pi - 4/pi^2 + (4/pi^2) e^{-pi x^2/2}) e^{-pi x^2}   [PaperForm]
double dens_max_limit(double x, Convention c);

// Limit density of saddle values: (4x/pi^2) e^{-3 pi x^2/2}     [PaperForm]
double dens_saddle_limit(double x, Convention c);

// Sum of the two; equals the pointwise n->infinity limit of
// kac_rice_finite in CountForm.
double dens_total_limit(double x, Convention c);

// The index-restricted Gaussian integral
//   (2/pi) int_{2|xi|^2 < x^2 (Max) or > x^2 (Saddle)}
//          e^{-pi |xi|^2} |2|xi|^2 - x^2| dxi,
// i.e. the bracket of the limit densities before the x e^{-pi x^2} factor.
double index_integral_f1k(double x, critpoints::MorseIndex k,
                          const QuadratureSpec& quad = {});

// Second-order coefficient of the expansion D_n = D_inf + F_inf/n + ...,
// a topological invariant (linear in the Euler characteristic chi):
//   F_inf(x) = -(chi pi^2 x / 4)
//              int_C e^{-pi|xi|^2/2 - pi x^2} (pi|xi|^2 - 2) ||xi|^2-x^2| dxi
double second_order(double x, int chi, const QuadratureSpec& quad = {});

// Exact expected density of critical values at degree n on CP^1 (counts
// normalized by 1/n, CountForm).  With the exact covariance data the
// Kac-Rice integral reduces to
//   (pi^3 n x/(n-1)) e^{-pi x^2} int_0^inf e^{-beta t}|t - x^2| dt,
// beta = pi n / (2(n-1)).  Throws std::domain_error for n < 2.
double kac_rice_finite(int n, double x, const QuadratureSpec& quad = {});

// Unit-normalized limit laws of the per-index values.
double saddle_limit_cdf(double x);  // 1 - e^{-3 pi x^2/2}
double max_limit_cdf(double x);     // 1 + 3e^{-pi x^2}(1 - pi x^2) - 4e^{-3 pi x^2/2}

enum class CurveKind { SaddleLimit, MaxLimit, TotalLimit, FiniteN, SecondOrder, IndexIntegral };

std::string curve_name(CurveKind kind);

struct DensityCurve {
  CurveKind kind = CurveKind::TotalLimit;
  Convention convention = Convention::CountForm;
  int n = 0;    // FiniteN only
  int chi = 2;  // SecondOrder only
  std::vector<double> xs;
  std::vector<double> values;
};

// Uniform grid of steps+1 points on [0, xmax].
DensityCurve sample_curve(CurveKind kind, Convention convention, int n,
                          int chi, double xmax, int steps,
                          const QuadratureSpec& quad = {});

// Trapezoid mass of a sampled curve.
double curve_mass(const DensityCurve& curve);

}  // namespace cvlab::densities
