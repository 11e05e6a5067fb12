#pragma once

#include <functional>
#include <string>

#include "pdc/errors.hpp"

namespace pdc {

enum class BinaryOutcome { Click, NoClick };

enum class DetectorFamily { BinaryClick, BinaryNoClick, Pnr, Custom };

// Diagonal POVM element Pi = sum_n c_n |n><n| of one detector outcome.
// Exposes the coefficients lazily and, for the built-in families, the
// closed-form generating-function sum S(x) = sum_n c_n x^n.
class CoefficientSeries {
 public:
  using Evaluator = std::function<double(int)>;

  // Custom series: caller-supplied evaluator, no closed form.
  explicit CoefficientSeries(Evaluator eval);

  double coeff(int n) const;

  bool has_closed_form() const noexcept {
    return family_ != DetectorFamily::Custom;
  }
  DetectorFamily family() const noexcept { return family_; }

  // Closed-form S(x) = sum_n c_n x^n for 0 <= x < 1.
  // Throws UnsupportedFamily for custom series.
  double closed_form_weighted_sum(double x) const;

 private:
  friend CoefficientSeries binary_coeffs(double, double, BinaryOutcome);
  friend CoefficientSeries pnr_coeffs(int, double, double);
  CoefficientSeries(DetectorFamily family, double eta, double dark,
                    int herald_n);

  DetectorFamily family_;
  double eta_ = 1.0;
  double dark_ = 0.0;
  int herald_n_ = 0;  // PNR outcome photon number
  Evaluator eval_;
};

// Binary avalanche detector with efficiency eta and dark-count probability
// dark. NoClick: c_n = (1-eta)^n; Click: c_n = 1-(1-eta)^n. Dark counts
// replace c_0 by dark (Click) and 1-dark (NoClick).
CoefficientSeries binary_coeffs(double eta, double dark, BinaryOutcome which);

// Photon-number-resolving outcome "herald_n photons seen":
// c_N = C(N, herald_n) (1-eta)^{N-herald_n} eta^{herald_n} for N >= herald_n.
// Dark counts replace c_0 by dark when herald_n >= 1, and by 1-dark for the
// zero-photon outcome.
CoefficientSeries pnr_coeffs(int herald_n, double eta, double dark);

// Worst-case deviation from POVM completeness over photon numbers
// n <= n_check, for the binary pair and for PNR outcomes summed over
// herald_n = 0..n (the binomial sum is complete there). Dark-free.
double completeness_defect(double eta, int n_check);

// Detector choice as configured by a user: family plus parameters.
struct DetectorModel {
  DetectorFamily family = DetectorFamily::Pnr;
  double eta = 1.0;
  double dark = 0.0;
  int herald_n = 1;                     // PNR only
  CoefficientSeries::Evaluator custom;  // Custom only

  CoefficientSeries coefficients() const;
  std::string label() const;  // stable identifier used in CSV output
};

}  // namespace pdc
