#include "pdc/detector.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

void check_eta_dark(double eta, double dark) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0)
    throw ConfigError("detector efficiency must lie in [0, 1], got " +
                      std::to_string(eta));
  if (!std::isfinite(dark) || dark < 0.0 || dark >= 1.0)
    throw ConfigError("dark-count probability must lie in [0, 1), got " +
                      std::to_string(dark));
}

// C(n, k) via the exact integer-valued partial products; exact in double
// for every value below 2^53.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
  return c;
}

}  // namespace

CoefficientSeries::CoefficientSeries(Evaluator eval)
    : family_(DetectorFamily::Custom), eta_(0.0), dark_(0.0), herald_n_(0),
      eval_(std::move(eval)) {
  if (!eval_) throw ConfigError("custom coefficient series needs an evaluator");
}

CoefficientSeries::CoefficientSeries(DetectorFamily family, double eta,
                                     double dark, int herald_n)
    : family_(family), eta_(eta), dark_(dark), herald_n_(herald_n) {
  double loss = 1.0 - eta;
  switch (family) {
    case DetectorFamily::BinaryClick:
      eval_ = [loss, dark](int n) {
        return n == 0 ? dark : 1.0 - std::pow(loss, double(n));
      };
      break;
    case DetectorFamily::BinaryNoClick:
      eval_ = [loss, dark](int n) {
        return n == 0 ? 1.0 - dark : std::pow(loss, double(n));
      };
      break;
    case DetectorFamily::Pnr:
      eval_ = [eta, loss, dark, herald_n](int n) {
        if (n == 0) return herald_n == 0 ? 1.0 - dark : dark;
        if (n < herald_n) return 0.0;
        return binomial(n, herald_n) * std::pow(loss, double(n - herald_n)) *
               std::pow(eta, double(herald_n));
      };
      break;
    case DetectorFamily::Custom:
      throw ConfigError("custom family requires an explicit evaluator");
  }
}

double CoefficientSeries::coeff(int n) const {
  if (n < 0) throw ConfigError("photon number must be >= 0");
  double c = eval_(n);
  if (!std::isfinite(c) || c < -1e-9 || c > 1.0 + 1e-9)
    throw ConfigError("coefficient c_" + std::to_string(n) +
                      " = " + std::to_string(c) + " outside [0, 1]");
  if (c < 0.0) c = 0.0;
  if (c > 1.0) c = 1.0;
  return c;
}

// Analytic sum_n c_n x^n of the built-in families; the dark-count c_0
// replacement shows up as the constant offsets.
double CoefficientSeries::closed_form_weighted_sum(double x) const {
  if (!std::isfinite(x) || x < 0.0 || x >= 1.0)
    throw ConfigError("pair parameter must lie in [0, 1), got " +
                      std::to_string(x));
  double loss = 1.0 - eta_;
  double geo = 1.0 - loss * x;  // 1 - (1-eta) x
  switch (family_) {
    case DetectorFamily::BinaryClick:
      return dark_ + x / (1.0 - x) - loss * x / geo;
    case DetectorFamily::BinaryNoClick:
      return (1.0 - dark_) + loss * x / geo;
    case DetectorFamily::Pnr:
      if (herald_n_ == 0) return 1.0 / geo - dark_;
      return dark_ + std::pow(eta_ * x, double(herald_n_)) /
                         std::pow(geo, double(herald_n_) + 1.0);
    case DetectorFamily::Custom:
      break;
  }
  throw UnsupportedFamily("no closed-form sum for a custom coefficient series");
}

CoefficientSeries binary_coeffs(double eta, double dark, BinaryOutcome which) {
  check_eta_dark(eta, dark);
  return CoefficientSeries(which == BinaryOutcome::Click
                               ? DetectorFamily::BinaryClick
                               : DetectorFamily::BinaryNoClick,
                           eta, dark, 0);
}

CoefficientSeries pnr_coeffs(int herald_n, double eta, double dark) {
  check_eta_dark(eta, dark);
  if (herald_n < 0) throw ConfigError("herald photon number must be >= 0");
  return CoefficientSeries(DetectorFamily::Pnr, eta, dark, herald_n);
}

double completeness_defect(double eta, int n_check) {
  auto click = binary_coeffs(eta, 0.0, BinaryOutcome::Click);
  auto noclick = binary_coeffs(eta, 0.0, BinaryOutcome::NoClick);
  double worst = 0.0;
  for (int n = 0; n <= n_check; ++n)
    worst = std::max(worst, std::abs(click.coeff(n) + noclick.coeff(n) - 1.0));
  for (int n = 0; n <= n_check; ++n) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) total += pnr_coeffs(k, eta, 0.0).coeff(n);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

CoefficientSeries DetectorModel::coefficients() const {
  switch (family) {
    case DetectorFamily::BinaryClick:
      return binary_coeffs(eta, dark, BinaryOutcome::Click);
    case DetectorFamily::BinaryNoClick:
      return binary_coeffs(eta, dark, BinaryOutcome::NoClick);
    case DetectorFamily::Pnr:
      return pnr_coeffs(herald_n, eta, dark);
    case DetectorFamily::Custom:
      return CoefficientSeries(custom);
  }
  throw ConfigError("unknown detector family");
}

std::string DetectorModel::label() const {
  switch (family) {
    case DetectorFamily::BinaryClick:
      return "binary_click";
    case DetectorFamily::BinaryNoClick:
      return "binary_noclick";
    case DetectorFamily::Pnr:
      return "pnr" + std::to_string(herald_n);
    case DetectorFamily::Custom:
      return "custom";
  }
  return "unknown";
}

}  // namespace pdc
