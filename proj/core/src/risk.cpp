#include "smell/risk.hpp"

#include <cmath>
#include <functional>

namespace smell {
namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

/// q+(y; D-) for one marker per group, distance y to the positive marker.
double q_plus(double y, double d_minus) {
  const double dm2 = d_minus * d_minus;
  return (1.0 + dm2) / (2.0 + y * y + dm2);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double risk_phi_numerical(double x, double d_minus, double tol) {
  return adaptive_simpson([d_minus](double y) { return q_plus(y, d_minus); }, 0.0, x, tol);
}

double risk_numerical(const RiskInput& in, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("risk_numerical: tol must be positive");
  if (in.d_plus < 0.0 || in.d_minus < 0.0 || !std::isfinite(in.d_plus) ||
      !std::isfinite(in.d_minus)) {
    throw std::invalid_argument("risk_numerical: distances must be finite and non-negative");
  }
  const double dm = in.d_minus;
  const double inner_tol = tol * 0.1;
  const auto integrand = [dm, inner_tol](double t) {
    return (1.0 - q_plus(t, dm)) * risk_phi_numerical(t, dm, inner_tol);
  };
  return adaptive_simpson(integrand, 0.0, in.d_plus, tol);
}

double risk_closed_form(const RiskInput& in) {
  const double dp = in.d_plus;
  const double dm2 = in.d_minus * in.d_minus;
  const double root = std::sqrt(dm2 + 2.0);
  const double bracket =
      root * std::log(1.0 / std::sqrt(dp * dp / (dm2 + 2.0) + 1.0)) -
      (dm2 + 1.0) * std::pow(std::atan(dp / root), 2.0) / root +
      dp * std::atan(dp * dp / root);
  return (dm2 + 1.0) / root * bracket;
}

std::vector<RiskRow> risk_consistency_report(const std::vector<RiskInput>& grid, double tol) {
  std::vector<RiskRow> rows;
  rows.reserve(grid.size());
  for (const auto& in : grid) {
    RiskRow row;
    row.d_plus = in.d_plus;
    row.d_minus = in.d_minus;
    row.closed_form = risk_closed_form(in);
    row.numerical = risk_numerical(in, tol);
    row.abs_diff = std::abs(row.closed_form - row.numerical);
    row.mismatch = row.abs_diff > 10.0 * tol;
    rows.push_back(row);
  }
  return rows;
}

} // namespace smell
