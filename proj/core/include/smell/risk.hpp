#pragma once

#include <functional>
#include <vector>

#include "smell/types.hpp"

namespace smell {

struct RiskInput {
  double d_plus = 0.0;
  double d_minus = 0.0;
};

/// The published closed-form expression for the single-marker
/// misclassification risk, transcribed verbatim. Audited, never trusted:
/// risk_numerical is the authority.
double risk_closed_form(const RiskInput& in);

/// Nested adaptive Simpson quadrature of the defining double integral:
/// inner CDF of q+(y; D-) from 0 to the outer variable, outer integral of
/// (1 - q+) * Phi over [0, D+].
double risk_numerical(const RiskInput& in, double tol = 1e-8);

/// CDF of the kernel likelihood, integrated numerically.
double risk_phi_numerical(double x, double d_minus, double tol = 1e-8);

struct RiskRow {
  double d_plus = 0.0;
  double d_minus = 0.0;
  double closed_form = 0.0;
  double numerical = 0.0;
  double abs_diff = 0.0;
  bool mismatch = false; // abs_diff > 10*tol
};

std::vector<RiskRow> risk_consistency_report(const std::vector<RiskInput>& grid,
                                             double tol = 1e-8);

/// Generic adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

} // namespace smell
