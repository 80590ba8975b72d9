#pragma once

#include <vector>

#include "smell/network.hpp"
#include "smell/sspace.hpp"
#include "smell/types.hpp"

namespace smell {

struct LossConstants {
  double r_hc = 1.0;
  double r_r = 1e-3;
  double r_d = 0.1;
  double eps = 1e-3;
};

struct LossBreakdown {
  double h_c = 0.0;      // cross-entropy term, pre-scaling
  double r_r_term = 0.0; // reconstruction term, includes r_r
  double r_d_term = 0.0; // repulsive term, includes r_d
  double total = 0.0;    // r_hc*h_c + r_r_term + r_d_term
};

struct MarkerGrads {
  Matrix positive;
  Matrix negative;
};

struct StepGradients {
  LossBreakdown loss;
  MlpGrads encoder;
  MlpGrads decoder;
  MarkerGrads markers;
};

/// Mean over pairs of -[u+ ln q+ + u- ln q-]; q clamped to [1e-7, 1-1e-7].
double cross_entropy(const std::vector<PairScore>& scores, const std::vector<char>& similar);

/// r_r/N * sum over the stacked rows of ||x - x'||^2, N = number of pairs.
double reconstruction_loss(const Matrix& x, const Matrix& recon, int num_pairs, double r_r);

/// Ordered double sum over same-group marker pairs of 1/(d^2+eps), divided
/// by C(k,2) per group; a single-marker group contributes 0.
double repulsive_loss(const MarkerSet& markers, double r_d, double eps);

/// Analytic gradient of the full batch loss (r_hc*H_c + R_d) with respect to
/// every marker.
MarkerGrads marker_gradient(const Matrix& svecs, const std::vector<PairScore>& scores,
                            const std::vector<char>& similar, const MarkerSet& markers,
                            const LossConstants& c);

/// Loss value only; the finite-difference oracles differentiate this.
LossBreakdown objective_value(const Matrix& xi, const Matrix& xj,
                              const std::vector<char>& similar, const NetworkParams& params,
                              const MarkerSet& markers, const LossConstants& c);

/// Loss plus analytic gradients for encoder, decoder and markers, all taken
/// from the same parameter snapshot.
StepGradients objective_gradients(const Matrix& xi, const Matrix& xj,
                                  const std::vector<char>& similar,
                                  const NetworkParams& params, const MarkerSet& markers,
                                  const LossConstants& c);

/// Gradient of r_hc*H_c + R_r with respect to encoder parameters.
MlpGrads encoder_gradient(const Matrix& xi, const Matrix& xj, const std::vector<char>& similar,
                          const NetworkParams& params, const MarkerSet& markers,
                          const LossConstants& c);

/// Gradient of R_r only with respect to decoder parameters.
MlpGrads decoder_gradient(const Matrix& xi, const Matrix& xj, const NetworkParams& params,
                          const LossConstants& c);

} // namespace smell
