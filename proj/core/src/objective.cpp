#include "smell/objective.hpp"

#include <cmath>

namespace smell {
namespace {

constexpr double kClamp = 1e-7;

double clamp_q(double q) { return std::min(std::max(q, kClamp), 1.0 - kClamp); }

double pair_count_norm(Eigen::Index k) {
  return static_cast<double>(k) * (static_cast<double>(k) - 1.0) / 2.0; // C(k,2)
}

Matrix combined_markers(const MarkerSet& m) {
  Matrix all(m.total(), m.dim());
  all.topRows(m.positive.rows()) = m.positive;
  all.bottomRows(m.negative.rows()) = m.negative;
  return all;
}

/// Per-pair chain pieces of the clamped cross-entropy through the kernel:
/// gradient with respect to each marker row and with respect to s.
/// `scale` carries r_hc/g.
void ce_pair_backward(const RowVector& s, const Matrix& all_markers, int k_positive,
                      bool similar, double scale, Matrix& d_markers, RowVector& d_s) {
  const int w = static_cast<int>(all_markers.rows());
  Vector a(w);
  for (int t = 0; t < w; ++t) {
    a(t) = 1.0 / (1.0 + (s - all_markers.row(t)).squaredNorm());
  }
  const double z = a.sum();
  const Vector q = a / z;
  const double q_plus = q.head(k_positive).sum();
  const double q_minus = 1.0 - q_plus;

  // dL/dq^t, zero when the relevant aggregate is clamped (loss locally flat)
  Vector g = Vector::Zero(w);
  if (similar) {
    if (q_plus > kClamp && q_plus < 1.0 - kClamp) g.head(k_positive).setConstant(-1.0 / q_plus);
  } else {
    if (q_minus > kClamp && q_minus < 1.0 - kClamp) {
      g.tail(w - k_positive).setConstant(-1.0 / q_minus);
    }
  }

  const double gq = g.dot(q);
  for (int r = 0; r < w; ++r) {
    const double dl_da = (g(r) - gq) / z;
    const RowVector diff = s - all_markers.row(r);
    const RowVector common = (2.0 * dl_da * a(r) * a(r) * scale) * diff;
    d_markers.row(r) += common; // d a_r/d mu_r = +2 a_r^2 (s - mu_r)
    d_s -= common;              // d a_r/d s    = -2 a_r^2 (s - mu_r)
  }
}

} // namespace

double cross_entropy(const std::vector<PairScore>& scores, const std::vector<char>& similar) {
  if (scores.empty()) throw std::invalid_argument("cross_entropy: empty batch");
  if (scores.size() != similar.size()) {
    throw std::invalid_argument("cross_entropy: list length mismatch");
  }
  double sum = 0.0;
  for (std::size_t p = 0; p < scores.size(); ++p) {
    sum -= similar[p] ? std::log(clamp_q(scores[p].q_plus))
                      : std::log(clamp_q(scores[p].q_minus));
  }
  return sum / static_cast<double>(scores.size());
}

double reconstruction_loss(const Matrix& x, const Matrix& recon, int num_pairs, double r_r) {
  if (x.rows() != recon.rows() || x.cols() != recon.cols()) {
    throw std::invalid_argument("reconstruction_loss: shape mismatch");
  }
  return r_r / static_cast<double>(num_pairs) * (x - recon).rowwise().squaredNorm().sum();
}

double repulsive_loss(const MarkerSet& markers, double r_d, double eps) {
  double total = 0.0;
  for (const Matrix* group : {&markers.positive, &markers.negative}) {
    const Eigen::Index k = group->rows();
    if (k < 2) continue;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (i == j) continue;
        sum += 1.0 / ((group->row(i) - group->row(j)).squaredNorm() + eps);
      }
    }
    total += sum / pair_count_norm(k);
  }
  return r_d * total;
}

MarkerGrads marker_gradient(const Matrix& svecs, const std::vector<PairScore>& scores,
                            const std::vector<char>& similar, const MarkerSet& markers,
                            const LossConstants& c) {
  const int k = static_cast<int>(markers.positive.rows());
  const Matrix all = combined_markers(markers);
  Matrix d_all = Matrix::Zero(all.rows(), all.cols());
  RowVector d_s_unused = RowVector::Zero(all.cols());

  const double scale = c.r_hc / static_cast<double>(svecs.rows());
  for (Eigen::Index p = 0; p < svecs.rows(); ++p) {
    d_s_unused.setZero();
    ce_pair_backward(svecs.row(p), all, k, similar[static_cast<std::size_t>(p)] != 0, scale,
                     d_all, d_s_unused);
  }
  (void)scores;

  // repulsive gradient: chain rule of the implemented ordered-sum R_d
  MarkerGrads grads;
  grads.positive = d_all.topRows(k);
  grads.negative = d_all.bottomRows(all.rows() - k);
  Matrix* out[2] = {&grads.positive, &grads.negative};
  const Matrix* groups[2] = {&markers.positive, &markers.negative};
  for (int gidx = 0; gidx < 2; ++gidx) {
    const Matrix& group = *groups[gidx];
    const Eigen::Index kk = group.rows();
    if (kk < 2) continue;
    const double factor = c.r_d / pair_count_norm(kk);
    for (Eigen::Index t = 0; t < kk; ++t) {
      for (Eigen::Index u = 0; u < kk; ++u) {
        if (t == u) continue;
        const RowVector diff = group.row(t) - group.row(u);
        const double denom = diff.squaredNorm() + c.eps;
        out[gidx]->row(t) -= 4.0 * factor / (denom * denom) * diff;
      }
    }
  }
  return grads;
}

LossBreakdown objective_value(const Matrix& xi, const Matrix& xj,
                              const std::vector<char>& similar, const NetworkParams& params,
                              const MarkerSet& markers, const LossConstants& c) {
  const auto g = static_cast<int>(xi.rows());
  Matrix x(2 * g, xi.cols());
  x.topRows(g) = xi;
  x.bottomRows(g) = xj;

  const Matrix z = encode(params, x);
  const Matrix recon = decode(params, z);
  const Matrix svecs = sspace_map(Matrix(z.topRows(g)), Matrix(z.bottomRows(g)));

  std::vector<PairScore> scores;
  scores.reserve(static_cast<std::size_t>(g));
  for (int p = 0; p < g; ++p) {
    scores.push_back(student_t_scores(svecs.row(p).transpose(), markers));
  }

  LossBreakdown loss;
  loss.h_c = cross_entropy(scores, similar);
  loss.r_r_term = reconstruction_loss(x, recon, g, c.r_r);
  loss.r_d_term = repulsive_loss(markers, c.r_d, c.eps);
  loss.total = c.r_hc * loss.h_c + loss.r_r_term + loss.r_d_term;
  return loss;
}

StepGradients objective_gradients(const Matrix& xi, const Matrix& xj,
                                  const std::vector<char>& similar,
                                  const NetworkParams& params, const MarkerSet& markers,
                                  const LossConstants& c) {
  const auto g = static_cast<int>(xi.rows());
  Matrix x(2 * g, xi.cols());
  x.topRows(g) = xi;
  x.bottomRows(g) = xj;

  ForwardCache enc_cache, dec_cache;
  const Matrix z = encode(params, x, &enc_cache);
  const Matrix recon = decode(params, z, &dec_cache);
  const Matrix zi = z.topRows(g);
  const Matrix zj = z.bottomRows(g);
  const Matrix svecs = sspace_map(zi, zj);

  StepGradients out;
  std::vector<PairScore> scores;
  scores.reserve(static_cast<std::size_t>(g));
  for (int p = 0; p < g; ++p) {
    scores.push_back(student_t_scores(svecs.row(p).transpose(), markers));
  }
  out.loss.h_c = cross_entropy(scores, similar);
  out.loss.r_r_term = reconstruction_loss(x, recon, g, c.r_r);
  out.loss.r_d_term = repulsive_loss(markers, c.r_d, c.eps);
  out.loss.total = c.r_hc * out.loss.h_c + out.loss.r_r_term + out.loss.r_d_term;

  // reconstruction path: dR_r/drecon, through decoder, then into z
  const Matrix d_recon = (-2.0 * c.r_r / static_cast<double>(g)) * (x - recon);
  Matrix d_z = backward(params.decoder, dec_cache, d_recon, out.decoder);

  // cross-entropy path: kernel backward into s, then |.| backward into z
  const int k = static_cast<int>(markers.positive.rows());
  const Matrix all = combined_markers(markers);
  Matrix d_all = Matrix::Zero(all.rows(), all.cols());
  Matrix d_svecs = Matrix::Zero(g, svecs.cols());
  const double scale = c.r_hc / static_cast<double>(g);
  for (int p = 0; p < g; ++p) {
    RowVector d_s = RowVector::Zero(svecs.cols());
    ce_pair_backward(svecs.row(p), all, k, similar[static_cast<std::size_t>(p)] != 0, scale,
                     d_all, d_s);
    d_svecs.row(p) = d_s;
  }
  // d|z_i - z_j|: sign of the difference, 0 at ties
  for (int p = 0; p < g; ++p) {
    for (Eigen::Index col = 0; col < svecs.cols(); ++col) {
      const double diff = zi(p, col) - zj(p, col);
      const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      const double v = d_svecs(p, col) * sgn;
      d_z(p, col) += v;
      d_z(g + p, col) -= v;
    }
  }
  backward(params.encoder, enc_cache, d_z, out.encoder);

  out.markers = marker_gradient(svecs, scores, similar, markers, c);
  return out;
}

MlpGrads encoder_gradient(const Matrix& xi, const Matrix& xj, const std::vector<char>& similar,
                          const NetworkParams& params, const MarkerSet& markers,
                          const LossConstants& c) {
  return objective_gradients(xi, xj, similar, params, markers, c).encoder;
}

MlpGrads decoder_gradient(const Matrix& xi, const Matrix& xj, const NetworkParams& params,
                          const LossConstants& c) {
  const auto g = static_cast<int>(xi.rows());
  Matrix x(2 * g, xi.cols());
  x.topRows(g) = xi;
  x.bottomRows(g) = xj;
  ForwardCache enc_cache, dec_cache;
  const Matrix z = encode(params, x, &enc_cache);
  const Matrix recon = decode(params, z, &dec_cache);
  const Matrix d_recon = (-2.0 * c.r_r / static_cast<double>(g)) * (x - recon);
  MlpGrads grads;
  backward(params.decoder, dec_cache, d_recon, grads);
  return grads;
}

} // namespace smell
