#include "bnst/feedback.hpp"

#include <cmath>
#include <stdexcept>

namespace bnst {

double interferencePower(const Matrix& h, const Vector& x) {
  if (h.cols() != x.size()) {
    throw std::invalid_argument("interferencePower: dimension mismatch");
  }
  return (h * x).squaredNorm();
}

double measureQ1(const std::vector<Vector>& y) {
  if (y.empty()) {
    throw std::invalid_argument("measureQ1: empty slot list");
  }
  double acc = 0.0;
  for (const Vector& v : y) acc += v.squaredNorm();
  return acc / static_cast<double>(y.size());
}

double measureQ2(const std::vector<Vector>& y) {
  if (y.empty()) {
    throw std::invalid_argument("measureQ2: empty slot list");
  }
  Vector mean = Vector::Zero(y.front().size());
  for (const Vector& v : y) mean += v;
  mean /= static_cast<double>(y.size());
  return mean.squaredNorm();
}

FeedbackOracle::FeedbackOracle(ChannelProcess channel, double noise_variance,
                               double t_fb, double t_s,
                               std::uint64_t noise_seed)
    : channel_(std::move(channel)),
      noise_variance_(noise_variance),
      t_fb_(t_fb),
      t_s_(t_s),
      rng_(noise_seed) {
  if (!(t_fb > 0.0) || !(t_s > 0.0)) {
    throw std::invalid_argument("FeedbackOracle: durations must be positive");
  }
  if (noise_variance < 0.0) {
    throw std::invalid_argument("FeedbackOracle: negative noise variance");
  }
  slots_per_cycle_ = static_cast<int>(std::ceil(t_fb / t_s));
}

double FeedbackOracle::query(MeasurementModel model,
                             const std::vector<Vector>& slots) {
  if (static_cast<int>(slots.size()) != slots_per_cycle_) {
    throw std::invalid_argument("FeedbackOracle::query: wrong slot count");
  }
  const Matrix h = channel_.sample(clock_);  // frozen within the cycle

  double induced = 0.0;
  double tx_power = 0.0;
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance_ / 2.0));
  std::vector<Vector> received;
  received.reserve(slots.size());
  for (const Vector& x : slots) {
    Vector y = h * x;
    induced += y.squaredNorm();
    tx_power += x.squaredNorm();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y(i) += Complex(gauss(rng_), gauss(rng_));
    }
    received.push_back(std::move(y));
  }

  const double h_norm2 = spectralNorm(h) * spectralNorm(h);
  const double norm_induced =
      (tx_power > 0.0 && h_norm2 > 0.0) ? induced / (h_norm2 * tx_power) : 0.0;
  probe_log_.push_back(
      {clock_, 10.0 * std::log10(std::max(norm_induced, 1e-30))});

  double meas = model == MeasurementModel::Q1 ? measureQ1(received)
                                              : measureQ2(received);
  if (quantizer_bits_ > 0 && meas > 0.0) {
    const double lo = -60.0, hi = 0.0;
    const int levels = (1 << quantizer_bits_) - 1;
    double db = 10.0 * std::log10(meas);
    const double ref = db > hi ? db : hi;  // full scale tracks the signal
    double rel = std::clamp(db - ref, lo, 0.0);
    rel = std::round((rel - lo) / (hi - lo) * levels) / levels * (hi - lo) + lo;
    meas = std::pow(10.0, (rel + ref) / 10.0);
  }

  clock_ += t_fb_;
  ++query_count_;
  return meas;
}

double FeedbackOracle::query(MeasurementModel model, const Vector& x) {
  return query(model, std::vector<Vector>(slots_per_cycle_, x));
}

}  // namespace bnst
