#pragma once

#include <random>
#include <vector>

#include "bnst/channel.hpp"

// Simulated primary-receiver measurement path. The learner modules never see
// the channel matrix; their only access is FeedbackOracle::query, which
// returns one scalar energy measurement per T_FB cycle.
namespace bnst {

enum class MeasurementModel { Q1, Q2 };

/// ||H x||^2.
double interferencePower(const Matrix& h, const Vector& x);

/// Mean of per-slot squared norms, (1/N) sum ||y(t)||^2.
double measureQ1(const std::vector<Vector>& y);

/// Squared norm of the slot-mean vector, ||(1/N) sum y(t)||^2.
double measureQ2(const std::vector<Vector>& y);

/// Per-query record kept for trace bookkeeping: the normalized interference
/// actually induced by the transmitted slots of that cycle, noiseless.
struct ProbeRecord {
  double time_s = 0.0;
  double induced_db = 0.0;
};

class FeedbackOracle {
 public:
  /// noise_variance is the total variance per complex dimension of the
  /// additive receiver noise n1.
  FeedbackOracle(ChannelProcess channel, double noise_variance, double t_fb,
                 double t_s, std::uint64_t noise_seed = 0);

  /// N = ceil(t_fb / t_s) symbol slots per feedback cycle.
  int slotsPerCycle() const { return slots_per_cycle_; }

  /// Transmits the given slots through H12 held fixed at the current clock,
  /// adds fresh noise per slot, returns the model's measurement and advances
  /// the clock by one cycle.
  double query(MeasurementModel model, const std::vector<Vector>& slots);

  /// Convenience: one constant learning vector repeated over the cycle.
  double query(MeasurementModel model, const Vector& x);

  /// Advances the clock by one cycle without transmitting (data slot).
  void advanceCycle() { clock_ += t_fb_; }

  /// k-bit uniform quantization of the returned measurement in the dB
  /// domain over [-60, 0] dB relative to full scale; 0 disables (default).
  void setQuantizerBits(int bits) { quantizer_bits_ = bits; }

  double clock() const { return clock_; }
  long queryCount() const { return query_count_; }
  double tFb() const { return t_fb_; }

  const std::vector<ProbeRecord>& probeLog() const { return probe_log_; }
  void clearProbeLog() { probe_log_.clear(); }

 private:
  ChannelProcess channel_;
  double noise_variance_;
  double t_fb_;
  double t_s_;
  int slots_per_cycle_;
  double clock_ = 0.0;
  long query_count_ = 0;
  int quantizer_bits_ = 0;
  std::mt19937_64 rng_;
  std::vector<ProbeRecord> probe_log_;
};

}  // namespace bnst
