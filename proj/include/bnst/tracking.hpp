#pragma once

#include <iosfwd>
#include <numbers>
#include <vector>

#include "bnst/learning.hpp"

// Blind Null Space Tracking: acquisition sweep, interference-triggered
// modified sweeps with restricted search ranges, and the trace metrics.
namespace bnst {

struct TrackerConfig {
  double p_tr_db = -20.0;        // adaptation trigger
  double theta_max_small = std::numbers::pi / 10.0;
  double theta_max_large = std::numbers::pi / 5.0;
  double doppler_split_hz = 2.0;
  double theta_tilde_track = std::numbers::pi / 10.0;
  double eta_track = 0.1;
  SweepParams acquisition{std::numbers::pi / 3.0, std::numbers::pi / 2.0, 0.1};
};

enum class SlotMode { Transmitting, Adapting };

struct TraceSlot {
  double time_s = 0.0;
  SlotMode mode = SlotMode::Transmitting;
  double interference_db = 0.0;
  int precoder_id = 0;
  long queries_cum = 0;
};

struct TrackingTrace {
  std::vector<TraceSlot> slots;
  int num_adaptations = 0;  // re-adaptation episodes after acquisition
  long total_queries = 0;
};

/// First N_t - N_r columns of W (ascending interference ordering).
Matrix precoderFrom(const EigenbasisEstimate& w, Eigen::Index n_r);

/// 10 log10( ||H T||^2 / ||H||^2 ) with spectral norms.
double normalizedInterferenceDb(const Matrix& h, const Matrix& t);

/// One restricted sweep starting from the current estimate; theta_max is
/// theta_max_small for doppler <= doppler_split_hz, theta_max_large above.
EigenbasisEstimate modifiedSweep(FeedbackOracle& oracle,
                                 const EigenbasisEstimate& w,
                                 const TrackerConfig& cfg, double doppler_hz);

enum class TrackMode { Bnst, BnslOnly };

/// Full tracking run: acquisition sweep from identity, then per-cycle trigger
/// evaluation. Adaptation cycles are logged with the actually-induced
/// interference of each probe; transmission cycles with the worst-case
/// normalized interference of the current precoder. In BnslOnly mode every
/// triggered adaptation is a full acquisition-parameter sweep from identity.
TrackingTrace track(const ChannelProcess& channel, const TrackerConfig& cfg,
                    long duration_slots, double t_fb, double t_s,
                    double noise_variance = 0.0,
                    TrackMode mode = TrackMode::Bnst,
                    std::uint64_t noise_seed = 0);

/// x-percent quantile of per-slot interference: the smallest recorded value
/// v such that at least x% of the slots are at or below v.
double metricPx(const TrackingTrace& trace, double x_percent);

/// 10 log10 of the linear-domain mean of the per-slot interference.
double averageInterferenceDb(const TrackingTrace& trace);

/// CSV columns: time_s, mode, interference_db, queries_cum.
void writeCsv(const TrackingTrace& trace, std::ostream& os);

}  // namespace bnst
