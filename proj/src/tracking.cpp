#include "bnst/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bnst {

Matrix precoderFrom(const EigenbasisEstimate& w, Eigen::Index n_r) {
  const Eigen::Index n_t = w.w.cols();
  if (n_r >= n_t) {
    throw std::invalid_argument("precoderFrom: need n_r < N_t");
  }
  return w.w.leftCols(n_t - n_r);
}

double normalizedInterferenceDb(const Matrix& h, const Matrix& t) {
  if (h.cols() != t.rows()) {
    throw std::invalid_argument("normalizedInterferenceDb: dimension mismatch");
  }
  const double den = spectralNorm(h);
  if (den == 0.0) {
    throw std::domain_error("normalizedInterferenceDb: zero channel");
  }
  const double num = spectralNorm(h * t);
  const double ratio2 = std::max((num * num) / (den * den), 1e-30);
  return 10.0 * std::log10(ratio2);
}

EigenbasisEstimate modifiedSweep(FeedbackOracle& oracle,
                                 const EigenbasisEstimate& w,
                                 const TrackerConfig& cfg, double doppler_hz) {
  SweepParams p;
  p.theta_tilde = cfg.theta_tilde_track;
  p.theta_max = doppler_hz <= cfg.doppler_split_hz ? cfg.theta_max_small
                                                   : cfg.theta_max_large;
  p.eta = cfg.eta_track;
  return bnslSweep(oracle, w, p);
}

namespace {

void drainProbeLog(FeedbackOracle& oracle, TrackingTrace& trace,
                   int precoder_id) {
  for (const ProbeRecord& rec : oracle.probeLog()) {
    trace.slots.push_back({rec.time_s, SlotMode::Adapting, rec.induced_db,
                           precoder_id, oracle.queryCount()});
  }
  oracle.clearProbeLog();
}

}  // namespace

TrackingTrace track(const ChannelProcess& channel, const TrackerConfig& cfg,
                    long duration_slots, double t_fb, double t_s,
                    double noise_variance, TrackMode mode,
                    std::uint64_t noise_seed) {
  if (duration_slots < 1) {
    throw std::invalid_argument("track: duration_slots must be >= 1");
  }
  const Eigen::Index n_t = channel.cols();
  const Eigen::Index n_r = channel.rows();
  const double doppler = channel.config().doppler_hz;

  FeedbackOracle oracle(channel, noise_variance, t_fb, t_s, noise_seed);
  TrackingTrace trace;

  EigenbasisEstimate est =
      bnslSweep(oracle, EigenbasisEstimate::identity(n_t), cfg.acquisition);
  int precoder_id = 0;
  drainProbeLog(oracle, trace, precoder_id);
  Matrix t_mat = precoderFrom(est, n_r);

  while (static_cast<long>(trace.slots.size()) < duration_slots) {
    const Matrix h = channel.sample(oracle.clock());
    const double worst_case = normalizedInterferenceDb(h, t_mat);
    if (worst_case > cfg.p_tr_db) {
      ++trace.num_adaptations;
      if (mode == TrackMode::BnslOnly) {
        est = bnslSweep(oracle, EigenbasisEstimate::identity(n_t),
                        cfg.acquisition);
      } else {
        // theta_max escalation: restricted range first, widen while the
        // interference stays above the trigger.
        const double base = doppler <= cfg.doppler_split_hz
                                ? cfg.theta_max_small
                                : cfg.theta_max_large;
        std::vector<double> ladder{base};
        if (cfg.theta_max_large > base) ladder.push_back(cfg.theta_max_large);
        ladder.push_back(std::numbers::pi / 2.0);
        for (std::size_t r = 0; r < ladder.size(); ++r) {
          SweepParams p;
          p.theta_tilde = cfg.theta_tilde_track;
          p.theta_max = ladder[r];
          p.eta = cfg.eta_track;
          est = bnslSweep(oracle, est, p);
          const Matrix h_now = channel.sample(oracle.clock());
          if (normalizedInterferenceDb(h_now, precoderFrom(est, n_r)) <=
              cfg.p_tr_db) {
            break;
          }
        }
      }
      ++precoder_id;
      drainProbeLog(oracle, trace, precoder_id);
      t_mat = precoderFrom(est, n_r);
    } else {
      trace.slots.push_back({oracle.clock(), SlotMode::Transmitting,
                             worst_case, precoder_id, oracle.queryCount()});
      oracle.advanceCycle();
    }
  }

  if (static_cast<long>(trace.slots.size()) > duration_slots) {
    trace.slots.resize(static_cast<std::size_t>(duration_slots));
  }
  trace.total_queries = oracle.queryCount();
  return trace;
}

double metricPx(const TrackingTrace& trace, double x_percent) {
  if (trace.slots.empty()) {
    throw std::invalid_argument("metricPx: empty trace");
  }
  if (!(x_percent > 0.0 && x_percent < 100.0)) {
    throw std::invalid_argument("metricPx: x_percent out of (0, 100)");
  }
  std::vector<double> vals;
  vals.reserve(trace.slots.size());
  for (const TraceSlot& s : trace.slots) vals.push_back(s.interference_db);
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(x_percent / 100.0 * static_cast<double>(n)));
  if (idx == 0) idx = 1;
  return vals[std::min(idx, n) - 1];
}

double averageInterferenceDb(const TrackingTrace& trace) {
  if (trace.slots.empty()) {
    throw std::invalid_argument("averageInterferenceDb: empty trace");
  }
  double acc = 0.0;
  for (const TraceSlot& s : trace.slots) {
    acc += std::pow(10.0, s.interference_db / 10.0);
  }
  return 10.0 * std::log10(acc / static_cast<double>(trace.slots.size()));
}

void writeCsv(const TrackingTrace& trace, std::ostream& os) {
  os << "time_s,mode,interference_db,queries_cum\n";
  for (const TraceSlot& s : trace.slots) {
    os << s.time_s << ','
       << (s.mode == SlotMode::Adapting ? "adapting" : "transmitting") << ','
       << s.interference_db << ',' << s.queries_cum << '\n';
  }
}

}  // namespace bnst
