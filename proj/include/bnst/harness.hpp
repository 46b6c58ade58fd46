#pragma once

#include <iosfwd>
#include <string>

#include "bnst/superpose.hpp"
#include "bnst/tracking.hpp"

// Experiment runner: scenario configuration, seeded Monte-Carlo orchestration
// and CSV emission for the four experiments (null-space drift, tracking
// trace, BNSL-vs-BNST comparison, BER-vs-SNR).
namespace bnst {

struct ScenarioConfig {
  int nt = 2;
  int nr = 1;
  double fc_hz = 700e6;
  double fd_hz = 1.3;
  double ts_s = 66.7e-6;
  double tfb_s = 1e-3;
  int num_channels = 20;
  long num_slots = 2000;
  long ber_symbols = 200000;
  int num_paths = 40;
  double noise_variance = 0.0;
  double theta0 = 2.0 * std::numbers::pi / 3.0;
  int codec_n = 16;
  int codec_m = 2;
  std::uint64_t seed = 1;
  TrackerConfig tracker;

  void validate() const;
  std::string canonicalJson() const;
  std::uint64_t hash() const;
};

ScenarioConfig configFromJsonFile(const std::string& path);

/// Sweeps delta_t over a grid of fractions of 1/F_d; columns
/// delta_t, rho_abs, dmi_db.
void runDrift(const ScenarioConfig& cfg, std::ostream& os);

/// One tracking run; TrackingTrace CSV.
void runTrack(const ScenarioConfig& cfg, std::ostream& os);

/// BNSL vs BNST over num_channels x num_slots per Doppler; columns
/// fd,algo,p95,p90,p85,avg.
void runCompare(const ScenarioConfig& cfg, const std::vector<double>& dopplers,
                std::ostream& os);

/// Superimposed-frame BER; columns snr_db, ps, avg_delta_y1_db.
void runBer(const ScenarioConfig& cfg, const std::vector<double>& snr_grid_db,
            std::ostream& os);

}  // namespace bnst
