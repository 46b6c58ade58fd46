#pragma once

#include <cstdint>
#include <vector>

#include "bnst/matcore.hpp"

// Time-varying MIMO channel generation (Clarke-model Rayleigh fading with
// independent entries), autocorrelation and coherence-time estimation, and
// the null-space drift metric.
namespace bnst {

struct ClarkeConfig {
  double doppler_hz = 0.0;
  int num_paths = 40;
  std::uint64_t seed = 0;
};

/// One Clarke-model fading coefficient: a fixed bank of num_paths sinusoids
/// with angles and phases drawn once from the seed. Sampling at a given time
/// is deterministic and E|h(t)|^2 = 1 by construction.
class SisoClarke {
 public:
  explicit SisoClarke(const ClarkeConfig& cfg);

  Complex sample(double t) const;

 private:
  std::vector<double> omega_;  // 2 pi F_d cos(alpha_p)
  std::vector<double> psi_;
};

/// rows x cols matrix of mutually independent SisoClarke processes. Entry
/// (i, j) is seeded by mixing the base seed with (i, j), so trajectories are
/// reproducible and statistically independent across entries.
class ChannelProcess {
 public:
  ChannelProcess(Eigen::Index rows, Eigen::Index cols, const ClarkeConfig& cfg);

  Matrix sample(double t) const;

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const ClarkeConfig& config() const { return cfg_; }

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  ClarkeConfig cfg_;
  std::vector<SisoClarke> entries_;  // row-major
};

/// Deterministic 64-bit mix used for per-entry and per-realization seed
/// streams (splitmix64 over the concatenated words).
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Ensemble estimate of E{h(t) h(t+dt)^*} / E{|h|^2} over num_samples
/// independently seeded realizations of cfg.
Complex autocorrelation(const ClarkeConfig& cfg, double delta_t,
                        int num_samples);

enum class CoherenceMethod { Formula, Numeric };

/// X% coherence time. Formula method is the 9/(16 pi F_d) rule of thumb and
/// only valid for x = 50; the numeric method returns the smallest positive
/// lag with J0(2 pi F_d dt) = x/100, bisected to 1e-6 relative accuracy.
double coherenceTime(double doppler_hz, double x_percent,
                     CoherenceMethod method);

/// Null-space drift: mean over independently seeded channel pairs
/// (H(0), H(delta_t)) of the per-draw value
///   10 log10( ||H(dt) N(H(0))||^2 / ||H(dt)||^2 )
/// with spectral norms. Requires cols > rows.
double dmiDb(const ChannelProcess& ch, double delta_t, int num_draws);

}  // namespace bnst
