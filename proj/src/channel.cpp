#include "bnst/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bnst {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double besselJ0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

}  // namespace

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  h ^= splitmix64(s);
  return h;
}

SisoClarke::SisoClarke(const ClarkeConfig& cfg) {
  if (cfg.num_paths < 1) {
    throw std::invalid_argument("SisoClarke: num_paths must be >= 1");
  }
  if (cfg.doppler_hz < 0.0) {
    throw std::invalid_argument("SisoClarke: doppler_hz must be >= 0");
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
  omega_.resize(cfg.num_paths);
  psi_.resize(cfg.num_paths);
  for (int p = 0; p < cfg.num_paths; ++p) {
    omega_[p] = 2.0 * std::numbers::pi * cfg.doppler_hz * std::cos(uni(rng));
    psi_[p] = uni(rng);
  }
}

Complex SisoClarke::sample(double t) const {
  Complex acc(0.0, 0.0);
  for (std::size_t p = 0; p < omega_.size(); ++p) {
    acc += std::polar(1.0, omega_[p] * t + psi_[p]);
  }
  return acc / std::sqrt(static_cast<double>(omega_.size()));
}

ChannelProcess::ChannelProcess(Eigen::Index rows, Eigen::Index cols,
                               const ClarkeConfig& cfg)
    : rows_(rows), cols_(cols), cfg_(cfg) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("ChannelProcess: empty dimensions");
  }
  entries_.reserve(static_cast<std::size_t>(rows * cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      ClarkeConfig e = cfg;
      e.seed = mixSeed(cfg.seed, static_cast<std::uint64_t>(i),
                       static_cast<std::uint64_t>(j));
      entries_.emplace_back(e);
    }
  }
}

Matrix ChannelProcess::sample(double t) const {
  Matrix h(rows_, cols_);
  for (Eigen::Index i = 0; i < rows_; ++i) {
    for (Eigen::Index j = 0; j < cols_; ++j) {
      h(i, j) = entries_[static_cast<std::size_t>(i * cols_ + j)].sample(t);
    }
  }
  return h;
}

Complex autocorrelation(const ClarkeConfig& cfg, double delta_t,
                        int num_samples) {
  if (num_samples < 1) {
    throw std::invalid_argument("autocorrelation: num_samples must be >= 1");
  }
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (int k = 0; k < num_samples; ++k) {
    ClarkeConfig c = cfg;
    c.seed = mixSeed(cfg.seed, 0x41c0u, static_cast<std::uint64_t>(k));
    SisoClarke h(c);
    const Complex h0 = h.sample(0.0);
    const Complex h1 = h.sample(delta_t);
    num += h0 * std::conj(h1);
    den += std::norm(h0);
  }
  return num / den;
}

double coherenceTime(double doppler_hz, double x_percent,
                     CoherenceMethod method) {
  if (!(doppler_hz > 0.0)) {
    throw std::invalid_argument("coherenceTime: doppler_hz must be positive");
  }
  if (!(x_percent > 0.0 && x_percent < 100.0)) {
    throw std::invalid_argument("coherenceTime: x_percent out of (0, 100)");
  }
  if (method == CoherenceMethod::Formula) {
    if (x_percent != 50.0) {
      throw std::invalid_argument("coherenceTime: formula valid for x = 50 only");
    }
    return 9.0 / (16.0 * std::numbers::pi * doppler_hz);
  }

  const double target = x_percent / 100.0;
  // J0 decreases from 1 toward its first zero at 2 pi F_d dt ~ 2.405;
  // bracket the first crossing of the target level.
  double hi = 2.404 / (2.0 * std::numbers::pi * doppler_hz);
  double lo = 0.0;
  while (besselJ0(2.0 * std::numbers::pi * doppler_hz * hi) > target) {
    hi *= 1.5;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (besselJ0(2.0 * std::numbers::pi * doppler_hz * mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-6 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double dmiDb(const ChannelProcess& ch, double delta_t, int num_draws) {
  if (ch.cols() <= ch.rows()) {
    throw std::invalid_argument("dmiDb: need cols > rows for a null space");
  }
  if (num_draws < 1) {
    throw std::invalid_argument("dmiDb: num_draws must be >= 1");
  }
  double acc = 0.0;
  for (int k = 0; k < num_draws; ++k) {
    ClarkeConfig c = ch.config();
    c.seed = mixSeed(ch.config().seed, 0xd311u, static_cast<std::uint64_t>(k));
    ChannelProcess draw(ch.rows(), ch.cols(), c);
    const Matrix h0 = draw.sample(0.0);
    const Matrix h1 = draw.sample(delta_t);
    const Matrix kernel = nullSpace(h0);
    const double num = spectralNorm(h1 * kernel);
    const double den = spectralNorm(h1);
    const double ratio2 = std::max((num * num) / (den * den), 1e-30);
    acc += 10.0 * std::log10(ratio2);
  }
  return acc / num_draws;
}

}  // namespace bnst
