#include "bnst/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bnst/entypes.hpp"

namespace bnst {
namespace {

using nlohmann::json;

json toJson(const ScenarioConfig& c) {
  return json{{"nt", c.nt},
              {"nr", c.nr},
              {"fc_hz", c.fc_hz},
              {"fd_hz", c.fd_hz},
              {"ts_s", c.ts_s},
              {"tfb_s", c.tfb_s},
              {"num_channels", c.num_channels},
              {"num_slots", c.num_slots},
              {"ber_symbols", c.ber_symbols},
              {"num_paths", c.num_paths},
              {"noise_variance", c.noise_variance},
              {"theta0", c.theta0},
              {"codec_n", c.codec_n},
              {"codec_m", c.codec_m},
              {"seed", c.seed},
              {"tracker",
               {{"p_tr_db", c.tracker.p_tr_db},
                {"theta_max_small", c.tracker.theta_max_small},
                {"theta_max_large", c.tracker.theta_max_large},
                {"doppler_split_hz", c.tracker.doppler_split_hz},
                {"theta_tilde_track", c.tracker.theta_tilde_track},
                {"eta_track", c.tracker.eta_track},
                {"acq_theta_tilde", c.tracker.acquisition.theta_tilde},
                {"acq_theta_max", c.tracker.acquisition.theta_max},
                {"acq_eta", c.tracker.acquisition.eta}}}};
}

void writeHeader(const ScenarioConfig& cfg, std::ostream& os) {
  std::ostringstream h;
  h << std::hex << cfg.hash();
  os << "# config_hash=" << h.str() << " seed=" << cfg.seed << '\n';
}

Matrix randomComplexGaussian(Eigen::Index rows, Eigen::Index cols,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

Matrix randomUnitary(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix a = randomComplexGaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

Vector randomLearningVector(Eigen::Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uphi(-std::numbers::pi,
                                              std::numbers::pi);
  if (dim == 1) {
    Vector r(1);
    r(0) = std::polar(1.0, uphi(rng));
    return r;
  }
  std::uniform_real_distribution<double> utheta(-std::numbers::pi / 2.0,
                                                std::numbers::pi / 2.0);
  return probeVector(dim, 0, 1, utheta(rng), uphi(rng));
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(nt > nr && nr >= 1)) {
    throw std::invalid_argument("config: need nt > nr >= 1");
  }
  if (!(ts_s > 0.0 && tfb_s > 0.0)) {
    throw std::invalid_argument("config: durations must be positive");
  }
  if (num_channels < 1 || num_slots < 1) {
    throw std::invalid_argument("config: need at least one channel and slot");
  }
  if (codec_m < 1 || codec_n % codec_m != 0) {
    throw std::invalid_argument("config: codec_m must divide codec_n");
  }
}

std::string ScenarioConfig::canonicalJson() const { return toJson(*this).dump(); }

std::uint64_t ScenarioConfig::hash() const {
  // FNV-1a over the canonical serialization
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonicalJson()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

ScenarioConfig configFromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  json j = json::parse(in);
  ScenarioConfig c;
  c.nt = j.value("nt", c.nt);
  c.nr = j.value("nr", c.nr);
  c.fc_hz = j.value("fc_hz", c.fc_hz);
  c.fd_hz = j.value("fd_hz", c.fd_hz);
  c.ts_s = j.value("ts_s", c.ts_s);
  c.tfb_s = j.value("tfb_s", c.tfb_s);
  c.num_channels = j.value("num_channels", c.num_channels);
  c.num_slots = j.value("num_slots", c.num_slots);
  c.ber_symbols = j.value("ber_symbols", c.ber_symbols);
  c.num_paths = j.value("num_paths", c.num_paths);
  c.noise_variance = j.value("noise_variance", c.noise_variance);
  c.theta0 = j.value("theta0", c.theta0);
  c.codec_n = j.value("codec_n", c.codec_n);
  c.codec_m = j.value("codec_m", c.codec_m);
  c.seed = j.value("seed", c.seed);
  if (j.contains("tracker")) {
    const json& t = j["tracker"];
    c.tracker.p_tr_db = t.value("p_tr_db", c.tracker.p_tr_db);
    c.tracker.theta_max_small =
        t.value("theta_max_small", c.tracker.theta_max_small);
    c.tracker.theta_max_large =
        t.value("theta_max_large", c.tracker.theta_max_large);
    c.tracker.doppler_split_hz =
        t.value("doppler_split_hz", c.tracker.doppler_split_hz);
    c.tracker.theta_tilde_track =
        t.value("theta_tilde_track", c.tracker.theta_tilde_track);
    c.tracker.eta_track = t.value("eta_track", c.tracker.eta_track);
    c.tracker.acquisition.theta_tilde =
        t.value("acq_theta_tilde", c.tracker.acquisition.theta_tilde);
    c.tracker.acquisition.theta_max =
        t.value("acq_theta_max", c.tracker.acquisition.theta_max);
    c.tracker.acquisition.eta = t.value("acq_eta", c.tracker.acquisition.eta);
  }
  return c;
}

void runDrift(const ScenarioConfig& cfg, std::ostream& os) {
  cfg.validate();
  writeHeader(cfg, os);
  os << "delta_t,rho_abs,dmi_db\n";
  ClarkeConfig clarke{cfg.fd_hz, cfg.num_paths, cfg.seed};
  const ChannelProcess ch(cfg.nr, cfg.nt, clarke);
  const int draws = cfg.num_channels;
  for (int i = 0; i <= 30; ++i) {
    const double frac = 0.01 * i;  // lag as a fraction of 1/F_d
    const double dt = cfg.fd_hz > 0.0 ? frac / cfg.fd_hz : frac;
    const double rho = std::abs(autocorrelation(clarke, dt, 40 * draws));
    const double dmi = dmiDb(ch, dt, draws);
    os << dt << ',' << rho << ',' << dmi << '\n';
  }
}

void runTrack(const ScenarioConfig& cfg, std::ostream& os) {
  cfg.validate();
  writeHeader(cfg, os);
  ClarkeConfig clarke{cfg.fd_hz, cfg.num_paths, cfg.seed};
  const ChannelProcess ch(cfg.nr, cfg.nt, clarke);
  const TrackingTrace trace =
      track(ch, cfg.tracker, cfg.num_slots, cfg.tfb_s, cfg.ts_s,
            cfg.noise_variance, TrackMode::Bnst, mixSeed(cfg.seed, 0x707eu));
  writeCsv(trace, os);
}

void runCompare(const ScenarioConfig& cfg, const std::vector<double>& dopplers,
                std::ostream& os) {
  cfg.validate();
  if (dopplers.empty()) {
    throw std::invalid_argument("runCompare: empty doppler list");
  }
  writeHeader(cfg, os);
  os << "fd,algo,p95,p90,p85,avg\n";
  for (std::size_t fi = 0; fi < dopplers.size(); ++fi) {
    const double fd = dopplers[fi];
    for (TrackMode mode : {TrackMode::BnslOnly, TrackMode::Bnst}) {
      // independent channel realizations, dispatched in parallel and merged
      // in realization order
      std::vector<std::future<TrackingTrace>> futures;
      futures.reserve(static_cast<std::size_t>(cfg.num_channels));
      for (int c = 0; c < cfg.num_channels; ++c) {
        futures.push_back(std::async(std::launch::async, [&, fd, c, mode]() {
          ClarkeConfig clarke{fd, cfg.num_paths,
                              mixSeed(cfg.seed, fi, static_cast<std::uint64_t>(c))};
          const ChannelProcess ch(cfg.nr, cfg.nt, clarke);
          return track(ch, cfg.tracker, cfg.num_slots, cfg.tfb_s, cfg.ts_s,
                       cfg.noise_variance, mode,
                       mixSeed(cfg.seed, 0x5eedu, static_cast<std::uint64_t>(c)));
        }));
      }
      TrackingTrace pooled;
      for (auto& f : futures) {
        TrackingTrace t = f.get();
        pooled.slots.insert(pooled.slots.end(), t.slots.begin(), t.slots.end());
        pooled.num_adaptations += t.num_adaptations;
        pooled.total_queries += t.total_queries;
      }
      os << fd << ',' << (mode == TrackMode::Bnst ? "bnst" : "bnsl") << ','
         << metricPx(pooled, 95.0) << ',' << metricPx(pooled, 90.0) << ','
         << metricPx(pooled, 85.0) << ',' << averageInterferenceDb(pooled)
         << '\n';
    }
  }
}

namespace {

struct BerPartial {
  long errors = 0;
  long symbols = 0;
  double dy1_sum_db = 0.0;
  long frames = 0;
};

BerPartial berChannelWorker(const ScenarioConfig& cfg, double snr_lin,
                            long frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index nt = cfg.nt;
  const Eigen::Index nr = cfg.nr;
  const Eigen::Index n_rx = nt;  // SU-Rx antenna count

  const Matrix h12 = randomComplexGaussian(nr, nt, rng);
  const Matrix h22 = randomComplexGaussian(n_rx, nt, rng);
  const Matrix t = randomUnitary(nt, rng).leftCols(nt - nr);
  const Vector r1 = randomLearningVector(nt - nr, rng);

  const Vector v = h22 * (t * r1);
  const double sigma2 = v.squaredNorm() / (static_cast<double>(n_rx) * snr_lin);
  const double sigma1 =
      (h12 * (t * r1)).squaredNorm() / (static_cast<double>(nr) * snr_lin);

  const SuperpositionAlphabet alphabet = binaryAlphabet(cfg.theta0);
  const int nbits = capacityBits(cfg.codec_n, cfg.codec_m);
  std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
  std::bernoulli_distribution coin(0.5);

  BerPartial out;
  for (long f = 0; f < frames; ++f) {
    std::vector<bool> bits(static_cast<std::size_t>(nbits));
    for (auto&& b : bits) b = coin(rng);
    const std::vector<int> seq = encodeBits(bits, cfg.codec_n, cfg.codec_m);
    const SuperposedFrame frame = superimpose(r1, seq, alphabet);

    std::vector<Vector> y2;
    y2.reserve(frame.transmit_vectors.size());
    for (const Vector& x : frame.transmit_vectors) {
      Vector y = h22 * (t * x);
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) += Complex(gauss(rng), gauss(rng));
      }
      y2.push_back(std::move(y));
    }
    const Vector ybar = receiverAverage(y2);
    for (std::size_t s = 0; s < y2.size(); ++s) {
      if (decodeSymbol(y2[s], ybar, alphabet) != seq[s]) ++out.errors;
      ++out.symbols;
    }
    out.dy1_sum_db +=
        deltaY1Db(h12, t, r1, frame, sigma1, MeasurementModel::Q1, rng);
    ++out.frames;
  }
  return out;
}

}  // namespace

void runBer(const ScenarioConfig& cfg, const std::vector<double>& snr_grid_db,
            std::ostream& os) {
  cfg.validate();
  if (snr_grid_db.empty()) {
    throw std::invalid_argument("runBer: empty SNR grid");
  }
  writeHeader(cfg, os);
  os << "snr_db,ps,avg_delta_y1_db\n";
  const long frames_per_channel = std::max<long>(
      1, (cfg.ber_symbols + static_cast<long>(cfg.codec_n) * cfg.num_channels - 1) /
             (static_cast<long>(cfg.codec_n) * cfg.num_channels));
  for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
    const double snr_lin = std::pow(10.0, snr_grid_db[si] / 10.0);
    std::vector<std::future<BerPartial>> futures;
    futures.reserve(static_cast<std::size_t>(cfg.num_channels));
    for (int c = 0; c < cfg.num_channels; ++c) {
      futures.push_back(std::async(std::launch::async, [&, snr_lin, c]() {
        return berChannelWorker(
            cfg, snr_lin, frames_per_channel,
            mixSeed(cfg.seed, 0xbe4u + si, static_cast<std::uint64_t>(c)));
      }));
    }
    BerPartial total;
    for (auto& f : futures) {
      const BerPartial p = f.get();
      total.errors += p.errors;
      total.symbols += p.symbols;
      total.dy1_sum_db += p.dy1_sum_db;
      total.frames += p.frames;
    }
    os << snr_grid_db[si] << ','
       << static_cast<double>(total.errors) / static_cast<double>(total.symbols)
       << ',' << total.dy1_sum_db / static_cast<double>(total.frames) << '\n';
  }
}

}  // namespace bnst
