// Command-line front end for the four Monte-Carlo experiments. Each
// subcommand writes one CSV file into the output directory.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bnst/harness.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<int> channels;
  std::optional<long> slots;
  bool paper_scale = false;
};

void addCommon(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON scenario config");
  cmd->add_option("--seed", opts.seed, "Base RNG seed");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--channels", opts.channels, "Channel realizations");
  cmd->add_option("--slots", opts.slots, "Slots per channel");
  cmd->add_flag("--paper-scale", opts.paper_scale,
                "Full-scale experiment sizes (slow)");
}

bnst::ScenarioConfig buildConfig(const CommonOpts& opts) {
  bnst::ScenarioConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = bnst::configFromJsonFile(opts.config_path);
  }
  if (opts.paper_scale) {
    cfg.num_channels = 100;
    cfg.num_slots = 10000;
    cfg.ber_symbols = 10000000;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.channels) cfg.num_channels = *opts.channels;
  if (opts.slots) cfg.num_slots = *opts.slots;
  return cfg;
}

std::ofstream openOutput(const CommonOpts& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  const auto path = std::filesystem::path(opts.out_dir) / name;
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open output file " + path.string());
  }
  os.precision(12);
  return os;
}

std::vector<double> parseList(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind null-space learning/tracking simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string dopplers = "1,2,4";
  std::string snrs = "2,2.5,3,3.5,4,4.5,5,5.5,6,6.5";

  CLI::App* drift = app.add_subcommand("drift", "Null-space drift vs lag");
  addCommon(drift, opts);
  CLI::App* track = app.add_subcommand("track", "Single tracking trace");
  addCommon(track, opts);
  CLI::App* compare = app.add_subcommand("compare", "BNSL vs BNST metrics");
  addCommon(compare, opts);
  compare->add_option("--dopplers", dopplers, "Comma-separated F_d list (Hz)");
  CLI::App* ber = app.add_subcommand("ber", "Superimposed-frame BER vs SNR");
  addCommon(ber, opts);
  ber->add_option("--snrs", snrs, "Comma-separated SNR grid (dB)");

  CLI11_PARSE(app, argc, argv);

  try {
    const bnst::ScenarioConfig cfg = buildConfig(opts);
    if (drift->parsed()) {
      auto os = openOutput(opts, "drift.csv");
      bnst::runDrift(cfg, os);
    } else if (track->parsed()) {
      auto os = openOutput(opts, "track.csv");
      bnst::runTrack(cfg, os);
    } else if (compare->parsed()) {
      auto os = openOutput(opts, "compare.csv");
      bnst::runCompare(cfg, parseList(dopplers), os);
    } else if (ber->parsed()) {
      auto os = openOutput(opts, "ber.csv");
      bnst::runBer(cfg, parseList(snrs), os);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
