#pragma once

// End-to-end experiment tracks: runs chain grids, estimates first-step
// rates, attaches calibrated envelopes, and writes all result artifacts
// (traces.jsonl, aggregate.csv, envelopes.csv, summary.json, plot data).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaindrift/bounds.hpp"
#include "chaindrift/chain.hpp"

namespace chaindrift {

struct GridPoint {
  std::string config_id;
  ChainConfig config;
};

struct TrackSpec {
  std::string name;
  std::vector<GridPoint> grid;
  int chains_per_config = 0;
  double delta = 0.05;

  static const std::vector<std::string>& known_tracks();
  // baseline | lambda_sweep | long_chain | high_beta | noise, at the paper
  // grids and chain counts. Throws InputError for unknown names.
  static TrackSpec builtin(const std::string& name, std::uint64_t base_seed);
};

struct ConfigResult {
  std::string config_id;
  ChainConfig config;
  int chains = 0;
  std::vector<double> mean_by_step;
  std::vector<double> std_by_step;
  Envelope envelope;
  double r_hat = 0.0;
  std::optional<double> beta_hat;       // absent when the fit is undefined
  double gamma_hat_horizon = 0.0;
  std::optional<double> safety_margin;  // upper[T] / mean D(T); absent when mean is 0
  double violation = 0.0;
  double runtime_s = 0.0;  // populated only when timings are enabled
};

struct TrackResult {
  std::string track;
  std::string responder;
  double delta = 0.05;
  std::vector<ConfigResult> configs;
  std::vector<ChainTrace> traces;  // all chains, grid order
};

struct RunOptions {
  std::optional<int> chains_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> delta_override;
  std::optional<std::string> corpus_path;  // text mode; generated when unset
  bool record_timings = false;  // wall-clock in summary.json breaks byte determinism
};

TrackResult run_track(const TrackSpec& spec, const RunOptions& options);

// Writes traces.jsonl, tool_calls.jsonl (when any), aggregate.csv,
// envelopes.csv, summary.json and plot.csv into the track directory.
void write_track_outputs(const TrackResult& result, const std::string& track_dir);

// One CSV with columns {t, mean, std, envelope_expected, envelope_upper,
// config columns}; header-only when the result is empty.
void emit_plot_data(const TrackResult& result, const std::string& csv_path);

// <out_dir>/results_<responder>/<track>
std::string track_directory(const std::string& out_dir, const std::string& responder,
                            const std::string& track);

}  // namespace chaindrift
