#include "chaindrift/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "chaindrift/datagen.hpp"
#include "chaindrift/diagnostics.hpp"
#include "chaindrift/rng.hpp"

namespace chaindrift {

namespace {

namespace fs = std::filesystem;

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_csv(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::uint64_t grid_seed(std::uint64_t base_seed, std::size_t ordinal) {
  return mix64(mix64(base_seed) ^ (ordinal + 1));
}

ChainConfig base_config(int horizon, double beta, double lambda) {
  ChainConfig c;
  c.horizon = horizon;
  c.beta = beta;
  c.lambda = lambda;
  c.noise_sigma = 0.05;
  c.base_rate = 0.5;
  return c;
}

}  // namespace

const std::vector<std::string>& TrackSpec::known_tracks() {
  static const std::vector<std::string> names = {"baseline", "lambda_sweep", "long_chain",
                                                 "high_beta", "noise"};
  return names;
}

TrackSpec TrackSpec::builtin(const std::string& name, std::uint64_t base_seed) {
  TrackSpec spec;
  spec.name = name;
  spec.delta = 0.05;

  if (name == "baseline") {
    spec.chains_per_config = 50;
    ChainConfig c = base_config(10, 0.7, 0.5);
    spec.grid.push_back({"beta0.70_lambda0.50", c});
  } else if (name == "lambda_sweep") {
    spec.chains_per_config = 8;
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      ChainConfig c = base_config(30, 0.7, lambda);
      c.set_rate = 0.9;   // factual mismatch magnitude
      c.emb_rate = 0.17;  // paraphrase-level embedding distance
      spec.grid.push_back({"lambda" + fmt2(lambda), c});
    }
  } else if (name == "long_chain") {
    spec.chains_per_config = 6;
    for (double beta : {0.5, 0.7, 0.9}) {
      spec.grid.push_back({"beta" + fmt2(beta), base_config(60, beta, 0.5)});
    }
  } else if (name == "high_beta") {
    spec.chains_per_config = 6;
    for (double beta : {0.95, 0.98}) {
      spec.grid.push_back({"beta" + fmt2(beta), base_config(30, beta, 0.5)});
    }
  } else if (name == "noise") {
    spec.chains_per_config = 8;
    for (double noise : {0.0, 0.1, 0.2}) {
      ChainConfig c = base_config(30, 0.7, 0.5);
      c.mode = ChainMode::Text;
      c.tool_noise = noise;
      spec.grid.push_back({"noise" + fmt2(noise), c});
    }
  } else {
    throw InputError("unknown track \"" + name + "\"; expected one of baseline, lambda_sweep, "
                     "long_chain, high_beta, noise");
  }

  for (std::size_t g = 0; g < spec.grid.size(); ++g) {
    spec.grid[g].config.seed = grid_seed(base_seed, g);
  }
  return spec;
}

TrackResult run_track(const TrackSpec& spec, const RunOptions& options) {
  if (spec.grid.empty()) throw InputError("track has an empty grid");
  const int chains = options.chains_override.value_or(spec.chains_per_config);
  if (chains < 1) throw InputError("chain count must be >= 1");
  const double delta = options.delta_override.value_or(spec.delta);

  const bool needs_text =
      std::any_of(spec.grid.begin(), spec.grid.end(),
                  [](const GridPoint& g) { return g.config.mode == ChainMode::Text; });

  std::shared_ptr<EmbeddingProvider> embedder;
  std::unique_ptr<mcp::KnowledgeTool> knowledge;
  if (needs_text) {
    embedder = std::make_shared<CachingEmbedder>(std::make_shared<BundledEmbedder>());
    auto corpus = options.corpus_path ? mcp::load_corpus_jsonl(*options.corpus_path)
                                      : mcp::generate_corpus();
    knowledge = std::make_unique<mcp::KnowledgeTool>(std::move(corpus), *embedder);
  }

  TrackResult result;
  result.track = spec.name;
  result.responder = "bundled";
  result.delta = delta;

  for (std::size_t g = 0; g < spec.grid.size(); ++g) {
    const auto started = std::chrono::steady_clock::now();

    ChainConfig config = spec.grid[g].config;
    if (options.seed_override) config.seed = grid_seed(*options.seed_override, g);

    std::vector<ChainTrace> traces;
    traces.reserve(static_cast<std::size_t>(chains));
    for (int c = 0; c < chains; ++c) {
      ChainConfig chain_cfg = config;
      chain_cfg.chain_index = static_cast<std::uint64_t>(c);
      traces.push_back(run_chain(chain_cfg, knowledge.get(), embedder.get()));
    }

    const int horizon = config.horizon;
    ConfigResult cr;
    cr.config_id = spec.grid[g].config_id;
    cr.config = config;
    cr.chains = chains;
    cr.mean_by_step.assign(static_cast<std::size_t>(horizon), 0.0);
    cr.std_by_step.assign(static_cast<std::size_t>(horizon), 0.0);
    for (int t = 0; t < horizon; ++t) {
      double sum = 0.0;
      for (const auto& trace : traces) sum += trace.steps[static_cast<std::size_t>(t)].cumulative;
      const double mean = sum / chains;
      double sq = 0.0;
      for (const auto& trace : traces) {
        const double d = trace.steps[static_cast<std::size_t>(t)].cumulative - mean;
        sq += d * d;
      }
      cr.mean_by_step[static_cast<std::size_t>(t)] = mean;
      cr.std_by_step[static_cast<std::size_t>(t)] = chains > 1 ? std::sqrt(sq / (chains - 1)) : 0.0;
    }

    cr.r_hat = estimate_first_step_rate(traces);

    DependencyParams params;
    params.alpha = 1.0;
    params.beta = config.beta;
    params.branching = config.branching;
    params.reground_interval = config.reground_interval;
    params.delta_max = 1.0;
    cr.envelope = build_envelope(horizon, cr.r_hat, params, delta);
    cr.gamma_hat_horizon = cr.envelope.gamma;
    cr.violation = violation_rate(traces, cr.envelope);

    const double final_mean = cr.mean_by_step.back();
    if (final_mean > 0.0) cr.safety_margin = cr.envelope.upper.back() / final_mean;

    try {
      const int max_lag = std::min(10, horizon - 1);
      if (max_lag >= 2) cr.beta_hat = fit_beta(autocorrelation(traces, max_lag));
    } catch (const InputError&) {
      // zero-variance traces (sigma = 0) leave the fit undefined
    }

    const auto finished = std::chrono::steady_clock::now();
    if (options.record_timings) {
      cr.runtime_s = std::chrono::duration<double>(finished - started).count();
    }

    result.configs.push_back(std::move(cr));
    for (auto& trace : traces) result.traces.push_back(std::move(trace));
  }
  return result;
}

std::string track_directory(const std::string& out_dir, const std::string& responder,
                            const std::string& track) {
  return out_dir + "/results_" + responder + "/" + track;
}

void emit_plot_data(const TrackResult& result, const std::string& csv_path) {
  std::ofstream out(csv_path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open plot csv for writing: " + csv_path);
  out << "t,mean,std,envelope_expected,envelope_upper,config_id,T,beta,lambda,mode,tool_noise\n";
  for (const auto& cr : result.configs) {
    for (std::size_t t = 0; t < cr.mean_by_step.size(); ++t) {
      out << (t + 1) << ',' << fmt_csv(cr.mean_by_step[t]) << ',' << fmt_csv(cr.std_by_step[t])
          << ',' << fmt_csv(cr.envelope.expected[t]) << ',' << fmt_csv(cr.envelope.upper[t])
          << ',' << cr.config_id << ',' << cr.config.horizon << ',' << fmt_csv(cr.config.beta)
          << ',' << fmt_csv(cr.config.lambda) << ','
          << (cr.config.mode == ChainMode::Score ? "score" : "text") << ','
          << fmt_csv(cr.config.tool_noise) << '\n';
    }
  }
}

void write_track_outputs(const TrackResult& result, const std::string& track_dir) {
  fs::create_directories(track_dir);

  {
    std::ofstream out(track_dir + "/traces.jsonl", std::ios::trunc);
    if (!out) throw ConfigError("cannot write traces.jsonl under " + track_dir);
    write_traces_jsonl(out, result.traces);
  }

  bool any_calls = false;
  for (const auto& trace : result.traces) any_calls = any_calls || !trace.tool_calls.empty();
  if (any_calls) {
    std::ofstream out(track_dir + "/tool_calls.jsonl", std::ios::trunc);
    if (!out) throw ConfigError("cannot write tool_calls.jsonl under " + track_dir);
    for (const auto& trace : result.traces) {
      for (const auto& record : trace.tool_calls) out << record.to_json().dump() << '\n';
    }
  }

  {
    std::ofstream out(track_dir + "/aggregate.csv", std::ios::trunc);
    if (!out) throw ConfigError("cannot write aggregate.csv under " + track_dir);
    out << "track,config_id,t,mean,std,n\n";
    for (const auto& cr : result.configs) {
      for (std::size_t t = 0; t < cr.mean_by_step.size(); ++t) {
        out << result.track << ',' << cr.config_id << ',' << (t + 1) << ','
            << fmt_csv(cr.mean_by_step[t]) << ',' << fmt_csv(cr.std_by_step[t]) << ','
            << cr.chains << '\n';
      }
    }
  }

  {
    std::ofstream out(track_dir + "/envelopes.csv", std::ios::trunc);
    if (!out) throw ConfigError("cannot write envelopes.csv under " + track_dir);
    out << "config_id,t,expected,upper\n";
    for (const auto& cr : result.configs) {
      for (std::size_t t = 0; t < cr.envelope.expected.size(); ++t) {
        out << cr.config_id << ',' << (t + 1) << ',' << fmt_csv(cr.envelope.expected[t]) << ','
            << fmt_csv(cr.envelope.upper[t]) << '\n';
      }
    }
  }

  {
    mcp::json configs = mcp::json::array();
    for (const auto& cr : result.configs) {
      configs.push_back(mcp::json{
          {"config_id", cr.config_id},
          {"config", cr.config.to_json()},
          {"chains", cr.chains},
          {"r_hat", cr.r_hat},
          {"beta_hat", cr.beta_hat ? mcp::json(*cr.beta_hat) : mcp::json(nullptr)},
          {"gamma_hat", cr.gamma_hat_horizon},
          {"margin", cr.safety_margin ? mcp::json(*cr.safety_margin) : mcp::json(nullptr)},
          {"violation_rate", cr.violation},
          {"runtime_s", cr.runtime_s},
      });
    }
    const mcp::json summary{{"track", result.track},
                            {"responder", result.responder},
                            {"delta", result.delta},
                            {"configs", configs}};
    std::ofstream out(track_dir + "/summary.json", std::ios::trunc);
    if (!out) throw ConfigError("cannot write summary.json under " + track_dir);
    out << summary.dump(2) << '\n';
  }

  emit_plot_data(result, track_dir + "/plot.csv");
}

}  // namespace chaindrift
