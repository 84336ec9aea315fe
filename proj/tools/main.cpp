// chaindrift: measure semantic distortion across tool-call chains, compute
// concentration envelopes, run experiment tracks, and serve the MCP tools.
//
// All subcommands print JSON on stdout; human-readable notes go to stderr.
// Exit codes: 0 success, 1 input/usage error, 2 internal error.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "chaindrift/bounds.hpp"
#include "chaindrift/chain.hpp"
#include "chaindrift/datagen.hpp"
#include "chaindrift/diagnostics.hpp"
#include "chaindrift/embeddings.hpp"
#include "chaindrift/experiments.hpp"
#include "chaindrift/metric.hpp"
#include "chaindrift/server.hpp"

namespace {

using chaindrift::mcp::json;

struct ProviderChoice {
  std::string name = "bundled";
  std::string endpoint;
  int timeout_ms = 5000;
  int dim = 0;  // 0 -> accept whatever the service returns
};

std::shared_ptr<chaindrift::EmbeddingProvider> make_provider(const ProviderChoice& choice) {
  if (choice.name == "bundled") {
    return std::make_shared<chaindrift::CachingEmbedder>(
        std::make_shared<chaindrift::BundledEmbedder>());
  }
  if (choice.name == "external") {
    if (choice.endpoint.empty()) {
      throw chaindrift::InputError("external provider requires --endpoint");
    }
    return std::make_shared<chaindrift::CachingEmbedder>(
        std::make_shared<chaindrift::ExternalEmbedder>(
            choice.endpoint, std::chrono::milliseconds(choice.timeout_ms),
            static_cast<std::size_t>(choice.dim)));
  }
  throw chaindrift::InputError("provider must be \"bundled\" or \"external\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chaindrift::InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// `run` configuration file; CLI flags take precedence over these values.
struct RunFileConfig {
  std::optional<std::string> track;
  std::optional<int> chains;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<std::string> out_dir;
  std::optional<std::string> corpus;
  std::optional<bool> timings;
  ProviderChoice provider;
  json chain_overrides = json::object();
};

RunFileConfig parse_run_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw chaindrift::InputError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw chaindrift::InputError(path + ": config must be a JSON object");

  static const std::vector<std::string> known = {"track", "chains", "seed",   "delta",
                                                 "out_dir", "corpus", "timings", "provider",
                                                 "chain"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw chaindrift::InputError(path + ": unknown config key \"" + it.key() + "\"");
    }
  }

  RunFileConfig cfg;
  if (j.contains("track")) cfg.track = j["track"].get<std::string>();
  if (j.contains("chains")) cfg.chains = j["chains"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("corpus")) cfg.corpus = j["corpus"].get<std::string>();
  if (j.contains("timings")) cfg.timings = j["timings"].get<bool>();
  if (j.contains("provider")) {
    const json& p = j["provider"];
    cfg.provider.name = p.value("name", "bundled");
    cfg.provider.endpoint = p.value("endpoint", "");
    cfg.provider.timeout_ms = p.value("timeout_ms", 5000);
    cfg.provider.dim = p.value("dim", 0);
  }
  if (j.contains("chain")) {
    if (!j["chain"].is_object()) {
      throw chaindrift::InputError(path + ": \"chain\" must be an object");
    }
    static const std::vector<std::string> overridable = {
        "mode",       "base_rate", "r_set",     "r_emb",
        "noise_sigma", "tool_noise", "reground_interval", "branching"};
    for (auto it = j["chain"].begin(); it != j["chain"].end(); ++it) {
      if (std::find(overridable.begin(), overridable.end(), it.key()) == overridable.end()) {
        throw chaindrift::InputError(path + ": chain override \"" + it.key() +
                                     "\" is not supported (grid parameters are fixed per track)");
      }
    }
    cfg.chain_overrides = j["chain"];
  }
  return cfg;
}

void apply_chain_overrides(chaindrift::ChainConfig& config, const json& overrides) {
  if (overrides.empty()) return;
  json merged = config.to_json();
  for (auto it = overrides.begin(); it != overrides.end(); ++it) merged[it.key()] = it.value();
  config = chaindrift::ChainConfig::from_json(merged);
}

int cmd_measure(const std::string& ref_path, const std::string& obs_path, double lambda,
                const ProviderChoice& provider_choice) {
  auto provider = make_provider(provider_choice);
  const auto breakdown = chaindrift::hybrid_distortion(read_file(ref_path), read_file(obs_path),
                                                       lambda, *provider);
  json j;
  to_json(j, breakdown);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_bounds(double alpha, double beta, int branching, std::optional<int> reground, int horizon,
               double eta) {
  chaindrift::DependencyParams params;
  params.alpha = alpha;
  params.beta = beta;
  params.branching = branching;
  params.reground_interval = reground;
  params.validate();

  json out;
  out["c_star"] = chaindrift::c_star(params);
  out["gamma_star"] = chaindrift::gamma_star(params);
  out["gamma_hat"] = chaindrift::gamma_hat(params, horizon);
  out["deviation"] = chaindrift::azuma_deviation(horizon, chaindrift::gamma_hat(params, horizon),
                                                 eta);
  out["T"] = horizon;
  out["eta"] = eta;
  if (beta > 0.0 && beta < 1.0) {
    out["horizon"] = chaindrift::effective_horizon(beta, eta);
  } else {
    out["horizon"] = nullptr;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_run(const std::string& track, const RunFileConfig& file_cfg,
            std::optional<int> chains_flag, std::optional<std::uint64_t> seed_flag,
            std::optional<double> delta_flag, std::optional<std::string> out_flag,
            std::optional<std::string> corpus_flag, bool timings_flag) {
  const std::uint64_t seed = seed_flag.value_or(file_cfg.seed.value_or(42));
  auto spec = chaindrift::TrackSpec::builtin(track, seed);
  for (auto& point : spec.grid) apply_chain_overrides(point.config, file_cfg.chain_overrides);

  chaindrift::RunOptions options;
  if (chains_flag) {
    options.chains_override = chains_flag;
  } else if (file_cfg.chains) {
    options.chains_override = file_cfg.chains;
  }
  if (delta_flag) {
    options.delta_override = delta_flag;
  } else if (file_cfg.delta) {
    options.delta_override = file_cfg.delta;
  }
  options.corpus_path = corpus_flag ? corpus_flag : file_cfg.corpus;
  options.record_timings = timings_flag || file_cfg.timings.value_or(false);

  const auto result = chaindrift::run_track(spec, options);

  const std::string out_dir = out_flag.value_or(file_cfg.out_dir.value_or("results"));
  const std::string dir = chaindrift::track_directory(out_dir, result.responder, result.track);
  chaindrift::write_track_outputs(result, dir);
  std::cerr << "wrote " << dir << "/{traces.jsonl, aggregate.csv, envelopes.csv, summary.json}\n";

  std::ifstream summary(dir + "/summary.json");
  std::cout << summary.rdbuf();
  return 0;
}

int cmd_diagnose(const std::string& traces_path, int max_lag) {
  const auto traces = chaindrift::load_traces(traces_path);
  if (traces.empty()) throw chaindrift::InputError("no traces found at " + traces_path);

  json out;
  const auto estimate = chaindrift::autocorrelation(traces, max_lag);
  out["autocorrelation"] =
      json{{"lags", estimate.lags}, {"rho", estimate.rho}, {"n_pairs", estimate.n_pairs}};
  out["beta_hat"] = chaindrift::fit_beta(estimate);

  auto embedder = chaindrift::BundledEmbedder();
  out["assumption_checks"] =
      chaindrift::assumption_checks(traces.front().config, traces, embedder).to_json();

  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_serve(bool stdio, const std::string& tcp_addr, const std::string& corpus_path,
              const std::string& snapshot_path, const std::string& log_path) {
  auto embedder = chaindrift::CachingEmbedder(std::make_shared<chaindrift::BundledEmbedder>());

  std::vector<chaindrift::mcp::CorpusEntry> corpus;
  std::optional<std::string> sidecar;
  if (!corpus_path.empty()) {
    corpus = chaindrift::mcp::load_corpus_jsonl(corpus_path);
    sidecar = corpus_path + ".emb";
  } else {
    std::cerr << "no --corpus given; using the generated bundled corpus\n";
    corpus = chaindrift::mcp::generate_corpus();
  }
  chaindrift::mcp::KnowledgeTool knowledge(std::move(corpus), embedder, sidecar);

  chaindrift::mcp::MarketSnapshot snapshot;
  if (!snapshot_path.empty()) {
    snapshot = chaindrift::mcp::load_snapshot(snapshot_path);
  } else {
    std::cerr << "no --snapshots given; using the generated bundled snapshot\n";
    snapshot = chaindrift::mcp::generate_snapshot();
  }
  chaindrift::mcp::FinancialTool financial(std::move(snapshot));

  const auto registry = chaindrift::mcp::make_default_registry(knowledge, financial);
  chaindrift::mcp::ToolCallLog log(log_path);

  if (stdio) {
    chaindrift::mcp::serve_stream(std::cin, std::cout, registry, log);
    return 0;
  }

  chaindrift::mcp::TcpServer server(registry, log);
  const auto port = server.start(tcp_addr);
  std::cerr << "listening on port " << port << "; ctrl-c to stop\n";
  for (;;) std::this_thread::sleep_for(std::chrono::seconds(3600));
}

int cmd_gen_data(const std::string& out_dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const auto corpus = chaindrift::mcp::generate_corpus();
  const std::string corpus_path = out_dir + "/knowledge_corpus.jsonl";
  chaindrift::mcp::write_corpus_jsonl(corpus_path, corpus);

  chaindrift::BundledEmbedder embedder;
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& entry : corpus) texts.push_back(entry.text);
  const std::string sidecar_path = corpus_path + ".emb";
  chaindrift::write_embedding_matrix(sidecar_path, embedder.embed_batch(texts));

  const std::string snapshot_path = out_dir + "/market_snapshots.json";
  chaindrift::mcp::write_snapshot(snapshot_path, chaindrift::mcp::generate_snapshot(seed));

  std::cout << json{{"written", {corpus_path, sidecar_path, snapshot_path}}}.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic distortion measurement and concentration envelopes for tool-call chains"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(38);

  // measure
  auto* measure = app.add_subcommand("measure", "hybrid distortion between two text files");
  std::string ref_path, obs_path;
  double lambda = 0.5;
  ProviderChoice provider;
  measure->add_option("ref", ref_path, "reference text file")->required();
  measure->add_option("obs", obs_path, "observed text file")->required();
  measure->add_option("--lambda", lambda, "semantic weight in [0,1] (default 0.5)");
  measure->add_option("--provider", provider.name, "bundled | external");
  measure->add_option("--endpoint", provider.endpoint, "external embedding service URL");
  measure->add_option("--timeout-ms", provider.timeout_ms, "external provider timeout");
  measure->add_option("--dim", provider.dim, "expected external embedding dimension");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form concentration quantities");
  double alpha = 1.0, beta = 0.7, eta = 0.05;
  int branching = 1, horizon_t = 10;
  int reground = 0;
  bounds->add_option("--alpha", alpha, "response stability in [0,1] (default 1)");
  bounds->add_option("--beta", beta, "decay rate in [0,1) (default 0.7)");
  bounds->add_option("--B", branching, "branching factor (default 1)");
  bounds->add_option("--m", reground, "re-grounding interval (default unset)");
  bounds->add_option("--T", horizon_t, "horizon for gamma_hat/deviation (default 10)");
  bounds->add_option("--eta", eta, "tail probability (default 0.05)");

  // horizon
  auto* horizon_cmd = app.add_subcommand("horizon", "effective information horizon");
  double h_beta = 0.7, h_eps = 0.05;
  horizon_cmd->add_option("--beta", h_beta, "decay rate in (0,1)")->required();
  horizon_cmd->add_option("--epsilon", h_eps, "influence threshold in (0,1]")->required();

  // run
  auto* run = app.add_subcommand("run", "run an experiment track and write artifacts");
  std::string track, config_path;
  int run_chains = -1;
  std::int64_t run_seed = -1;
  double run_delta = -1.0;
  std::string run_out, run_corpus;
  bool run_timings = false;
  run->add_option("--track", track,
                  "baseline | lambda_sweep | long_chain | high_beta | noise")->required();
  run->add_option("--config", config_path, "JSON config file (flags take precedence)");
  run->add_option("--chains", run_chains, "chains per grid point (default: paper counts)");
  run->add_option("--seed", run_seed, "base seed (default 42)");
  run->add_option("--delta", run_delta, "envelope confidence (default 0.05)");
  run->add_option("--out", run_out, "output directory (default results)");
  run->add_option("--corpus", run_corpus, "corpus JSONL for text mode (default: generated)");
  run->add_flag("--timings", run_timings,
                "record wall-clock runtime_s in summary.json (breaks byte reproducibility)");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "autocorrelation, beta fit, assumption checks");
  std::string traces_path;
  int max_lag = 10;
  diagnose->add_option("--traces", traces_path, "traces.jsonl file or directory")->required();
  diagnose->add_option("--max-lag", max_lag, "maximum lag K (default 10)");

  // serve
  auto* serve = app.add_subcommand("serve", "serve the MCP tools over stdio or TCP");
  bool serve_stdio = false;
  std::string serve_tcp, serve_corpus, serve_snapshots, serve_log = "tool_calls.jsonl";
  serve->add_flag("--stdio", serve_stdio, "newline-delimited JSON-RPC on stdin/stdout");
  serve->add_option("--tcp", serve_tcp, "listen address host:port (port 0 = ephemeral)");
  serve->add_option("--corpus", serve_corpus, "corpus JSONL path (default: generated)");
  serve->add_option("--snapshots", serve_snapshots, "market snapshot JSON (default: generated)");
  serve->add_option("--log", serve_log, "tool-call JSONL log path");

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "write the bundled corpus and market snapshots");
  std::string gen_out;
  std::uint64_t gen_seed = 20240101;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "snapshot walk seed (default 20240101)");

  try {
    app.parse(argc, argv);

    if (measure->parsed()) return cmd_measure(ref_path, obs_path, lambda, provider);
    if (bounds->parsed()) {
      return cmd_bounds(alpha, beta, branching,
                        reground > 0 ? std::optional<int>(reground) : std::nullopt, horizon_t,
                        eta);
    }
    if (horizon_cmd->parsed()) {
      std::cout << chaindrift::effective_horizon(h_beta, h_eps) << '\n';
      return 0;
    }
    if (run->parsed()) {
      RunFileConfig file_cfg;
      if (!config_path.empty()) file_cfg = parse_run_config(config_path);
      return cmd_run(track, file_cfg,
                     run_chains >= 0 ? std::optional<int>(run_chains) : std::nullopt,
                     run_seed >= 0 ? std::optional<std::uint64_t>(run_seed) : std::nullopt,
                     run_delta >= 0 ? std::optional<double>(run_delta) : std::nullopt,
                     run_out.empty() ? std::nullopt : std::optional<std::string>(run_out),
                     run_corpus.empty() ? std::nullopt : std::optional<std::string>(run_corpus),
                     run_timings);
    }
    if (diagnose->parsed()) return cmd_diagnose(traces_path, max_lag);
    if (serve->parsed()) {
      if (serve_stdio == serve_tcp.empty()) {  // exactly one of --stdio / --tcp
        return cmd_serve(serve_stdio, serve_tcp, serve_corpus, serve_snapshots, serve_log);
      }
      throw chaindrift::InputError("serve requires exactly one of --stdio or --tcp <addr>");
    }
    if (gen->parsed()) return cmd_gen_data(gen_out, gen_seed);

    std::cerr << app.help();
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // CLI11 prints usage; nonzero on error
  } catch (const chaindrift::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const chaindrift::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const chaindrift::ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const chaindrift::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const chaindrift::mcp::RpcFault& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
