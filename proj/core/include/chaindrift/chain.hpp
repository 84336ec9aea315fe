#pragma once

// Adaptive query-chain simulator with geometric-decay dependence.
//
// A latent AR(1) driver x <- beta*x + sqrt(1-beta^2)*xi keeps lag-k
// autocorrelation at beta^k, so the diagnostics module can be validated
// end to end. Score mode turns the driver into distortion values directly;
// text mode renders retrieved facts and corrupts them, measuring distortion
// with the real metric.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaindrift/metric.hpp"
#include "chaindrift/registry.hpp"
#include "chaindrift/rng.hpp"
#include "chaindrift/tools.hpp"

namespace chaindrift {

enum class ChainMode { Score, Text };
enum class Responder { Bundled, External };

struct ChainConfig {
  int horizon = 10;  // T
  double beta = 0.7;
  double lambda = 0.5;
  std::uint64_t seed = 42;
  std::uint64_t chain_index = 0;
  ChainMode mode = ChainMode::Score;
  double base_rate = 0.5;              // r0
  std::optional<double> set_rate;      // r_set; defaults to base_rate
  std::optional<double> emb_rate;      // r_emb; defaults to base_rate
  double noise_sigma = 0.05;
  double tool_noise = 0.0;
  std::optional<int> reground_interval;  // m
  int branching = 1;                     // B; fixed 1 in v1, carried for bounds
  Responder responder = Responder::Bundled;

  double rate_set() const { return set_rate.value_or(base_rate); }
  double rate_emb() const { return emb_rate.value_or(base_rate); }

  void validate() const;  // throws ContractError / InputError
  mcp::json to_json() const;
  static ChainConfig from_json(const mcp::json& j);
};

struct DependenceState {
  double x = 0.0;  // reset to 0 at chain start and at each re-grounding
  int step = 0;
};

// Deterministic core used by tests that pin the innovation.
DependenceState advance_dependence(DependenceState state, double beta, double xi);
DependenceState advance_dependence(DependenceState state, double beta, CounterRng& rng);

struct QueryDraw {
  std::string query;
  bool adaptive = false;
};

// With probability beta derives a follow-up from a fact of the previous
// response; otherwise draws a fresh seed question. Falls back to fresh when
// no prior facts exist (always at step 1 and in score mode).
QueryDraw next_query(const DependenceState& state, const ChainConfig& config, CounterRng& rng,
                     const FactSet& prev_facts);

DistortionBreakdown synthetic_step(const DependenceState& state, const ChainConfig& config);

struct ChainStep {
  int step = 0;
  std::string query;
  bool adaptive_query = false;
  std::string ref_text;  // empty in score mode
  std::string obs_text;  // empty in score mode
  DistortionBreakdown delta;
  double cumulative = 0.0;
};

struct ChainTrace {
  ChainConfig config;
  std::vector<ChainStep> steps;
  std::vector<mcp::ToolCallRecord> tool_calls;
};

struct TextStepResult {
  std::string ref_text;
  std::string obs_text;
  DistortionBreakdown delta;
  mcp::ToolCallRecord call;
};

TextStepResult text_step(const DependenceState& state, const ChainConfig& config,
                         mcp::KnowledgeTool& knowledge, EmbeddingProvider& embedder,
                         CounterRng& rng, const std::string& query, int step);

// Executes T steps on the chain's own PRNG stream (derived from seed and
// chain_index); resets the dependence state after steps divisible by the
// re-grounding interval. Score mode needs no tools; text mode needs both.
ChainTrace run_chain(const ChainConfig& config, mcp::KnowledgeTool* knowledge = nullptr,
                     EmbeddingProvider* embedder = nullptr);

// A step failure aborts the chain; the partial trace rides on the error.
class ChainAborted : public Error {
 public:
  ChainAborted(std::string message, ChainTrace partial, int step)
      : Error(std::move(message)), partial_trace(std::move(partial)), failed_step(step) {}
  ChainTrace partial_trace;
  int failed_step = 0;
};

// Trace JSONL: one header line per chain (config echo) followed by one line
// per step.
void write_traces_jsonl(std::ostream& out, std::span<const ChainTrace> traces);
std::vector<ChainTrace> read_traces_jsonl(std::istream& in);

// Accepts a traces.jsonl file or a directory searched recursively.
std::vector<ChainTrace> load_traces(const std::string& path);

// Corruption operators used by text mode; exposed for direct testing.
namespace corrupt {

std::vector<std::string> drop_sentences(const std::vector<std::string>& sentences,
                                        CounterRng& rng, double prob);
std::vector<std::string> substitute_sentences(const std::vector<std::string>& sentences,
                                              std::span<const mcp::CorpusEntry> pool,
                                              CounterRng& rng, double prob);
std::string perturb_digits(const std::string& sentence, CounterRng& rng, double prob);

// Synonym substitution on non-chunk tokens plus a chunk-order shuffle;
// reverts to the input whenever the extracted fact set would change.
std::string paraphrase(const std::string& sentence, CounterRng& rng, double synonym_prob,
                       bool shuffle);

}  // namespace corrupt

}  // namespace chaindrift
