#include "chaindrift/chain.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chaindrift/datagen.hpp"
#include "chaindrift/text.hpp"
#include "chain_data.hpp"

namespace chaindrift {

namespace {

constexpr int kRetrieveTopK = 3;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string join_sentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

bool fact_sets_equal(const FactSet& a, const FactSet& b) {
  if (a.size() != b.size()) return false;
  auto it_a = a.weights.begin();
  auto it_b = b.weights.begin();
  for (; it_a != a.weights.end(); ++it_a, ++it_b) {
    if (it_a->first != it_b->first) return false;
    if (std::abs(it_a->second - it_b->second) > 1e-12) return false;
  }
  return true;
}

const char* mode_name(ChainMode m) { return m == ChainMode::Score ? "score" : "text"; }
const char* responder_name(Responder r) { return r == Responder::Bundled ? "bundled" : "external"; }

}  // namespace

void ChainConfig::validate() const {
  if (horizon < 1) throw ContractError("chain config: T must be >= 1");
  if (!(beta >= 0.0 && beta < 1.0)) throw ContractError("chain config: beta must lie in [0, 1)");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ContractError("chain config: lambda must lie in [0, 1]");
  }
  for (double rate : {base_rate, rate_set(), rate_emb()}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw ContractError("chain config: rates must lie in [0, 1]");
    }
  }
  if (noise_sigma < 0.0) throw ContractError("chain config: noise sigma must be >= 0");
  if (!(tool_noise >= 0.0 && tool_noise <= 1.0)) {
    throw ContractError("chain config: tool_noise must lie in [0, 1]");
  }
  if (reground_interval && *reground_interval < 1) {
    throw ContractError("chain config: reground interval must be >= 1");
  }
  if (branching < 1) throw ContractError("chain config: branching must be >= 1");
  if (beta * branching >= 1.0 && !reground_interval) {
    throw ContractError("chain config: beta*B must be < 1 unless re-grounding is set");
  }
}

mcp::json ChainConfig::to_json() const {
  mcp::json j{
      {"T", horizon},
      {"beta", beta},
      {"lambda", lambda},
      {"seed", seed},
      {"chain_index", chain_index},
      {"mode", mode_name(mode)},
      {"base_rate", base_rate},
      {"r_set", rate_set()},
      {"r_emb", rate_emb()},
      {"noise_sigma", noise_sigma},
      {"tool_noise", tool_noise},
      {"reground_interval", reground_interval ? mcp::json(*reground_interval) : mcp::json(nullptr)},
      {"branching", branching},
      {"responder", responder_name(responder)},
  };
  return j;
}

ChainConfig ChainConfig::from_json(const mcp::json& j) {
  static const std::vector<std::string> known = {
      "T",           "beta",        "lambda",      "seed",       "chain_index",
      "mode",        "base_rate",   "r_set",       "r_emb",      "noise_sigma",
      "tool_noise",  "reground_interval",          "branching",  "responder",
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw InputError("chain config: unknown key \"" + it.key() + "\"");
    }
  }

  ChainConfig c;
  c.horizon = j.value("T", c.horizon);
  c.beta = j.value("beta", c.beta);
  c.lambda = j.value("lambda", c.lambda);
  c.seed = j.value("seed", c.seed);
  c.chain_index = j.value("chain_index", c.chain_index);
  if (j.contains("mode")) {
    const auto mode = j["mode"].get<std::string>();
    if (mode == "score") {
      c.mode = ChainMode::Score;
    } else if (mode == "text") {
      c.mode = ChainMode::Text;
    } else {
      throw InputError("chain config: mode must be \"score\" or \"text\"");
    }
  }
  c.base_rate = j.value("base_rate", c.base_rate);
  if (j.contains("r_set")) c.set_rate = j["r_set"].get<double>();
  if (j.contains("r_emb")) c.emb_rate = j["r_emb"].get<double>();
  c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
  c.tool_noise = j.value("tool_noise", c.tool_noise);
  if (j.contains("reground_interval") && !j["reground_interval"].is_null()) {
    c.reground_interval = j["reground_interval"].get<int>();
  }
  c.branching = j.value("branching", c.branching);
  if (j.contains("responder")) {
    const auto responder = j["responder"].get<std::string>();
    if (responder == "bundled") {
      c.responder = Responder::Bundled;
    } else if (responder == "external") {
      c.responder = Responder::External;
    } else {
      throw InputError("chain config: responder must be \"bundled\" or \"external\"");
    }
  }
  c.validate();
  return c;
}

DependenceState advance_dependence(DependenceState state, double beta, double xi) {
  state.x = beta * state.x + std::sqrt(1.0 - beta * beta) * xi;
  state.step += 1;
  return state;
}

DependenceState advance_dependence(DependenceState state, double beta, CounterRng& rng) {
  return advance_dependence(state, beta, rng.next_normal());
}

QueryDraw next_query(const DependenceState&, const ChainConfig& config, CounterRng& rng,
                     const FactSet& prev_facts) {
  const bool want_adaptive = rng.next_coin(config.beta);
  if (want_adaptive && !prev_facts.empty()) {
    const std::size_t pick = rng.next_below(prev_facts.size());
    auto it = prev_facts.weights.begin();
    std::advance(it, static_cast<long>(pick));
    const auto& templates = chaindata::adaptive_templates();
    std::string pattern = templates[rng.next_below(templates.size())];
    const auto pos = pattern.find("%s");
    pattern.replace(pos, 2, it->first);
    return QueryDraw{std::move(pattern), true};
  }
  const auto& pool = mcp::seed_questions();
  return QueryDraw{pool[rng.next_below(pool.size())], false};
}

DistortionBreakdown synthetic_step(const DependenceState& state, const ChainConfig& config) {
  DistortionBreakdown d;
  d.lambda = config.lambda;
  d.d_set = clamp01(config.rate_set() + config.noise_sigma * state.x);
  d.d_emb = clamp01(config.rate_emb() + config.noise_sigma * state.x);
  d.d_sem = (1.0 - config.lambda) * d.d_set + config.lambda * d.d_emb;
  return d;
}

namespace corrupt {

std::vector<std::string> drop_sentences(const std::vector<std::string>& sentences,
                                        CounterRng& rng, double prob) {
  std::vector<std::string> kept;
  kept.reserve(sentences.size());
  for (const auto& s : sentences) {
    if (!rng.next_coin(prob)) kept.push_back(s);
  }
  return kept;
}

std::vector<std::string> substitute_sentences(const std::vector<std::string>& sentences,
                                              std::span<const mcp::CorpusEntry> pool,
                                              CounterRng& rng, double prob) {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    if (!pool.empty() && rng.next_coin(prob)) {
      out.push_back(pool[rng.next_below(pool.size())].text);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::string perturb_digits(const std::string& sentence, CounterRng& rng, double prob) {
  std::string out = sentence;
  for (char& ch : out) {
    if (ch >= '0' && ch <= '9' && rng.next_coin(prob)) {
      const int current = ch - '0';
      const int replacement = (current + 1 + static_cast<int>(rng.next_below(9))) % 10;
      ch = static_cast<char>('0' + replacement);
    }
  }
  return out;
}

std::string paraphrase(const std::string& sentence, CounterRng& rng, double synonym_prob,
                       bool shuffle) {
  const auto tagged = text::tag_tokens(sentence);
  if (tagged.empty()) return sentence;
  const auto spans = text::chunk_spans(tagged);

  // permutation of chunk contents across chunk slots; gaps stay in place
  std::vector<std::size_t> perm(spans.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (shuffle && perm.size() > 1) {
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    }
  }

  const auto& table = chaindata::synonyms();
  std::vector<std::string> rebuilt;
  rebuilt.reserve(tagged.size());
  std::size_t pos = 0;
  std::size_t span_idx = 0;
  while (pos < tagged.size()) {
    if (span_idx < spans.size() && pos == spans[span_idx].first) {
      const auto [src_begin, src_end] = spans[perm[span_idx]];
      for (std::size_t k = src_begin; k < src_end; ++k) rebuilt.push_back(tagged[k].first);
      pos = spans[span_idx].second;
      ++span_idx;
      continue;
    }
    std::string token = tagged[pos].first;
    for (const auto& [from, to] : table) {
      if (token == from) {
        if (rng.next_coin(synonym_prob)) token = to;
        break;
      }
    }
    rebuilt.push_back(std::move(token));
    ++pos;
  }

  std::string out;
  for (const auto& token : rebuilt) {
    if (!out.empty()) out += ' ';
    out += token;
  }

  // fact preservation is part of the operator's contract; revert otherwise
  if (!fact_sets_equal(extract_facts(out), extract_facts(sentence))) return sentence;
  return out;
}

}  // namespace corrupt

TextStepResult text_step(const DependenceState& state, const ChainConfig& config,
                         mcp::KnowledgeTool& knowledge, EmbeddingProvider& embedder,
                         CounterRng& rng, const std::string& query, int step) {
  const auto started = std::chrono::steady_clock::now();
  auto retrieval = knowledge.retrieve(query, kRetrieveTopK);
  const auto finished = std::chrono::steady_clock::now();

  TextStepResult result;
  result.call.step = step;
  result.call.tool = mcp::kKnowledgeMethod;
  result.call.query = query;
  result.call.results = mcp::json(retrieval.texts);
  result.call.latency_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();

  // ideal facts come from the true retrieval; the responder may see a
  // corrupted version of the tool output
  std::vector<std::string> used = retrieval.texts;
  if (!knowledge.corpus().empty() && rng.next_coin(config.tool_noise) && !used.empty()) {
    const std::size_t victim = rng.next_below(used.size());
    used[victim] = knowledge.corpus()[rng.next_below(knowledge.corpus().size())].text;
  }

  const double intensity = clamp01(config.base_rate + config.noise_sigma * state.x);
  std::span<const mcp::CorpusEntry> pool(knowledge.corpus());

  auto sentences = corrupt::drop_sentences(used, rng, intensity * 0.5);
  sentences = corrupt::substitute_sentences(sentences, pool, rng, intensity * 0.3);
  for (auto& sentence : sentences) {
    sentence = corrupt::perturb_digits(sentence, rng, intensity * 0.3);
    sentence = corrupt::paraphrase(sentence, rng, intensity * 0.6, rng.next_coin(intensity));
  }

  result.ref_text = join_sentences(retrieval.texts);
  result.obs_text = join_sentences(sentences);
  result.delta = hybrid_distortion(result.ref_text, result.obs_text, config.lambda, embedder);
  return result;
}

ChainTrace run_chain(const ChainConfig& config, mcp::KnowledgeTool* knowledge,
                     EmbeddingProvider* embedder) {
  config.validate();
  if (config.responder == Responder::External) {
    throw InputError("external responder is not available; use the bundled responder");
  }
  if (config.mode == ChainMode::Text && (knowledge == nullptr || embedder == nullptr)) {
    throw InputError("text mode requires a knowledge tool and an embedder");
  }

  CounterRng rng = CounterRng::for_stream(config.seed, config.chain_index);
  DependenceState state;
  ChainTrace trace;
  trace.config = config;
  trace.steps.reserve(static_cast<std::size_t>(config.horizon));

  FactSet prev_facts;
  double cumulative = 0.0;
  for (int t = 1; t <= config.horizon; ++t) {
    try {
      QueryDraw draw = next_query(state, config, rng, prev_facts);
      state = advance_dependence(state, config.beta, rng);

      ChainStep step;
      step.step = t;
      step.query = std::move(draw.query);
      step.adaptive_query = draw.adaptive;

      if (config.mode == ChainMode::Score) {
        step.delta = synthetic_step(state, config);
      } else {
        TextStepResult text = text_step(state, config, *knowledge, *embedder, rng, step.query, t);
        step.ref_text = std::move(text.ref_text);
        step.obs_text = std::move(text.obs_text);
        step.delta = text.delta;
        trace.tool_calls.push_back(std::move(text.call));
        prev_facts = extract_facts(step.obs_text);
      }

      cumulative += step.delta.d_sem;
      step.cumulative = cumulative;
      trace.steps.push_back(std::move(step));

      if (config.reground_interval && t % *config.reground_interval == 0) {
        state.x = 0.0;  // re-ground: dependence resets
      }
    } catch (const std::exception& e) {
      throw ChainAborted("chain " + std::to_string(config.chain_index) + " failed at step " +
                             std::to_string(t) + ": " + e.what(),
                         std::move(trace), t);
    }
  }
  return trace;
}

void write_traces_jsonl(std::ostream& out, std::span<const ChainTrace> traces) {
  for (const auto& trace : traces) {
    out << mcp::json{{"type", "header"}, {"config", trace.config.to_json()}}.dump() << '\n';
    for (const auto& step : trace.steps) {
      mcp::json delta;
      to_json(delta, step.delta);
      out << mcp::json{{"type", "step"},
                       {"step", step.step},
                       {"query", step.query},
                       {"adaptive", step.adaptive_query},
                       {"ref_text", step.ref_text},
                       {"obs_text", step.obs_text},
                       {"delta", delta},
                       {"cumulative", step.cumulative}}
                 .dump()
          << '\n';
    }
  }
}

std::vector<ChainTrace> read_traces_jsonl(std::istream& in) {
  std::vector<ChainTrace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    mcp::json j;
    try {
      j = mcp::json::parse(line);
    } catch (const mcp::json::exception& e) {
      throw InputError("traces line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      ChainTrace trace;
      trace.config = ChainConfig::from_json(j.at("config"));
      traces.push_back(std::move(trace));
    } else if (type == "step") {
      if (traces.empty()) {
        throw InputError("traces line " + std::to_string(line_no) + ": step before header");
      }
      ChainStep step;
      step.step = j.at("step").get<int>();
      step.query = j.value("query", "");
      step.adaptive_query = j.value("adaptive", false);
      step.ref_text = j.value("ref_text", "");
      step.obs_text = j.value("obs_text", "");
      from_json(j.at("delta"), step.delta);
      step.cumulative = j.at("cumulative").get<double>();
      traces.back().steps.push_back(std::move(step));
    } else {
      throw InputError("traces line " + std::to_string(line_no) + ": unknown record type");
    }
  }
  return traces;
}

std::vector<ChainTrace> load_traces(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().filename() == "traces.jsonl") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InputError("no traces.jsonl found under " + path);
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else {
    throw InputError("trace path does not exist: " + path);
  }

  std::vector<ChainTrace> all;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open trace file: " + file);
    auto traces = read_traces_jsonl(in);
    for (auto& t : traces) all.push_back(std::move(t));
  }
  return all;
}

}  // namespace chaindrift
