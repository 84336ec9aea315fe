#include "chaindrift/metric.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "chaindrift/errors.hpp"
#include "chaindrift/text.hpp"

namespace chaindrift {

namespace {

constexpr double kEps = 1e-12;

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Non-overlapping occurrences of `pattern` inside `tokens`.
std::size_t count_occurrences(const std::vector<std::string>& tokens,
                              const std::vector<std::string>& pattern) {
  if (pattern.empty() || pattern.size() > tokens.size()) return 0;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + pattern.size() <= tokens.size()) {
    if (std::equal(pattern.begin(), pattern.end(), tokens.begin() + i)) {
      ++count;
      i += pattern.size();
    } else {
      ++i;
    }
  }
  return count;
}

}  // namespace

double FactSet::total_weight() const {
  double sum = 0.0;
  for (const auto& [surface, w] : weights) sum += w;
  return sum;
}

void FactSet::normalize() {
  if (weights.empty()) {
    normalized = true;
    return;
  }
  const double total = total_weight();
  if (total > 0.0) {
    for (auto& [surface, w] : weights) w /= total;
  } else {
    // all-zero weights: fall back to uniform so the sum-to-1 invariant holds
    const double uniform = 1.0 / static_cast<double>(weights.size());
    for (auto& [surface, w] : weights) w = uniform;
  }
  normalized = true;
}

FactSet extract_facts(std::string_view input) {
  const auto tagged = text::tag_tokens(input);
  std::vector<std::string> tokens;
  tokens.reserve(tagged.size());
  for (const auto& [tok, tag] : tagged) tokens.push_back(tok);

  FactSet out;
  for (const auto& [begin, end] : text::chunk_spans(tagged)) {
    if (end - begin < 2) continue;  // single-word chunks are dropped
    std::vector<std::string> chunk(tokens.begin() + begin, tokens.begin() + end);
    std::string surface = chunk[0];
    for (std::size_t k = 1; k < chunk.size(); ++k) {
      surface += ' ';
      surface += chunk[k];
    }
    if (out.contains(surface)) continue;
    out.weights[surface] = static_cast<double>(count_occurrences(tokens, chunk));
  }
  out.normalize();
  return out;
}

double weighted_jaccard(const FactSet& ref, const FactSet& obs) {
  for (const auto* fs : {&ref, &obs}) {
    for (const auto& [surface, w] : fs->weights) {
      if (w < 0.0) {
        throw ContractError("weighted_jaccard: negative weight for fact \"" + surface + "\"");
      }
    }
  }
  if (ref.empty() && obs.empty()) return 0.0;
  if (ref.empty() || obs.empty()) return 1.0;

  double intersection = 0.0;
  double union_weight = 0.0;
  auto it_a = ref.weights.begin();
  auto it_b = obs.weights.begin();
  while (it_a != ref.weights.end() || it_b != obs.weights.end()) {
    if (it_b == obs.weights.end() || (it_a != ref.weights.end() && it_a->first < it_b->first)) {
      union_weight += it_a->second;
      ++it_a;
    } else if (it_a == ref.weights.end() || it_b->first < it_a->first) {
      union_weight += it_b->second;
      ++it_b;
    } else {
      intersection += std::min(it_a->second, it_b->second);
      union_weight += std::max(it_a->second, it_b->second);
      ++it_a;
      ++it_b;
    }
  }
  if (union_weight == 0.0) return 0.0;
  return 1.0 - intersection / union_weight;
}

void to_json(nlohmann::json& j, const DistortionBreakdown& b) {
  j = nlohmann::json{
      {"d_set", b.d_set}, {"d_emb", b.d_emb}, {"lambda", b.lambda}, {"d_sem", b.d_sem}};
}

void from_json(const nlohmann::json& j, DistortionBreakdown& b) {
  j.at("d_set").get_to(b.d_set);
  j.at("d_emb").get_to(b.d_emb);
  j.at("lambda").get_to(b.lambda);
  j.at("d_sem").get_to(b.d_sem);
}

DistortionBreakdown hybrid_distortion(const std::string& ref_text, const std::string& obs_text,
                                      double lambda, EmbeddingProvider& embedder) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ContractError("hybrid_distortion: lambda must lie in [0, 1]");
  }

  DistortionBreakdown out;
  out.lambda = lambda;
  out.d_set = weighted_jaccard(extract_facts(ref_text), extract_facts(obs_text));

  if (is_blank(ref_text) || is_blank(obs_text)) {
    out.d_emb = 1.0;  // empty text pins the semantic distance to maximal
  } else {
    EmbeddingVector ref_vec;
    EmbeddingVector obs_vec;
    try {
      ref_vec = embedder.embed_text(ref_text);
    } catch (const ProviderError& e) {
      throw ProviderError(std::string("embedding failed for reference text (index 0): ") +
                          e.what());
    }
    try {
      obs_vec = embedder.embed_text(obs_text);
    } catch (const ProviderError& e) {
      throw ProviderError(std::string("embedding failed for observed text (index 1): ") +
                          e.what());
    }
    out.d_emb = embedding_distance(ref_vec, obs_vec);
  }

  out.d_sem = (1.0 - lambda) * out.d_set + lambda * out.d_emb;
  return out;
}

std::vector<double> cumulative_distortion(std::span<const double> deltas) {
  std::vector<double> out;
  out.reserve(deltas.size());
  double running = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double d = deltas[i];
    if (!(d >= -kEps && d <= 1.0 + kEps)) {
      throw ContractError("cumulative_distortion: delta at step " + std::to_string(i + 1) +
                          " outside [0, 1]");
    }
    running += d;
    out.push_back(running);
  }
  return out;
}

}  // namespace chaindrift
