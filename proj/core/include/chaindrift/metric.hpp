#pragma once

// Hybrid semantic distortion: weighted fact-set Jaccard distance blended
// with normalized embedding cosine distance via a convex weight lambda.

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaindrift/embeddings.hpp"

namespace chaindrift {

struct Fact {
  std::string surface;  // normalized token sequence, space-joined, >= 2 tokens
  double weight = 0.0;  // nonnegative
};

class FactSet {
 public:
  // keyed by surface; map keeps iteration deterministic
  std::map<std::string, double> weights;
  bool normalized = false;

  bool empty() const { return weights.empty(); }
  std::size_t size() const { return weights.size(); }
  bool contains(const std::string& surface) const { return weights.count(surface) > 0; }
  double total_weight() const;

  // Scales weights to sum to 1 and sets the flag; no-op on an empty set.
  void normalize();
};

// Noun-phrase chunks of >= 2 tokens with TF weights normalized to sum 1.
FactSet extract_facts(std::string_view text);

// 1 - sum(min weights over intersection) / sum(max weights over union).
// Both empty -> 0; exactly one empty -> 1; zero union weight -> 0.
double weighted_jaccard(const FactSet& ref, const FactSet& obs);

struct DistortionBreakdown {
  double d_set = 0.0;
  double d_emb = 0.0;
  double lambda = 0.0;
  double d_sem = 0.0;
};

void to_json(nlohmann::json& j, const DistortionBreakdown& b);
void from_json(const nlohmann::json& j, DistortionBreakdown& b);

DistortionBreakdown hybrid_distortion(const std::string& ref_text, const std::string& obs_text,
                                      double lambda, EmbeddingProvider& embedder);

// Running sums of per-step distortions; every delta must lie in [0, 1].
std::vector<double> cumulative_distortion(std::span<const double> deltas);

}  // namespace chaindrift
