#pragma once

// Dependence-structure estimation from traces: pooled autocorrelation,
// decay-rate fitting, and runtime assumption checks.

#include <span>
#include <string>
#include <vector>

#include "chaindrift/chain.hpp"

namespace chaindrift {

struct AutocorrEstimate {
  std::vector<int> lags;            // 1..K
  std::vector<double> rho;          // sample Pearson correlation per lag
  std::vector<std::size_t> n_pairs; // pooled pair counts per lag
};

// rho(k) pools (delta_t, delta_{t+k}) pairs across all chains. Throws
// InputError when traces are shorter than max_lag + 1 or when a margin has
// zero variance (the message names the lag).
AutocorrEstimate autocorrelation(std::span<const ChainTrace> traces, int max_lag);

// Grid search over beta in {0.000, 0.001, ..., 0.999} minimizing
// sum_k (rho(k) - beta^k)^2; ties break toward the smaller beta.
double fit_beta(const AutocorrEstimate& estimate);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  mcp::json to_json() const;
};

// Pass/fail per check: beta*B < 1 (or re-grounding set); all deltas in
// [0,1]; embedding unit norms; fact-weight normalization; Cauchy-Schwarz
// embedding regularity on sampled triples.
AssumptionReport assumption_checks(const ChainConfig& config,
                                   std::span<const ChainTrace> traces,
                                   EmbeddingProvider& embedder);

}  // namespace chaindrift
