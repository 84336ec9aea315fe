#include "chaindrift/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "chaindrift/datagen.hpp"
#include "chaindrift/rng.hpp"

namespace chaindrift {

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b, int lag) {
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (double v : a) mean_a += v;
  for (double v : b) mean_b += v;
  mean_a /= n;
  mean_b /= n;

  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw InputError("autocorrelation undefined at lag " + std::to_string(lag) +
                     ": zero variance in a margin");
  }
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

}  // namespace

AutocorrEstimate autocorrelation(std::span<const ChainTrace> traces, int max_lag) {
  if (max_lag < 1) throw InputError("autocorrelation: max_lag must be >= 1");
  if (traces.empty()) throw InputError("autocorrelation: no traces");
  for (const auto& trace : traces) {
    if (trace.steps.size() < static_cast<std::size_t>(max_lag) + 1) {
      throw InputError("autocorrelation: traces must have at least max_lag + 1 steps");
    }
  }

  AutocorrEstimate est;
  for (int k = 1; k <= max_lag; ++k) {
    std::vector<double> lhs;
    std::vector<double> rhs;
    for (const auto& trace : traces) {
      const auto& steps = trace.steps;
      for (std::size_t t = 0; t + static_cast<std::size_t>(k) < steps.size(); ++t) {
        lhs.push_back(steps[t].delta.d_sem);
        rhs.push_back(steps[t + static_cast<std::size_t>(k)].delta.d_sem);
      }
    }
    est.lags.push_back(k);
    est.n_pairs.push_back(lhs.size());
    est.rho.push_back(pearson(lhs, rhs, k));
  }
  return est;
}

double fit_beta(const AutocorrEstimate& estimate) {
  if (estimate.lags.size() < 2) throw InputError("fit_beta: need at least 2 lags");

  double best_beta = 0.0;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 999; ++step) {
    const double beta = static_cast<double>(step) / 1000.0;
    double obj = 0.0;
    for (std::size_t i = 0; i < estimate.lags.size(); ++i) {
      const double diff = estimate.rho[i] - std::pow(beta, estimate.lags[i]);
      obj += diff * diff;
    }
    if (obj < best_obj) {  // strict: ties keep the smaller beta
      best_obj = obj;
      best_beta = beta;
    }
  }
  return best_beta;
}

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

mcp::json AssumptionReport::to_json() const {
  mcp::json arr = mcp::json::array();
  for (const auto& check : checks) {
    arr.push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
  }
  return mcp::json{{"checks", arr}, {"all_pass", all_pass()}};
}

AssumptionReport assumption_checks(const ChainConfig& config,
                                   std::span<const ChainTrace> traces,
                                   EmbeddingProvider& embedder) {
  AssumptionReport report;

  {
    const double bb = config.beta * config.branching;
    CheckResult check{"bounded_branching", bb < 1.0 || config.reground_interval.has_value(), ""};
    check.detail = "beta*B = " + std::to_string(bb) +
                   (config.reground_interval ? ", re-grounding every " +
                                                   std::to_string(*config.reground_interval)
                                             : "");
    report.checks.push_back(std::move(check));
  }

  {
    CheckResult check{"bounded_distortion", true, "all per-step distortions in [0, 1]"};
    for (const auto& trace : traces) {
      for (const auto& step : trace.steps) {
        for (double v : {step.delta.d_set, step.delta.d_emb, step.delta.d_sem}) {
          if (!(v >= 0.0 && v <= 1.0)) {
            check.pass = false;
            check.detail = "chain " + std::to_string(trace.config.chain_index) + " step " +
                           std::to_string(step.step) + ": distortion " + std::to_string(v) +
                           " outside [0, 1]";
            break;
          }
        }
        if (!check.pass) break;
      }
      if (!check.pass) break;
    }
    report.checks.push_back(std::move(check));
  }

  // sample texts: trace texts when present, seed questions otherwise
  std::vector<std::string> samples;
  for (const auto& trace : traces) {
    for (const auto& step : trace.steps) {
      if (!step.ref_text.empty()) samples.push_back(step.ref_text);
      if (!step.obs_text.empty()) samples.push_back(step.obs_text);
      if (samples.size() >= 256) break;
    }
    if (samples.size() >= 256) break;
  }
  if (samples.size() < 8) {
    const auto& pool = mcp::seed_questions();
    for (std::size_t i = 0; i < 64; ++i) samples.push_back(pool[i % pool.size()]);
  }

  std::vector<EmbeddingVector> vectors;
  vectors.reserve(samples.size());
  for (const auto& s : samples) vectors.push_back(embedder.embed_text(s));

  {
    CheckResult check{"embedding_normalization", true, "non-sentinel norms within 1e-6 of 1"};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].is_zero()) continue;
      const double norm = vectors[i].norm();
      if (std::abs(norm - 1.0) > 1e-6) {
        check.pass = false;
        check.detail = "sample " + std::to_string(i) + ": norm " + std::to_string(norm);
        break;
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    CheckResult check{"weight_normalization", true, "fact weights sum to 1 within 1e-9"};
    for (const auto& s : samples) {
      const FactSet facts = extract_facts(s);
      if (facts.empty()) continue;
      if (std::abs(facts.total_weight() - 1.0) > 1e-9) {
        check.pass = false;
        check.detail = "weights sum to " + std::to_string(facts.total_weight()) + " for \"" + s +
                       "\"";
        break;
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    CheckResult check{"embedding_regularity", true,
                      "|cos(x,a) - cos(y,a)| <= |x - y| on sampled triples"};
    std::vector<const EmbeddingVector*> units;
    for (const auto& v : vectors) {
      if (!v.is_zero()) units.push_back(&v);
    }
    if (units.size() >= 3) {
      CounterRng rng = CounterRng::for_stream(0xD1A6, 0);
      for (int trial = 0; trial < 1000 && check.pass; ++trial) {
        const auto& x = *units[rng.next_below(units.size())];
        const auto& y = *units[rng.next_below(units.size())];
        const auto& anchor = *units[rng.next_below(units.size())];
        const double cos_x = 1.0 - 2.0 * embedding_distance(x, anchor);
        const double cos_y = 1.0 - 2.0 * embedding_distance(y, anchor);
        double dist_sq = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) {
          const double d = static_cast<double>(x.values[i]) - static_cast<double>(y.values[i]);
          dist_sq += d * d;
        }
        if (std::abs(cos_x - cos_y) > std::sqrt(dist_sq) + 1e-9) {
          check.pass = false;
          check.detail = "violated at trial " + std::to_string(trial);
        }
      }
    } else {
      check.detail = "insufficient non-sentinel samples; check skipped";
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

}  // namespace chaindrift
