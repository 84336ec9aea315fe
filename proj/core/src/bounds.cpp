#include "chaindrift/bounds.hpp"

#include <cmath>
#include <string>

namespace chaindrift {

namespace {

// alpha * sum_{k=0}^{m-1} (beta*B)^k, or the full geometric limit when no
// re-grounding interval is set. This is C* (or its truncated form).
double cumulative_influence(const DependencyParams& p) {
  const double bb = p.beta * static_cast<double>(p.branching);
  if (p.reground_interval) {
    const int m = *p.reground_interval;
    if (bb == 1.0) return p.alpha * static_cast<double>(m);
    return p.alpha * (1.0 - std::pow(bb, m)) / (1.0 - bb);
  }
  if (bb >= 1.0) {
    throw DomainError("beta*B >= 1 requires a re-grounding interval (bounded branching)");
  }
  return p.alpha / (1.0 - bb);
}

}  // namespace

void DependencyParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractError("alpha must lie in [0, 1]");
  if (!(beta >= 0.0 && beta < 1.0)) throw ContractError("beta must lie in [0, 1)");
  if (branching < 1) throw ContractError("branching factor must be >= 1");
  if (!(delta_max >= 0.0 && delta_max <= 1.0)) throw ContractError("delta_max must lie in [0, 1]");
  if (reground_interval && *reground_interval < 1) {
    throw ContractError("reground_interval must be >= 1");
  }
  if (beta * branching >= 1.0 && !reground_interval) {
    throw ContractError("beta * branching must be < 1 unless a re-grounding interval is set");
  }
}

double c_star(const DependencyParams& params) { return 1.0 + cumulative_influence(params); }

double gamma_star(const DependencyParams& params) {
  const double c = cumulative_influence(params);
  return 2.0 * c + c * c;
}

double gamma_hat(const DependencyParams& params, int horizon) {
  if (horizon < 1) throw DomainError("gamma_hat: horizon must be >= 1");
  if (params.beta >= 1.0) {
    // the reference code's "conservative 2T" branch is rejected instead:
    // it contradicts the bounded-branching assumption
    throw DomainError("gamma_hat: beta must be < 1");
  }
  if (params.beta < 0.0) throw DomainError("gamma_hat: beta must be >= 0");
  if (params.beta == 0.0) return 0.0;

  const double a2 = params.alpha * params.alpha;
  const double b2 = params.beta * params.beta;
  const double d2 = params.delta_max * params.delta_max;
  const double geometric = (1.0 - std::pow(params.beta, 2 * (horizon - 1))) / (1.0 - b2);
  return a2 * b2 * d2 * geometric / static_cast<double>(horizon);
}

double azuma_deviation(int horizon, double gamma, double eta) {
  if (horizon < 1) throw DomainError("azuma_deviation: horizon must be >= 1");
  if (gamma < 0.0) throw DomainError("azuma_deviation: gamma must be >= 0");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("azuma_deviation: eta must lie in (0, 1)");
  return std::sqrt(2.0 * static_cast<double>(horizon) * (1.0 + gamma) * std::log(1.0 / eta));
}

Envelope build_envelope(int horizon, double per_step_rate, const DependencyParams& params,
                        double delta) {
  if (horizon < 1) throw DomainError("build_envelope: horizon must be >= 1");
  if (per_step_rate < 0.0) throw DomainError("build_envelope: rate must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("build_envelope: delta must lie in (0, 1)");

  Envelope env;
  env.horizon = horizon;
  env.per_step_rate = per_step_rate;
  env.confidence = delta;
  env.gamma = gamma_hat(params, horizon);  // fixed at the horizon for all t
  env.expected.reserve(horizon);
  env.upper.reserve(horizon);
  for (int t = 1; t <= horizon; ++t) {
    const double expected = static_cast<double>(t) * per_step_rate;
    env.expected.push_back(expected);
    env.upper.push_back(expected + azuma_deviation(t, env.gamma, delta));
  }
  return env;
}

double estimate_first_step_rate(std::span<const ChainTrace> traces) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& trace : traces) {
    if (trace.steps.empty()) continue;
    sum += trace.steps.front().delta.d_sem;
    ++count;
  }
  if (count == 0) {
    throw InputError("estimate_first_step_rate: no trace with at least one step");
  }
  return sum / static_cast<double>(count);
}

int effective_horizon(double beta, double epsilon) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("effective_horizon: beta must lie strictly in (0, 1)");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("effective_horizon: epsilon must lie in (0, 1]");
  }
  if (epsilon == 1.0) return 0;
  return static_cast<int>(std::ceil(std::log(epsilon) / std::log(beta)));
}

double violation_rate(std::span<const ChainTrace> traces, const Envelope& envelope,
                      ViolationRule rule) {
  if (traces.empty()) throw InputError("violation_rate: no traces");
  const std::size_t horizon = static_cast<std::size_t>(envelope.horizon);

  std::size_t violations = 0;
  for (const auto& trace : traces) {
    if (trace.steps.size() < horizon) {
      throw InputError("violation_rate: trace shorter than the envelope horizon");
    }
    bool violated = false;
    if (rule == ViolationRule::FinalStep) {
      violated = trace.steps[horizon - 1].cumulative > envelope.upper[horizon - 1];
    } else {
      for (std::size_t t = 0; t < horizon; ++t) {
        if (trace.steps[t].cumulative > envelope.upper[t]) {
          violated = true;
          break;
        }
      }
    }
    violations += violated ? 1 : 0;
  }
  return static_cast<double>(violations) / static_cast<double>(traces.size());
}

}  // namespace chaindrift
