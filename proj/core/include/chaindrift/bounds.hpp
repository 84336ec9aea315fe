#pragma once

// Closed-form concentration quantities: bounded-difference constants,
// worst-case and calibrated variance inflation, Azuma deviation envelopes,
// the effective information horizon, first-step rate estimation, and
// envelope violation rates.

#include <optional>
#include <span>
#include <vector>

#include "chaindrift/chain.hpp"
#include "chaindrift/errors.hpp"

namespace chaindrift {

struct DependencyParams {
  double alpha = 1.0;   // response stability
  double beta = 0.7;    // decay rate, in [0, 1)
  int branching = 1;    // B
  std::optional<int> reground_interval;  // m
  double delta_max = 1.0;  // per-step distortion cap

  void validate() const;  // throws ContractError
};

// Bounded-difference constant c* = 1 + alpha/(1 - beta*B); truncated
// geometric sum when a re-grounding interval is set.
double c_star(const DependencyParams& params);

// Worst-case variance inflation gamma* = 2C* + C*^2.
double gamma_star(const DependencyParams& params);

// Calibrated inflation for geometric decay:
// alpha^2 beta^2 delta_max^2 (1 - beta^(2(T-1))) / ((1 - beta^2) T).
double gamma_hat(const DependencyParams& params, int horizon);

// sqrt(2 T (1 + gamma) ln(1/eta)).
double azuma_deviation(int horizon, double gamma, double eta);

struct Envelope {
  int horizon = 0;
  double per_step_rate = 0.0;  // r-hat
  double gamma = 0.0;
  double confidence = 0.05;    // delta
  std::vector<double> expected;  // expected[t-1] = t * r-hat
  std::vector<double> upper;     // expected + deviation(t), same gamma for all t
};

// gamma is computed once at the horizon and reused for every t, so
// deviation(t)/sqrt(t) is constant across the curve.
Envelope build_envelope(int horizon, double per_step_rate, const DependencyParams& params,
                        double delta);

// Mean first-step distortion across traces; errors when no trace has steps.
double estimate_first_step_rate(std::span<const ChainTrace> traces);

// ceil(ln(eps) / ln(beta)); eps = 1 -> 0. beta must lie strictly in (0, 1).
int effective_horizon(double beta, double epsilon);

enum class ViolationRule { FinalStep, AnyStep };

// Fraction of traces whose cumulative distortion exceeds the envelope,
// at the final step by default; every trace must reach the horizon.
double violation_rate(std::span<const ChainTrace> traces, const Envelope& envelope,
                      ViolationRule rule = ViolationRule::FinalStep);

}  // namespace chaindrift
