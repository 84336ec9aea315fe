#include <doctest.h>

#include <cmath>

#include "chaindrift/chain.hpp"
#include "chaindrift/diagnostics.hpp"

using namespace chaindrift;

namespace {

ChainTrace trace_from_deltas(const std::vector<double>& deltas, std::uint64_t index = 0) {
  ChainTrace trace;
  trace.config.horizon = static_cast<int>(deltas.size());
  trace.config.chain_index = index;
  double cumulative = 0.0;
  for (std::size_t t = 0; t < deltas.size(); ++t) {
    ChainStep step;
    step.step = static_cast<int>(t) + 1;
    step.delta.d_set = deltas[t];
    step.delta.d_emb = deltas[t];
    step.delta.d_sem = deltas[t];
    cumulative += deltas[t];
    step.cumulative = cumulative;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

std::vector<ChainTrace> score_traces(double beta, int chains, int horizon,
                                     std::uint64_t seed = 515) {
  std::vector<ChainTrace> traces;
  traces.reserve(static_cast<std::size_t>(chains));
  for (int c = 0; c < chains; ++c) {
    ChainConfig config;
    config.horizon = horizon;
    config.beta = beta;
    config.seed = seed;
    config.chain_index = static_cast<std::uint64_t>(c);
    traces.push_back(run_chain(config));
  }
  return traces;
}

}  // namespace

TEST_CASE("autocorrelation rejects degenerate input") {
  std::vector<ChainTrace> constant;
  for (int c = 0; c < 5; ++c) constant.push_back(trace_from_deltas(std::vector<double>(20, 0.5)));
  try {
    autocorrelation(constant, 3);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("lag 1") != std::string::npos);
  }

  std::vector<ChainTrace> short_traces;
  short_traces.push_back(trace_from_deltas({0.1, 0.2}));
  CHECK_THROWS_AS(autocorrelation(short_traces, 5), InputError);
  CHECK_THROWS_AS(autocorrelation(std::vector<ChainTrace>{}, 3), InputError);
}

TEST_CASE("deterministic geometric traces have rho = 1 at every lag") {
  std::vector<ChainTrace> traces;
  const double beta = 0.8;
  for (int c = 0; c < 10; ++c) {
    const double x1 = 0.1 + 0.08 * c;
    std::vector<double> deltas;
    for (int t = 0; t < 20; ++t) deltas.push_back(x1 * std::pow(beta, t));
    traces.push_back(trace_from_deltas(deltas, static_cast<std::uint64_t>(c)));
  }
  const auto est = autocorrelation(traces, 6);
  for (double rho : est.rho) CHECK(rho == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t n : est.n_pairs) CHECK(n > 0);
}

TEST_CASE("fit_beta recovers exact geometric curves to grid resolution") {
  AutocorrEstimate est;
  for (int k = 1; k <= 10; ++k) {
    est.lags.push_back(k);
    est.rho.push_back(std::pow(0.7, k));
    est.n_pairs.push_back(100);
  }
  CHECK(fit_beta(est) == doctest::Approx(0.700).epsilon(1e-12));

  for (double truth : {0.1, 0.25, 0.5, 0.85, 0.95}) {
    AutocorrEstimate exact;
    for (int k = 1; k <= 8; ++k) {
      exact.lags.push_back(k);
      exact.rho.push_back(std::pow(truth, k));
      exact.n_pairs.push_back(10);
    }
    CHECK(fit_beta(exact) == doctest::Approx(truth).epsilon(1e-9));
  }

  AutocorrEstimate zero;
  for (int k = 1; k <= 10; ++k) {
    zero.lags.push_back(k);
    zero.rho.push_back(0.0);
    zero.n_pairs.push_back(100);
  }
  CHECK(fit_beta(zero) == doctest::Approx(0.0));

  AutocorrEstimate single;
  single.lags = {1};
  single.rho = {0.5};
  single.n_pairs = {10};
  CHECK_THROWS_AS(fit_beta(single), InputError);
}

TEST_CASE("fit_beta depends only on the rho values") {
  AutocorrEstimate a;
  AutocorrEstimate b;
  for (int k = 1; k <= 6; ++k) {
    a.lags.push_back(k);
    b.lags.push_back(k);
    a.rho.push_back(std::pow(0.42, k));
    b.rho.push_back(std::pow(0.42, k));
    a.n_pairs.push_back(10);
    b.n_pairs.push_back(100000);  // sample-size metadata must not matter
  }
  CHECK(fit_beta(a) == fit_beta(b));
}

TEST_CASE("Monte Carlo: independent chains show no autocorrelation") {
  const auto traces = score_traces(0.0, 200, 30);
  const auto est = autocorrelation(traces, 10);
  for (double rho : est.rho) CHECK(std::abs(rho) < 0.1);
}

TEST_CASE("Monte Carlo: beta recovered within 0.05 at 200 chains x T=60") {
  const auto traces = score_traces(0.7, 200, 60);
  const double beta_hat = fit_beta(autocorrelation(traces, 10));
  CHECK(beta_hat >= 0.65);
  CHECK(beta_hat <= 0.75);
}

TEST_CASE("assumption checks: default pass, violations named") {
  BundledEmbedder embedder;
  auto traces = score_traces(0.7, 5, 12);

  const auto report = assumption_checks(traces.front().config, traces, embedder);
  CHECK(report.all_pass());
  CHECK(report.checks.size() == 5);
  const auto j = report.to_json();
  CHECK(j["all_pass"] == true);

  // beta*B >= 1 without re-grounding fails the branching check
  ChainConfig divergent;
  divergent.beta = 0.98;
  divergent.branching = 2;
  const auto bad_branching = assumption_checks(divergent, traces, embedder);
  CHECK(!bad_branching.all_pass());
  CHECK(!bad_branching.checks[0].pass);

  // a doctored out-of-range delta fails boundedness and is located
  traces[2].steps[3].delta.d_sem = 1.2;
  traces[2].config.chain_index = 2;
  const auto doctored = assumption_checks(traces.front().config, traces, embedder);
  bool found = false;
  for (const auto& check : doctored.checks) {
    if (check.name == "bounded_distortion") {
      CHECK(!check.pass);
      CHECK(check.detail.find("chain 2") != std::string::npos);
      CHECK(check.detail.find("step 4") != std::string::npos);
      found = true;
    }
  }
  CHECK(found);
}
