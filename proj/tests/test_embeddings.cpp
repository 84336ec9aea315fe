#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "chaindrift/embeddings.hpp"
#include "chaindrift/errors.hpp"
#include "chaindrift/metric.hpp"
#include "chaindrift/rng.hpp"

using namespace chaindrift;
using nlohmann::json;

namespace {

std::string random_text(CounterRng& rng) {
  static const std::vector<std::string> words = {"alpha", "beta",  "gamma", "delta", "1789",
                                                 "m/s",   "paris", "river", "the",   "of"};
  std::string out;
  for (std::size_t i = 0, n = 1 + rng.next_below(10); i < n; ++i) {
    out += words[rng.next_below(words.size())] + " ";
  }
  return out;
}

}  // namespace

TEST_CASE("bundled embedder: unit norm, determinism, order invariance") {
  BundledEmbedder embedder;
  CHECK(embedder.descriptor().dim == kBundledDim);
  CHECK(embedder.descriptor().deterministic);

  CounterRng rng = CounterRng::for_stream(7, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = embedder.embed_text(random_text(rng));
    REQUIRE(!v.is_zero());
    REQUIRE(std::abs(v.norm() - 1.0) <= 1e-6);
  }

  const auto a = embedder.embed_text("the speed of light");
  const auto b = embedder.embed_text("the speed of light");
  CHECK(a.values == b.values);  // bitwise

  // bag-of-tokens: permutations embed identically
  const auto p1 = embedder.embed_text("light of speed the");
  CHECK(a.values == p1.values);

  CHECK(embedder.embed_text("").is_zero());
  CHECK(embedder.embed_text(" \t\n").is_zero());
}

TEST_CASE("embedding_distance pinned cases") {
  EmbeddingVector v{{1.0f, 0.0f, 0.0f}};
  EmbeddingVector neg{{-1.0f, 0.0f, 0.0f}};
  EmbeddingVector orth{{0.0f, 1.0f, 0.0f}};

  CHECK(embedding_distance(v, v) == doctest::Approx(0.0));
  CHECK(embedding_distance(v, neg) == doctest::Approx(1.0));
  CHECK(embedding_distance(v, orth) == doctest::Approx(0.5));

  CHECK(embedding_distance(EmbeddingVector::zero(3), v) == doctest::Approx(1.0));
  CHECK(embedding_distance(EmbeddingVector::zero(3), EmbeddingVector::zero(3)) ==
        doctest::Approx(1.0));

  EmbeddingVector wrong{{1.0f, 0.0f}};
  CHECK_THROWS_AS(embedding_distance(v, wrong), ContractError);
}

TEST_CASE("embedding regularity: |cos(x,a) - cos(y,a)| <= |x - y| on 1000 triples") {
  BundledEmbedder embedder;
  CounterRng rng = CounterRng::for_stream(8, 0);
  std::vector<EmbeddingVector> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(embedder.embed_text(random_text(rng)));

  for (int trial = 0; trial < 1000; ++trial) {
    const auto& x = pool[rng.next_below(pool.size())];
    const auto& y = pool[rng.next_below(pool.size())];
    const auto& a = pool[rng.next_below(pool.size())];
    const double cos_x = 1.0 - 2.0 * embedding_distance(x, a);
    const double cos_y = 1.0 - 2.0 * embedding_distance(y, a);
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const double d = static_cast<double>(x.values[i]) - static_cast<double>(y.values[i]);
      dist_sq += d * d;
    }
    REQUIRE(std::abs(cos_x - cos_y) <= std::sqrt(dist_sq) + 1e-9);
  }
}

TEST_CASE("embed_fact_set: singleton, empty, orthogonal mean, weighting switch") {
  BundledEmbedder embedder;

  FactSet single;
  single.weights["the speed"] = 1.0;
  CHECK(embed_fact_set(single, embedder).values == embedder.embed_text("the speed").values);

  CHECK(embed_fact_set(FactSet{}, embedder).is_zero());

  // two orthogonal unit vectors with equal weights: mean renormalizes to
  // (u+v)/|u+v|, so cosine against u is 1/sqrt(2)
  class TwoVec final : public EmbeddingProvider {
   public:
    ProviderDescriptor descriptor() const override { return {"two", 2, true}; }
    EmbeddingVector embed_text(const std::string& text) override {
      if (text == "u u") return {{1.0f, 0.0f}};
      return {{0.0f, 1.0f}};
    }
  } two;

  FactSet pair;
  pair.weights["u u"] = 0.5;
  pair.weights["v v"] = 0.5;
  const auto mean = embed_fact_set(pair, two);
  CHECK(mean.norm() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mean.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(mean.values[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));

  // weighted vs unweighted differ when weights are skewed
  FactSet skewed;
  skewed.weights["u u"] = 0.9;
  skewed.weights["v v"] = 0.1;
  const auto weighted = embed_fact_set(skewed, two, true);
  const auto unweighted = embed_fact_set(skewed, two, false);
  CHECK(weighted.values[0] > unweighted.values[0]);
  CHECK(unweighted.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("caching embedder returns cached vectors and counts entries") {
  auto caching = CachingEmbedder(std::make_shared<BundledEmbedder>());
  const auto a = caching.embed_text("alpha beta");
  const auto b = caching.embed_text("alpha beta");
  CHECK(a.values == b.values);
  CHECK(caching.size() == 1);

  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&caching, t] {
      for (int i = 0; i < 50; ++i) {
        caching.embed_text("text " + std::to_string(i % 10) + " " + std::to_string(t % 2));
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(caching.size() == 21);  // 10 x 2 distinct strings + the warmup entry
}

TEST_CASE("embedding sidecar matrix round-trips exactly") {
  BundledEmbedder embedder;
  std::vector<EmbeddingVector> rows;
  CounterRng rng = CounterRng::for_stream(9, 0);
  for (int i = 0; i < 17; ++i) rows.push_back(embedder.embed_text(random_text(rng)));

  const std::string path =
      (std::filesystem::temp_directory_path() / "chaindrift_sidecar_test.emb").string();
  write_embedding_matrix(path, rows);
  const auto loaded = read_embedding_matrix(path);
  REQUIRE(loaded.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(loaded[i].values == rows[i].values);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_embedding_matrix("/nonexistent/sidecar.emb"), ConfigError);
}

TEST_CASE("external embedding client against a local HTTP service") {
  httplib::Server server;
  std::atomic<int> mode{0};  // 0 ok, 1 wrong count, 2 garbage, 3 http 500

  server.Post("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    if (mode == 2) {
      res.set_content("this is not json", "text/plain");
      return;
    }
    if (mode == 3) {
      res.status = 500;
      return;
    }
    const auto body = json::parse(req.body);
    const auto& texts = body.at("texts");
    json rows = json::array();
    const std::size_t count = mode == 1 ? texts.size() + 1 : texts.size();
    for (std::size_t i = 0; i < count; ++i) {
      rows.push_back({3.0, 4.0, 0.0});  // unnormalized on purpose
    }
    res.set_content(json{{"embeddings", rows}}.dump(), "application/json");
  });

  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/embed";

  SUBCASE("happy path renormalizes and preserves order") {
    const auto vectors =
        external_embed_batch({"one", "two"}, endpoint, std::chrono::milliseconds(2000), 3);
    REQUIRE(vectors.size() == 2);
    for (const auto& v : vectors) {
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(v.values[0] == doctest::Approx(0.6).epsilon(1e-6));
      CHECK(v.values[1] == doctest::Approx(0.8).epsilon(1e-6));
    }
  }

  SUBCASE("count mismatch names expected and actual") {
    mode = 1;
    try {
      external_embed_batch({"one"}, endpoint, std::chrono::milliseconds(2000), 3);
      FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
      const std::string message = e.what();
      CHECK(message.find("expected 1") != std::string::npos);
      CHECK(message.find("got 2") != std::string::npos);
    }
  }

  SUBCASE("non-JSON body surfaces a parse cause") {
    mode = 2;
    CHECK_THROWS_AS(
        external_embed_batch({"one"}, endpoint, std::chrono::milliseconds(2000), 3),
        ProviderError);
  }

  SUBCASE("non-200 status is a provider error") {
    mode = 3;
    CHECK_THROWS_AS(
        external_embed_batch({"one"}, endpoint, std::chrono::milliseconds(2000), 3),
        ProviderError);
  }

  SUBCASE("empty input list violates the contract") {
    CHECK_THROWS_AS(external_embed_batch({}, endpoint, std::chrono::milliseconds(2000), 3),
                    ContractError);
  }

  server.stop();
  runner.join();

  SUBCASE("unreachable endpoint is a provider error after the retry") {
    CHECK_THROWS_AS(external_embed_batch({"one"}, "http://127.0.0.1:1/embed",
                                         std::chrono::milliseconds(200), 3),
                    ProviderError);
  }
}
