#include <doctest.h>

#include <map>
#include <set>

#include "chaindrift/datagen.hpp"
#include "chaindrift/metric.hpp"
#include "chaindrift/text.hpp"
#include "chaindrift/tools.hpp"

using namespace chaindrift;
using namespace chaindrift::mcp;

namespace {

// the Appendix-style stock price request
json price_request() {
  return json::parse(R"({
    "jsonrpc": "2.0",
    "method": "get_stock_price",
    "params": {"symbol": "AAPL"},
    "id": 1,
    "context": {"session_id": "abc123"}
  })");
}

MarketSnapshot tiny_snapshot(double first_close, double last_close) {
  MarketSnapshot snap;
  const double hi = std::max(first_close, last_close) + 1.0;
  snap.prices["AAPL"]["2024-01-02"] =
      PriceBar{first_close, hi, 1.0, first_close, 1000, "2024-01-02T16:00:00-05:00"};
  snap.prices["AAPL"]["2024-01-03"] =
      PriceBar{first_close, hi, 1.0, last_close, 1000, "2024-01-03T16:00:00-05:00"};
  return snap;
}

struct Fixture {
  BundledEmbedder embedder;
  KnowledgeTool knowledge{generate_corpus(), embedder};
  FinancialTool financial{generate_snapshot()};
  ToolRegistry registry{make_default_registry(knowledge, financial)};
};

}  // namespace

TEST_CASE("rpc request parsing and round trip") {
  const auto req = RpcRequest::from_json(price_request());
  CHECK(req.method == "get_stock_price");
  CHECK(req.id == json(1));
  CHECK(req.params.at("symbol") == "AAPL");
  REQUIRE(req.session_id.has_value());
  CHECK(*req.session_id == "abc123");

  // serialize(parse(x)) is semantically equal JSON
  CHECK(req.to_json() == price_request());

  CHECK_THROWS_AS(RpcRequest::from_json(json{{"jsonrpc", "1.0"}, {"method", "m"}, {"id", 1}}),
                  RpcFault);
  CHECK_THROWS_AS(RpcRequest::from_json(json{{"jsonrpc", "2.0"}, {"id", 1}}), RpcFault);
  CHECK_THROWS_AS(RpcRequest::from_json(json{{"jsonrpc", "2.0"}, {"method", "m"}}), RpcFault);
  CHECK_THROWS_AS(RpcRequest::from_json(json::array()), RpcFault);
}

TEST_CASE("response envelope carries exactly one of result/error") {
  const auto ok = RpcResponse::success(1, json{{"x", 1}}, 0.25);
  const auto ok_json = ok.to_json();
  CHECK(ok_json.contains("result"));
  CHECK(!ok_json.contains("error"));
  CHECK(ok_json["uncertainty"] == 0.25);
  CHECK(ok_json["jsonrpc"] == "2.0");

  const auto fail = RpcResponse::failure("abc", RpcError{kMethodNotFound, "nope", nullptr});
  const auto fail_json = fail.to_json();
  CHECK(fail_json.contains("error"));
  CHECK(!fail_json.contains("result"));
  CHECK(fail_json["error"]["code"] == kMethodNotFound);
}

TEST_CASE("validate_request resolves methods, types, defaults, enumerations") {
  Fixture fx;

  const auto call = validate_request(RpcRequest::from_json(price_request()), fx.registry);
  CHECK(call.tool->method == kPriceMethod);
  CHECK(call.args.at("symbol") == "AAPL");
  CHECK(call.args.at("date") == kDefaultPriceDate);  // default filled

  RpcRequest unknown;
  unknown.method = "no_such_tool";
  unknown.id = 5;
  try {
    validate_request(unknown, fx.registry);
    FAIL("expected RpcFault");
  } catch (const RpcFault& e) {
    CHECK(e.error.code == kMethodNotFound);
  }

  RpcRequest missing;
  missing.method = kPriceMethod;
  missing.id = 6;
  try {
    validate_request(missing, fx.registry);
    FAIL("expected RpcFault");
  } catch (const RpcFault& e) {
    CHECK(e.error.code == kInvalidParams);
  }

  RpcRequest bad_type;
  bad_type.method = kKnowledgeMethod;
  bad_type.id = 7;
  bad_type.params = json{{"query", "x"}, {"top_k", "three"}};
  try {
    validate_request(bad_type, fx.registry);
    FAIL("expected RpcFault");
  } catch (const RpcFault& e) {
    CHECK(e.error.code == kInvalidParams);
  }

  RpcRequest stray;
  stray.method = kKnowledgeMethod;
  stray.id = 8;
  stray.params = json{{"query", "x"}, {"zzz", 1}};
  CHECK_THROWS_AS(validate_request(stray, fx.registry), RpcFault);
}

TEST_CASE("generated corpus: 1000 entries, nonempty facts, distinct token multisets") {
  const auto corpus = generate_corpus();
  REQUIRE(corpus.size() == 1000);

  std::map<std::string, int> domain_counts;
  std::set<std::string> ids;
  std::map<std::vector<std::string>, std::string> multisets;
  for (const auto& entry : corpus) {
    domain_counts[entry.domain] += 1;
    CHECK(ids.insert(entry.id).second);

    const FactSet facts = extract_facts(entry.text);
    INFO("entry ", entry.id, ": ", entry.text);
    CHECK(!facts.empty());

    auto tokens = text::tokenize(entry.text);
    std::sort(tokens.begin(), tokens.end());
    const auto [it, inserted] = multisets.emplace(std::move(tokens), entry.id);
    INFO("duplicate token multiset with ", it->second);
    CHECK(inserted);
  }
  REQUIRE(domain_counts.size() == 8);
  for (const auto& [domain, count] : domain_counts) CHECK(count == 125);
}

TEST_CASE("knowledge retrieval: cache, self-retrieval, truncation") {
  Fixture fx;

  const auto first = fx.knowledge.retrieve("What is the capital of France?", 3);
  const auto second = fx.knowledge.retrieve("What is the capital of France?", 3);
  CHECK(first.texts == second.texts);
  CHECK(first.top_similarity == second.top_similarity);

  // a query equal to a corpus entry's full text ranks that entry first
  const auto& target = fx.knowledge.corpus()[137];
  const auto self = fx.knowledge.retrieve(target.text, 3);
  REQUIRE(!self.texts.empty());
  CHECK(self.texts.front() == target.text);
  CHECK(self.top_similarity == doctest::Approx(1.0).epsilon(1e-6));

  const auto everything = fx.knowledge.retrieve("anything at all", 5000);
  CHECK(everything.texts.size() == fx.knowledge.corpus().size());

  CHECK_THROWS_AS(fx.knowledge.retrieve("q", 0), RpcFault);
}

TEST_CASE("knowledge tool rejects an empty corpus") {
  BundledEmbedder embedder;
  CHECK_THROWS_AS(KnowledgeTool({}, embedder), ConfigError);
}

TEST_CASE("financial price lookups are stored-value echoes") {
  Fixture fx;

  const auto bar = fx.financial.get_price("AAPL", "2024-01-15");
  CHECK(bar.at("price") == bar.at("close"));
  CHECK(bar.contains("timestamp"));
  CHECK(bar.at("open").get<double>() >= bar.at("low").get<double>());
  CHECK(bar.at("high").get<double>() >= bar.at("close").get<double>());
  CHECK(fx.financial.get_price("AAPL", "2024-01-15") == bar);  // bit-identical

  try {
    fx.financial.get_price("ZZZZ", "2024-01-15");
    FAIL("expected RpcFault");
  } catch (const RpcFault& e) {
    CHECK(e.error.code == kInvalidParams);
    CHECK(std::string(e.what()).find("ZZZZ") != std::string::npos);
  }
  try {
    fx.financial.get_price("AAPL", "2031-01-01");
    FAIL("expected RpcFault");
  } catch (const RpcFault& e) {
    CHECK(e.error.code == kInvalidParams);
    CHECK(std::string(e.what()).find("2031-01-01") != std::string::npos);
  }
}

TEST_CASE("financial trend arithmetic on pinned windows") {
  FinancialTool up(tiny_snapshot(100.0, 110.0));
  auto trend = up.get_trend("AAPL", 30);
  CHECK(trend.at("trend") == "up");
  CHECK(trend.at("change_pct").get<double>() == doctest::Approx(10.0));

  FinancialTool down(tiny_snapshot(110.0, 99.0));
  trend = down.get_trend("AAPL", 30);
  CHECK(trend.at("trend") == "down");
  CHECK(trend.at("change_pct").get<double>() == doctest::Approx(-10.0));

  // strict comparison: equal closes are "down"
  FinancialTool flat(tiny_snapshot(100.0, 100.0));
  CHECK(flat.get_trend("AAPL", 30).at("trend") == "down");

  // a 1-day window holds a single date
  CHECK_THROWS_AS(flat.get_trend("AAPL", 1), RpcFault);
  CHECK_THROWS_AS(flat.get_trend("ZZZZ", 30), RpcFault);
  CHECK_THROWS_AS(flat.get_trend("AAPL", 0), RpcFault);

  // default 30-day window spans the generated January snapshot
  Fixture fx;
  const auto january = fx.financial.get_trend("MSFT", 30);
  CHECK((january.at("trend") == "up" || january.at("trend") == "down"));
}

TEST_CASE("dispatch: envelope law, uncertainty, exactly one log record per call") {
  Fixture fx;
  ToolCallLog log;

  const auto resp = dispatch(RpcRequest::from_json(price_request()), fx.registry, log);
  CHECK(resp.id == json(1));
  CHECK(!resp.error.has_value());
  CHECK(resp.result.contains("price"));
  REQUIRE(resp.uncertainty.has_value());
  CHECK(*resp.uncertainty == doctest::Approx(0.01));
  CHECK(log.record_count() == 1);
  CHECK(log.records()[0].tool == kPriceMethod);
  CHECK(log.records()[0].query == "AAPL");
  CHECK(log.records()[0].latency_ms >= 0.0);

  RpcRequest knowledge;
  knowledge.method = kKnowledgeMethod;
  knowledge.id = "q-1";
  knowledge.params = json{{"query", "What is the capital of France?"}};
  const auto kresp = dispatch(knowledge, fx.registry, log);
  CHECK(kresp.id == json("q-1"));
  REQUIRE(kresp.uncertainty.has_value());
  CHECK(*kresp.uncertainty >= 0.0);
  CHECK(*kresp.uncertainty <= 1.0);
  CHECK(log.record_count() == 2);
  CHECK(log.records()[1].step == 2);

  RpcRequest bad;
  bad.method = "no_such_tool";
  bad.id = 3;
  const auto eresp = dispatch(bad, fx.registry, log);
  REQUIRE(eresp.error.has_value());
  CHECK(eresp.error->code == kMethodNotFound);
  CHECK(eresp.result.is_null());
  CHECK(log.record_count() == 3);  // errors are logged too
}

TEST_CASE("snapshot schema round trip and validation") {
  const auto snap = generate_snapshot();
  const auto round = MarketSnapshot::from_json(snap.to_json());
  CHECK(round.to_json() == snap.to_json());
  CHECK(snap.prices.size() == kSymbols.size());
  for (const auto& [symbol, by_date] : snap.prices) CHECK(by_date.size() == 23);
  CHECK(snap.prices.at("AAPL").count("2024-01-15") == 1);  // the default lookup date exists

  MarketSnapshot bad = tiny_snapshot(100.0, 100.0);
  bad.prices["AAPL"]["2024-01-02"].low = 5000.0;  // low above open/close
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  MarketSnapshot unknown;
  unknown.prices["NOPE"]["2024-01-02"] = PriceBar{1, 2, 0.5, 1.5, 10, "t"};
  CHECK_THROWS_AS(unknown.validate(), ConfigError);
}
