#include "chaindrift/tools.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace chaindrift::mcp {

namespace {

// days since 1970-01-01 for an ISO "YYYY-MM-DD" date (civil calendar)
long days_from_iso(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw RpcFault(kInvalidParams, "malformed ISO-8601 date: " + iso);
  }
  const int y = std::stoi(iso.substr(0, 4));
  const unsigned m = static_cast<unsigned>(std::stoi(iso.substr(5, 2)));
  const unsigned d = static_cast<unsigned>(std::stoi(iso.substr(8, 2)));
  const int yy = y - (m <= 2);
  const int era = (yy >= 0 ? yy : yy - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(yy - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097L + static_cast<long>(doe) - 719468L;
}

bool known_symbol(const std::string& symbol) {
  return std::find_if(kSymbols.begin(), kSymbols.end(),
                      [&](const char* s) { return symbol == s; }) != kSymbols.end();
}

}  // namespace

std::vector<CorpusEntry> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file: " + path);

  std::vector<CorpusEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    CorpusEntry entry;
    try {
      entry.id = j.at("id").get<std::string>();
      entry.domain = j.at("domain").get<std::string>();
      entry.text = j.at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad corpus entry: " + e.what());
    }
    if (std::find_if(kDomains.begin(), kDomains.end(),
                     [&](const char* d) { return entry.domain == d; }) == kDomains.end()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown domain \"" +
                        entry.domain + "\"");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

void write_corpus_jsonl(const std::string& path, std::span<const CorpusEntry> entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open corpus file for writing: " + path);
  for (const auto& entry : entries) {
    out << json{{"id", entry.id}, {"domain", entry.domain}, {"text", entry.text}}.dump() << '\n';
  }
  if (!out) throw ConfigError("short write to corpus file: " + path);
}

void MarketSnapshot::validate() const {
  for (const auto& [symbol, by_date] : prices) {
    if (!known_symbol(symbol)) {
      throw ConfigError("snapshot contains unknown symbol \"" + symbol + "\"");
    }
    for (const auto& [date, bar] : by_date) {
      const bool positive = bar.open > 0.0 && bar.high > 0.0 && bar.low > 0.0 && bar.close > 0.0;
      const bool ordered = bar.low <= bar.open && bar.low <= bar.close &&
                           bar.open <= bar.high && bar.close <= bar.high;
      if (!positive || !ordered || bar.volume < 0) {
        throw ConfigError("invalid OHLCV bar for " + symbol + " on " + date);
      }
    }
  }
}

json MarketSnapshot::to_json() const {
  json by_symbol = json::object();
  for (const auto& [symbol, by_date] : prices) {
    json dates = json::object();
    for (const auto& [date, bar] : by_date) {
      dates[date] = json{{"open", bar.open},     {"high", bar.high},
                         {"low", bar.low},       {"close", bar.close},
                         {"volume", bar.volume}, {"timestamp", bar.timestamp}};
    }
    by_symbol[symbol] = std::move(dates);
  }
  return json{{"prices", std::move(by_symbol)}};
}

MarketSnapshot MarketSnapshot::from_json(const json& j) {
  MarketSnapshot snap;
  if (!j.is_object() || !j.contains("prices") || !j["prices"].is_object()) {
    throw ConfigError("snapshot JSON must be an object with a \"prices\" map");
  }
  for (auto sym = j["prices"].begin(); sym != j["prices"].end(); ++sym) {
    for (auto day = sym.value().begin(); day != sym.value().end(); ++day) {
      const json& b = day.value();
      PriceBar bar;
      try {
        bar.open = b.at("open").get<double>();
        bar.high = b.at("high").get<double>();
        bar.low = b.at("low").get<double>();
        bar.close = b.at("close").get<double>();
        bar.volume = b.at("volume").get<std::int64_t>();
        bar.timestamp = b.value("timestamp", day.key() + "T16:00:00-05:00");
      } catch (const json::exception& e) {
        throw ConfigError("bad price bar for " + sym.key() + " on " + day.key() + ": " +
                          e.what());
      }
      snap.prices[sym.key()][day.key()] = std::move(bar);
    }
  }
  snap.validate();
  return snap;
}

MarketSnapshot load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open snapshot file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return MarketSnapshot::from_json(j);
}

void write_snapshot(const std::string& path, const MarketSnapshot& snapshot) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open snapshot file for writing: " + path);
  out << snapshot.to_json().dump(2) << '\n';
  if (!out) throw ConfigError("short write to snapshot file: " + path);
}

KnowledgeTool::KnowledgeTool(std::vector<CorpusEntry> corpus, EmbeddingProvider& embedder,
                             std::optional<std::string> sidecar_path)
    : corpus_(std::move(corpus)), embedder_(embedder) {
  if (corpus_.empty()) throw ConfigError("knowledge corpus is empty");

  const std::size_t dim = embedder_.descriptor().dim;
  if (sidecar_path) {
    try {
      auto cached = read_embedding_matrix(*sidecar_path);
      if (cached.size() == corpus_.size() && (cached.empty() || cached.front().dim() == dim)) {
        matrix_ = std::move(cached);
        return;
      }
    } catch (const ConfigError&) {
      // absent or stale sidecar: fall through and recompute
    }
  }

  std::vector<std::string> texts;
  texts.reserve(corpus_.size());
  for (const auto& entry : corpus_) texts.push_back(entry.text);
  matrix_ = embedder_.embed_batch(texts);
  if (sidecar_path) write_embedding_matrix(*sidecar_path, matrix_);
}

KnowledgeTool::Retrieval KnowledgeTool::retrieve(const std::string& query, int top_k) {
  if (top_k < 1) throw RpcFault(kInvalidParams, "top_k must be a positive integer");

  const auto key = std::make_pair(query, top_k);
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  const EmbeddingVector query_vec = embedder_.embed_text(query);
  std::vector<std::size_t> order(corpus_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<double> similarity(corpus_.size());
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    similarity[i] = 1.0 - 2.0 * embedding_distance(query_vec, matrix_[i]);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (similarity[a] != similarity[b]) return similarity[a] > similarity[b];
    return corpus_[a].id < corpus_[b].id;
  });

  Retrieval result;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(top_k), order.size());
  result.texts.reserve(take);
  for (std::size_t i = 0; i < take; ++i) result.texts.push_back(corpus_[order[i]].text);
  result.top_similarity = similarity[order.front()];

  {
    std::unique_lock lock(cache_mutex_);
    cache_.emplace(key, result);
  }
  return result;
}

FinancialTool::FinancialTool(MarketSnapshot snapshot) : snapshot_(std::move(snapshot)) {
  snapshot_.validate();
}

json FinancialTool::get_price(const std::string& symbol, const std::string& date) const {
  auto sym = snapshot_.prices.find(symbol);
  if (sym == snapshot_.prices.end()) {
    throw RpcFault(kInvalidParams, "unknown symbol: " + symbol, json{{"missing", symbol}});
  }
  auto day = sym->second.find(date);
  if (day == sym->second.end()) {
    throw RpcFault(kInvalidParams, "no data for " + symbol + " on " + date,
                   json{{"missing", date}});
  }
  const PriceBar& bar = day->second;
  return json{{"symbol", symbol},   {"date", date},        {"price", bar.close},
              {"open", bar.open},   {"high", bar.high},    {"low", bar.low},
              {"close", bar.close}, {"volume", bar.volume}, {"timestamp", bar.timestamp}};
}

json FinancialTool::get_trend(const std::string& symbol, int days) const {
  if (days < 1) throw RpcFault(kInvalidParams, "days must be a positive integer");
  auto sym = snapshot_.prices.find(symbol);
  if (sym == snapshot_.prices.end()) {
    throw RpcFault(kInvalidParams, "unknown symbol: " + symbol, json{{"missing", symbol}});
  }
  const auto& by_date = sym->second;
  if (by_date.empty()) {
    throw RpcFault(kInvalidParams, "no dates stored for symbol " + symbol);
  }

  const std::string& last_date = by_date.rbegin()->first;
  const long window_start = days_from_iso(last_date) - (days - 1);

  std::vector<double> closes;
  for (const auto& [date, bar] : by_date) {
    if (days_from_iso(date) >= window_start) closes.push_back(bar.close);
  }
  if (closes.size() < 2) {
    throw RpcFault(kInvalidParams,
                   "insufficient dates in a " + std::to_string(days) + "-day window for " +
                       symbol,
                   json{{"available", closes.size()}});
  }

  const double first = closes.front();
  const double last = closes.back();
  return json{{"symbol", symbol},
              {"trend", last > first ? "up" : "down"},
              {"change_pct", 100.0 * (last - first) / first}};
}

ToolRegistry make_default_registry(KnowledgeTool& knowledge, FinancialTool& financial) {
  ToolRegistry registry;

  registry.add(ToolSpec{
      kKnowledgeMethod,
      {
          ParamSpec{"query", ParamSpec::Type::String, true, nullptr, {}},
          ParamSpec{"top_k", ParamSpec::Type::Integer, false, 3, {}},
      },
      "query",
      [&knowledge](const json& args) {
        auto retrieval = knowledge.retrieve(args.at("query").get<std::string>(),
                                            args.at("top_k").get<int>());
        const double uncertainty = std::clamp(1.0 - retrieval.top_similarity, 0.0, 1.0);
        return ToolResult{json(retrieval.texts), uncertainty};
      },
  });

  registry.add(ToolSpec{
      kPriceMethod,
      {
          ParamSpec{"symbol", ParamSpec::Type::String, true, nullptr, {}},
          ParamSpec{"date", ParamSpec::Type::String, false, kDefaultPriceDate, {}},
      },
      "symbol",
      [&financial](const json& args) {
        return ToolResult{financial.get_price(args.at("symbol").get<std::string>(),
                                              args.at("date").get<std::string>()),
                          0.01};
      },
  });

  registry.add(ToolSpec{
      kTrendMethod,
      {
          ParamSpec{"symbol", ParamSpec::Type::String, true, nullptr, {}},
          ParamSpec{"days", ParamSpec::Type::Integer, false, 30, {}},
      },
      "symbol",
      [&financial](const json& args) {
        return ToolResult{
            financial.get_trend(args.at("symbol").get<std::string>(), args.at("days").get<int>()),
            0.01};
      },
  });

  return registry;
}

}  // namespace chaindrift::mcp
