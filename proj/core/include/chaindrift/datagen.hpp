#pragma once

// Deterministic generators for the bundled data: a 1000-entry factual
// corpus (125 sentences per domain, rendered from seed tables) and January
// 2024 OHLCV market snapshots from a seeded bounded random walk.

#include <cstdint>
#include <string>
#include <vector>

#include "chaindrift/tools.hpp"

namespace chaindrift::mcp {

// Pure function of the seed tables; no randomness involved.
std::vector<CorpusEntry> generate_corpus();

// Weekday dates of January 2024 (the snapshot's trading days).
std::vector<std::string> snapshot_dates();

MarketSnapshot generate_snapshot(std::uint64_t seed = 20240101);

// Seed questions used by the chain simulator's fresh-query draws; rendered
// from the same tables as the corpus so retrieval stays on-topic.
const std::vector<std::string>& seed_questions();

}  // namespace chaindrift::mcp
