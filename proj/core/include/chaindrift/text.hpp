#pragma once

// Deterministic tokenization and part-of-speech tagging.
//
// Tokens are lowercased; thousands separators ("," and "_") between digits
// are elided; "." is kept between digits, "/" "-" "'" between alphanumerics,
// and "%" "$" always; every other character splits. The tagger is a bundled
// lexicon with suffix fallbacks, so the same text tags identically on every
// platform.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chaindrift::text {

enum class Tag { Det, Adj, Noun, Verb, Num, Other };

const char* tag_name(Tag t);

std::vector<std::string> tokenize(std::string_view input);

// Lexicon lookup, then: digit anywhere -> Num; no letter -> Other;
// "-tion/-ness/-ment/-ity" -> Noun; "-ly" -> Other; default Noun.
Tag tag_token(const std::string& token);

std::vector<std::pair<std::string, Tag>> tag_tokens(std::string_view input);

// Noun-phrase chunk spans over a tagged sequence, grammar
// "Det? Adj* (Noun|Num)+", scanned greedily left to right.
// Returns [begin, end) token index pairs.
std::vector<std::pair<std::size_t, std::size_t>> chunk_spans(
    const std::vector<std::pair<std::string, Tag>>& tagged);

}  // namespace chaindrift::text
