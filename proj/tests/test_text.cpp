#include <doctest.h>

#include "chaindrift/text.hpp"

using namespace chaindrift::text;

TEST_CASE("tokenizer lowercases and strips punctuation") {
  CHECK(tokenize("Paris.") == std::vector<std::string>{"paris"});
  CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("   \t\n ") == std::vector<std::string>{});
}

TEST_CASE("tokenizer elides thousands separators inside digit groups") {
  CHECK(tokenize("299,792,458") == std::vector<std::string>{"299792458"});
  CHECK(tokenize("1_000_000") == std::vector<std::string>{"1000000"});
  // separators not flanked by digits split as usual
  CHECK(tokenize("a,b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("12, 13") == std::vector<std::string>{"12", "13"});
}

TEST_CASE("tokenizer keeps intra-word glue and currency marks") {
  CHECK(tokenize("299,792,458 m/s.") == std::vector<std::string>{"299792458", "m/s"});
  CHECK(tokenize("GDP grew by 2.5% in Q2") ==
        std::vector<std::string>{"gdp", "grew", "by", "2.5%", "in", "q2"});
  CHECK(tokenize("$94.8B in revenue") == std::vector<std::string>{"$94.8b", "in", "revenue"});
  CHECK(tokenize("Apple's revenue") == std::vector<std::string>{"apple's", "revenue"});
  CHECK(tokenize("state-of-the-art") == std::vector<std::string>{"state-of-the-art"});
  // '.' glues digits only
  CHECK(tokenize("U.S.") == std::vector<std::string>{"u", "s"});
}

TEST_CASE("tagger uses the lexicon and suffix fallbacks") {
  CHECK(tag_token("the") == Tag::Det);
  CHECK(tag_token("french") == Tag::Adj);
  CHECK(tag_token("is") == Tag::Verb);
  CHECK(tag_token("of") == Tag::Other);
  CHECK(tag_token("299792458") == Tag::Num);
  CHECK(tag_token("2.5%") == Tag::Num);
  // suffix rules
  CHECK(tag_token("revolution") == Tag::Noun);
  CHECK(tag_token("awareness") == Tag::Noun);
  CHECK(tag_token("parliament") == Tag::Noun);
  CHECK(tag_token("quickly") == Tag::Other);
  // -ly exception from the lexicon
  CHECK(tag_token("italy") == Tag::Noun);
  // unknown alphabetic tokens default to noun, symbols to other
  CHECK(tag_token("zyzzyva") == Tag::Noun);
  CHECK(tag_token("%") == Tag::Other);
}

TEST_CASE("chunker implements Det? Adj* (Noun|Num)+ greedily") {
  auto tagged = tag_tokens("The famous ancient city");
  auto spans = chunk_spans(tagged);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0] == std::pair<std::size_t, std::size_t>{0, 4});

  // determiner with no following noun never chunks
  tagged = tag_tokens("the of");
  CHECK(chunk_spans(tagged).empty());

  // a determiner splits adjacent noun groups
  tagged = tag_tokens("299792458 m/s the speed");
  spans = chunk_spans(tagged);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(spans[1] == std::pair<std::size_t, std::size_t>{2, 4});

  // adjectives after a noun run start a new chunk
  tagged = tag_tokens("the python standard library");
  spans = chunk_spans(tagged);
  REQUIRE(spans.size() == 1);  // "standard" is a noun in the bundled lexicon
  CHECK(spans[0] == std::pair<std::size_t, std::size_t>{0, 4});
}
