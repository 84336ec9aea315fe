#include "chaindrift/text.hpp"

#include <cctype>
#include <unordered_map>

namespace chaindrift::text {

namespace {

bool is_word_char(unsigned char c) {
  // non-ASCII bytes are treated as word characters (UTF-8 passthrough)
  return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_digit_char(unsigned char c) { return std::isdigit(c) != 0; }

bool is_letter_char(unsigned char c) { return std::isalpha(c) != 0 || c >= 0x80; }

// word -> tag table covering the bundled corpus vocabulary. Unknown words
// fall through to the suffix rules in tag_token().
const std::unordered_map<std::string, Tag>& lexicon() {
  static const std::unordered_map<std::string, Tag> table = {
      // determiners
      {"the", Tag::Det},
      {"a", Tag::Det},
      {"an", Tag::Det},
      {"this", Tag::Det},
      {"that", Tag::Det},
      {"these", Tag::Det},
      {"those", Tag::Det},
      {"its", Tag::Det},
      {"every", Tag::Det},
      {"each", Tag::Det},

      // verbs used by the corpus templates and the synonym table
      {"is", Tag::Verb},
      {"are", Tag::Verb},
      {"was", Tag::Verb},
      {"were", Tag::Verb},
      {"be", Tag::Verb},
      {"been", Tag::Verb},
      {"being", Tag::Verb},
      {"has", Tag::Verb},
      {"have", Tag::Verb},
      {"had", Tag::Verb},
      {"can", Tag::Verb},
      {"did", Tag::Verb},
      {"does", Tag::Verb},
      {"do", Tag::Verb},
      {"equals", Tag::Verb},
      {"matches", Tag::Verb},
      {"remains", Tag::Verb},
      {"remained", Tag::Verb},
      {"became", Tag::Verb},
      {"began", Tag::Verb},
      {"started", Tag::Verb},
      {"ended", Tag::Verb},
      {"shaped", Tag::Verb},
      {"place", Tag::Verb},
      {"released", Tag::Verb},
      {"designed", Tag::Verb},
      {"created", Tag::Verb},
      {"maintained", Tag::Verb},
      {"documents", Tag::Verb},
      {"painted", Tag::Verb},
      {"hangs", Tag::Verb},
      {"displays", Tag::Verb},
      {"exhibits", Tag::Verb},
      {"completed", Tag::Verb},
      {"finished", Tag::Verb},
      {"held", Tag::Verb},
      {"hosted", Tag::Verb},
      {"won", Tag::Verb},
      {"claimed", Tag::Verb},
      {"featured", Tag::Verb},
      {"attracts", Tag::Verb},
      {"draws", Tag::Verb},
      {"written", Tag::Verb},
      {"wrote", Tag::Verb},
      {"authored", Tag::Verb},
      {"published", Tag::Verb},
      {"belongs", Tag::Verb},
      {"praise", Tag::Verb},
      {"formulated", Tag::Verb},
      {"studied", Tag::Verb},
      {"introduced", Tag::Verb},
      {"appeared", Tag::Verb},
      {"learn", Tag::Verb},
      {"discovered", Tag::Verb},
      {"identified", Tag::Verb},
      {"reported", Tag::Verb},
      {"lies", Tag::Verb},
      {"flows", Tag::Verb},
      {"stands", Tag::Verb},
      {"located", Tag::Verb},
      {"situated", Tag::Verb},
      {"tell", Tag::Verb},
      {"expand", Tag::Verb},
      {"proved", Tag::Verb},
      {"reshaped", Tag::Verb},
      {"grew", Tag::Verb},
      {"took", Tag::Verb},
      {"known", Tag::Verb},
      {"unfolds", Tag::Verb},

      // adjectives
      {"chemical", Tag::Adj},
      {"atomic", Tag::Adj},
      {"molar", Tag::Adj},
      {"noble", Tag::Adj},
      {"famous", Tag::Adj},
      {"large", Tag::Adj},
      {"largest", Tag::Adj},
      {"longest", Tag::Adj},
      {"highest", Tag::Adj},
      {"tallest", Tag::Adj},
      {"deepest", Tag::Adj},
      {"political", Tag::Adj},
      {"industrial", Tag::Adj},
      {"official", Tag::Adj},
      {"olympic", Tag::Adj},
      {"national", Tag::Adj},
      {"metropolitan", Tag::Adj},
      {"celebrated", Tag::Adj},
      {"modern", Tag::Adj},
      {"classical", Tag::Adj},
      {"advanced", Tag::Adj},
      {"ancient", Tag::Adj},
      {"first", Tag::Adj},
      {"second", Tag::Adj},
      {"third", Tag::Adj},
      {"stable", Tag::Adj},
      {"great", Tag::Adj},
      {"cold", Tag::Adj},
      {"holy", Tag::Adj},
      {"scientific", Tag::Adj},
      {"victorian", Tag::Adj},
      {"gilded", Tag::Adj},
      {"glorious", Tag::Adj},
      {"protestant", Tag::Adj},
      {"civil", Tag::Adj},
      {"gothic", Tag::Adj},
      {"romantic", Tag::Adj},
      {"dystopian", Tag::Adj},
      {"historical", Tag::Adj},
      {"satirical", Tag::Adj},
      {"philosophical", Tag::Adj},
      {"modernist", Tag::Adj},
      {"realist", Tag::Adj},
      {"picaresque", Tag::Adj},
      {"epic", Tag::Adj},
      {"pythagorean", Tag::Adj},
      {"binomial", Tag::Adj},
      {"normal", Tag::Adj},
      {"least", Tag::Adj},
      {"differential", Tag::Adj},
      {"little", Tag::Adj},
      {"infinite", Tag::Adj},
      {"european", Tag::Adj},
      {"byzantine", Tag::Adj},
      {"ottoman", Tag::Adj},
      {"mongol", Tag::Adj},
      {"napoleonic", Tag::Adj},
      {"crimean", Tag::Adj},
      {"cuban", Tag::Adj},
      {"haitian", Tag::Adj},
      {"roman", Tag::Adj},
      {"british", Tag::Adj},
      {"french", Tag::Adj},
      {"german", Tag::Adj},
      {"spanish", Tag::Adj},
      {"italian", Tag::Adj},
      {"japanese", Tag::Adj},
      {"chinese", Tag::Adj},
      {"indian", Tag::Adj},
      {"brazilian", Tag::Adj},
      {"egyptian", Tag::Adj},
      {"canadian", Tag::Adj},
      {"australian", Tag::Adj},
      {"russian", Tag::Adj},
      {"american", Tag::Adj},
      {"mexican", Tag::Adj},
      {"argentine", Tag::Adj},
      {"chilean", Tag::Adj},
      {"peruvian", Tag::Adj},
      {"norwegian", Tag::Adj},
      {"swedish", Tag::Adj},
      {"finnish", Tag::Adj},
      {"polish", Tag::Adj},
      {"greek", Tag::Adj},
      {"turkish", Tag::Adj},
      {"kenyan", Tag::Adj},
      {"nigerian", Tag::Adj},
      {"uruguayan", Tag::Adj},
      {"english", Tag::Adj},
      {"dutch", Tag::Adj},

      // prepositions, conjunctions, adverbs, pronouns
      {"of", Tag::Other},
      {"in", Tag::Other},
      {"on", Tag::Other},
      {"at", Tag::Other},
      {"by", Tag::Other},
      {"for", Tag::Other},
      {"with", Tag::Other},
      {"from", Tag::Other},
      {"to", Tag::Other},
      {"into", Tag::Other},
      {"over", Tag::Other},
      {"under", Tag::Other},
      {"between", Tag::Other},
      {"across", Tag::Other},
      {"through", Tag::Other},
      {"near", Tag::Other},
      {"per", Tag::Other},
      {"and", Tag::Other},
      {"or", Tag::Other},
      {"but", Tag::Other},
      {"as", Tag::Other},
      {"than", Tag::Other},
      {"not", Tag::Other},
      {"no", Tag::Other},
      {"also", Tag::Other},
      {"very", Tag::Other},
      {"about", Tag::Other},
      {"around", Tag::Other},
      {"almost", Tag::Other},
      {"more", Tag::Other},
      {"most", Tag::Other},
      {"else", Tag::Other},
      {"me", Tag::Other},
      {"you", Tag::Other},
      {"it", Tag::Other},
      {"they", Tag::Other},
      {"we", Tag::Other},
      {"he", Tag::Other},
      {"she", Tag::Other},
      {"i", Tag::Other},
      {"what", Tag::Other},
      {"which", Tag::Other},
      {"when", Tag::Other},
      {"where", Tag::Other},
      {"who", Tag::Other},
      {"how", Tag::Other},
      {"why", Tag::Other},
      {"there", Tag::Other},
      {"here", Tag::Other},

      // nouns the suffix rules would otherwise mis-tag
      {"italy", Tag::Noun},
      {"family", Tag::Noun},
      {"assembly", Tag::Noun},

      // words that are verbs or adjectives in general English but appear
      // in the corpus only as names
      {"go", Tag::Noun},
      {"swift", Tag::Noun},
      {"rust", Tag::Noun},
      {"dart", Tag::Noun},
      {"scream", Tag::Noun},
      {"kiss", Tag::Noun},
      {"standard", Tag::Noun},
      {"developer", Tag::Noun},
  };
  return table;
}

}  // namespace

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Det: return "DET";
    case Tag::Adj: return "ADJ";
    case Tag::Noun: return "NOUN";
    case Tag::Verb: return "VERB";
    case Tag::Num: return "NUM";
    case Tag::Other: return "OTHER";
  }
  return "OTHER";
}

std::vector<std::string> tokenize(std::string_view input) {
  std::string folded;
  folded.reserve(input.size());
  for (char ch : input) {
    auto c = static_cast<unsigned char>(ch);
    folded.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
  }

  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };

  const std::size_t n = folded.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(folded[i]);
    if (is_word_char(c) || c == '%' || c == '$') {
      current.push_back(folded[i]);
      continue;
    }
    const auto prev = i > 0 ? static_cast<unsigned char>(folded[i - 1]) : '\0';
    const auto next = i + 1 < n ? static_cast<unsigned char>(folded[i + 1]) : '\0';
    if (c == '.' && is_digit_char(prev) && is_digit_char(next)) {
      current.push_back('.');  // decimal point inside a number
      continue;
    }
    if ((c == '/' || c == '-' || c == '\'') && is_word_char(prev) && is_word_char(next)) {
      current.push_back(folded[i]);  // intra-word glue: m/s, utf-8, apple's
      continue;
    }
    if ((c == ',' || c == '_') && is_digit_char(prev) && is_digit_char(next)) {
      continue;  // thousands separator: elide without splitting
    }
    flush();
  }
  flush();
  return tokens;
}

Tag tag_token(const std::string& token) {
  const auto& table = lexicon();
  if (auto it = table.find(token); it != table.end()) return it->second;

  bool has_digit = false;
  bool has_letter = false;
  for (char ch : token) {
    const auto c = static_cast<unsigned char>(ch);
    has_digit = has_digit || is_digit_char(c);
    has_letter = has_letter || is_letter_char(c);
  }
  if (has_digit) return Tag::Num;
  if (!has_letter) return Tag::Other;

  auto ends_with = [&](std::string_view suffix) {
    return token.size() > suffix.size() &&
           token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("tion") || ends_with("ness") || ends_with("ment") || ends_with("ity")) {
    return Tag::Noun;
  }
  if (ends_with("ly")) return Tag::Other;
  return Tag::Noun;
}

std::vector<std::pair<std::string, Tag>> tag_tokens(std::string_view input) {
  std::vector<std::pair<std::string, Tag>> out;
  for (auto& token : tokenize(input)) {
    Tag t = tag_token(token);
    out.emplace_back(std::move(token), t);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_spans(
    const std::vector<std::pair<std::string, Tag>>& tagged) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  const std::size_t n = tagged.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (tagged[j].second == Tag::Det) ++j;
    while (j < n && tagged[j].second == Tag::Adj) ++j;
    std::size_t nouns = 0;
    while (j < n && (tagged[j].second == Tag::Noun || tagged[j].second == Tag::Num)) {
      ++j;
      ++nouns;
    }
    if (nouns > 0) {
      spans.emplace_back(i, j);
      i = j;
    } else {
      ++i;
    }
  }
  return spans;
}

}  // namespace chaindrift::text
