#pragma once

// Bundled tables for the chain simulator: adaptive follow-up templates and
// the tag-class-preserving synonym table used by the paraphrase operator.

#include <string>
#include <utility>
#include <vector>

namespace chaindrift::chaindata {

// "%s" is replaced with a fact surface from the previous response.
const std::vector<std::string>& adaptive_templates();

// original -> replacement; both sides share the same part-of-speech class
// (verb->verb, adverb->adverb), so substitution never alters chunking.
const std::vector<std::pair<std::string, std::string>>& synonyms();

}  // namespace chaindrift::chaindata
