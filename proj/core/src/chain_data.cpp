#include "chain_data.hpp"

namespace chaindrift::chaindata {

const std::vector<std::string>& adaptive_templates() {
  static const std::vector<std::string> templates = {
      "Tell me more about %s.",
      "What else is known about %s?",
      "Can you expand on %s?",
  };
  return templates;
}

const std::vector<std::pair<std::string, std::string>>& synonyms() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"is", "remains"},
      {"was", "remained"},
      {"began", "started"},
      {"held", "hosted"},
      {"wrote", "authored"},
      {"discovered", "identified"},
      {"designed", "created"},
      {"won", "claimed"},
      {"attracts", "draws"},
      {"completed", "finished"},
      {"displays", "exhibits"},
      {"equals", "matches"},
      {"approximately", "roughly"},
      {"nearly", "almost"},
      {"about", "around"},
  };
  return table;
}

}  // namespace chaindrift::chaindata
