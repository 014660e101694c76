#include <map>
#include <tuple>

#include "tsteval/ensemble.hpp"
#include "tsteval/error.hpp"

namespace tsteval {
namespace {

using Key = std::tuple<std::string, std::string, std::string>;  // preset, task, language

const std::map<Key, OverallPreset>& presets() {
  static const std::map<Key, OverallPreset> table = [] {
    std::map<Key, OverallPreset> t;
    auto add = [&](const char* preset, const char* task, const char* lang, const char* s, const char* c,
                   const char* f) { t[{preset, task, lang}] = {preset, s, c, f}; };
    const char* sent = "sentiment_transfer";
    const char* detox = "detoxification";

    add("existing", sent, "en", "sentence_accuracy", "cosine", "ppl_gpt2");
    add("existing", sent, "hi", "sentence_accuracy", "cosine", "ppl_mgpt");
    add("existing", sent, "bn", "sentence_accuracy", "cosine", "ppl_mgpt");
    add("existing", detox, "en", "sentence_accuracy", "cosine", "ppl_gpt2");
    add("existing", detox, "hi", "sentence_accuracy", "cosine", "ppl_mgpt");

    add("ours1", sent, "en", "js", "bertscore", "ppl_gpt2_ft");
    add("ours1", sent, "hi", "js", "ter", "ppl_mgpt_ft");
    add("ours1", sent, "bn", "js", "bleurt", "ppl_mgpt_ft");
    add("ours1", detox, "en", "js", "ted", "ppl_gpt2");
    add("ours1", detox, "hi", "js", "bleurt", "ppl_mgpt_ft");

    add("ours2", sent, "en", "hybrid_simulation_st", "hybrid_simulation_cp", "ppl_gpt2_ft");
    add("ours2", sent, "hi", "hybrid_simulation_st", "hybrid_simulation_cp", "ppl_mgpt");
    add("ours2", sent, "bn", "hybrid_simulation_st", "hybrid_simulation_cp", "ppl_mgpt");
    add("ours2", detox, "en", "hybrid_simulation_st", "hybrid_simulation_cp", "ppl_gpt2");
    add("ours2", detox, "hi", "hybrid_simulation_st", "hybrid_simulation_cp", "ppl_mgpt");
    return t;
  }();
  return table;
}

}  // namespace

OverallPreset overall_preset(std::string_view name, const Task& task, const Language& language) {
  auto it = presets().find({std::string(name), task.tag, language.tag});
  if (it == presets().end())
    throw ConfigError("no overall preset '" + std::string(name) + "' for " + task.tag + "/" + language.tag);
  return it->second;
}

}  // namespace tsteval
