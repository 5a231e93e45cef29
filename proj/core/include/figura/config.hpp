#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figura/connector.hpp"
#include "figura/dialogue.hpp"
#include "figura/evidence.hpp"
#include "figura/lexicon.hpp"

namespace figura {

/// Flat "section.key" -> value view of the configuration, layered as
/// built-in defaults < YAML file < FIGURA_* environment < command-line
/// overrides. Environment names are the key upper-cased with '.' replaced by
/// '_' (connector.beta -> FIGURA_CONNECTOR_BETA).
class Config {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  Config();

  // Throws DataError for unknown keys or unreadable YAML.
  void merge_file(const std::filesystem::path& path);
  void merge_yaml(std::string_view yaml, const std::filesystem::path& base_dir);
  void merge_environment(const EnvLookup& lookup);
  // "key=value"; throws ParameterError on unknown keys or a missing '='.
  void merge_override(std::string_view assignment);
  void set(std::string_view key, std::string value, std::string origin = "override");

  bool known(std::string_view key) const;
  std::vector<std::string> keys() const;
  // Empty for path keys that are unset.
  const std::string& raw(std::string_view key) const;
  std::string origin(std::string_view key) const;

  std::string get_string(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::size_t get_size(std::string_view key) const;
  std::uint64_t get_u64(std::string_view key) const;
  bool get_bool(std::string_view key) const;
  std::vector<std::string> get_list(std::string_view key) const;
  // Relative paths from the file resolve against the file's directory.
  std::optional<std::filesystem::path> get_path(std::string_view key) const;

  static std::string env_name(std::string_view key);
  static EnvLookup process_environment();

 private:
  struct Entry {
    std::string value;
    std::string origin = "default";
    std::filesystem::path base_dir;
  };
  const Entry& entry(std::string_view key) const;

  std::map<std::string, Entry, std::less<>> entries_;
};

// Defaults < file < environment < overrides.
Config load_config(const std::optional<std::filesystem::path>& file,
                   const std::vector<std::string>& overrides,
                   const Config::EnvLookup& env = Config::process_environment());

struct Settings {
  std::optional<std::filesystem::path> embeddings, pos_table, frequency, concreteness, themes,
      corpus, stopwords, templates, mass_nouns, targets, sources, inventory, event_log;
  bool lowercase = true;
  RankOptions rank;
  AdjectiveThresholds adjective;
  std::vector<std::string> adjective_templates;
  SentenceFilter filter;
  TargetSelection target_selection;
  SourceSelection source_selection;
  TriggerOptions trigger;
  DialogueOptions dialogue;
  std::uint64_t seed = 0;
  std::string host;
  int port = 0;
};

// Typed view; ParameterError names the offending key.
Settings to_settings(const Config& config);

}  // namespace figura
