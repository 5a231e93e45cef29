#include "figura/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "figura/error.hpp"
#include "figura/text.hpp"

namespace figura {

namespace {

struct Default {
  const char* key;
  const char* value;
};

constexpr Default kDefaults[] = {
    {"embeddings", ""},
    {"lowercase", "true"},
    {"pos_table", ""},
    {"frequency", ""},
    {"concreteness", ""},
    {"themes", ""},
    {"corpus", ""},
    {"stopwords", ""},
    {"templates", ""},
    {"mass_nouns", ""},
    {"targets", ""},
    {"sources", ""},
    {"inventory", ""},
    {"event_log", ""},
    {"connector.beta", "0.01"},
    {"connector.k", "5"},
    {"adjective.describe_threshold", "3"},
    {"adjective.salience_threshold", "1"},
    {"adjective.templates", "as_as"},
    {"validity.min_tokens", "5"},
    {"validity.max_tokens", "40"},
    {"lexicon.expansion_k", "5"},
    {"lexicon.min_freq", "1e-5"},
    {"lexicon.top_by_freq", "10000"},
    {"lexicon.top_by_conc", "3000"},
    {"trigger.threshold", "0.5"},
    {"trigger.keyword_weight", "0.5"},
    {"trigger.topic_weight", "0.4"},
    {"trigger.qa_weight", "0.1"},
    {"trigger.neighbor_k", "5"},
    {"dialogue.follow_up_window", "1"},
    {"dialogue.fallback_reply", "I see. Tell me more."},
    {"seed", "20190601"},
    {"server.host", "127.0.0.1"},
    {"server.port", "8080"},
};

void flatten(const YAML::Node& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const auto name = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? name : prefix + "." + name, out);
    }
  } else if (node.IsSequence()) {
    std::string joined;
    for (const auto& item : node) {
      if (!joined.empty()) joined += ',';
      joined += item.as<std::string>();
    }
    out.emplace_back(prefix, joined);
  } else if (node.IsScalar()) {
    out.emplace_back(prefix, node.as<std::string>());
  } else if (node.IsNull()) {
    out.emplace_back(prefix, "");
  }
}

}  // namespace

Config::Config() {
  for (const auto& d : kDefaults) entries_.emplace(d.key, Entry{d.value, "default", {}});
}

bool Config::known(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

const Config::Entry& Config::entry(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ParameterError(fmt::format("unknown configuration key '{}'", key));
  return it->second;
}

const std::string& Config::raw(std::string_view key) const { return entry(key).value; }
std::string Config::origin(std::string_view key) const { return entry(key).origin; }

void Config::set(std::string_view key, std::string value, std::string origin) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ParameterError(fmt::format("unknown configuration key '{}'", key));
  it->second = Entry{std::move(value), std::move(origin), {}};
}

void Config::merge_yaml(std::string_view yaml, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw DataError(fmt::format("invalid configuration: {}", e.what()));
  }
  if (root.IsNull()) return;
  if (!root.IsMap()) throw DataError("configuration must be a mapping");
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(root, "", flat);
  for (auto& [key, value] : flat) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw DataError(fmt::format("unknown configuration key '{}'", key));
    it->second = Entry{std::move(value), "file", base_dir};
  }
}

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(fmt::format("cannot open configuration file {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  merge_yaml(text.str(), path.parent_path());
}

std::string Config::env_name(std::string_view key) {
  std::string name = "FIGURA_";
  for (char c : key) {
    name += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

Config::EnvLookup Config::process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

void Config::merge_environment(const EnvLookup& lookup) {
  for (auto& [key, e] : entries_) {
    if (auto value = lookup(env_name(key))) e = Entry{std::move(*value), "environment", {}};
  }
}

void Config::merge_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ParameterError(fmt::format("override '{}' is not key=value", assignment));
  }
  set(trim(assignment.substr(0, eq)), std::string(trim(assignment.substr(eq + 1))), "command line");
}

std::string Config::get_string(std::string_view key) const { return raw(key); }

double Config::get_double(std::string_view key) const {
  const auto v = parse_double(trim(raw(key)));
  if (!v) throw ParameterError(fmt::format("{} must be a number, got '{}'", key, raw(key)));
  return *v;
}

std::size_t Config::get_size(std::string_view key) const {
  const auto v = parse_integer(trim(raw(key)));
  if (!v || *v < 0) {
    throw ParameterError(fmt::format("{} must be a non-negative integer, got '{}'", key, raw(key)));
  }
  return static_cast<std::size_t>(*v);
}

std::uint64_t Config::get_u64(std::string_view key) const {
  const auto text = trim(raw(key));
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParameterError(fmt::format("{} must be an unsigned integer, got '{}'", key, raw(key)));
  }
  return v;
}

bool Config::get_bool(std::string_view key) const {
  const auto v = to_lower(trim(raw(key)));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParameterError(fmt::format("{} must be a boolean, got '{}'", key, raw(key)));
}

std::vector<std::string> Config::get_list(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto part : split(raw(key), ',')) {
    const auto item = trim(part);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

std::optional<std::filesystem::path> Config::get_path(std::string_view key) const {
  const auto& e = entry(key);
  if (trim(e.value).empty()) return std::nullopt;
  std::filesystem::path p(std::string(trim(e.value)));
  if (p.is_relative() && !e.base_dir.empty()) p = e.base_dir / p;
  return p;
}

Config load_config(const std::optional<std::filesystem::path>& file,
                   const std::vector<std::string>& overrides, const Config::EnvLookup& env) {
  Config config;
  if (file) config.merge_file(*file);
  if (env) config.merge_environment(env);
  for (const auto& o : overrides) config.merge_override(o);
  return config;
}

Settings to_settings(const Config& c) {
  Settings s;
  s.embeddings = c.get_path("embeddings");
  s.pos_table = c.get_path("pos_table");
  s.frequency = c.get_path("frequency");
  s.concreteness = c.get_path("concreteness");
  s.themes = c.get_path("themes");
  s.corpus = c.get_path("corpus");
  s.stopwords = c.get_path("stopwords");
  s.templates = c.get_path("templates");
  s.mass_nouns = c.get_path("mass_nouns");
  s.targets = c.get_path("targets");
  s.sources = c.get_path("sources");
  s.inventory = c.get_path("inventory");
  s.event_log = c.get_path("event_log");
  s.lowercase = c.get_bool("lowercase");

  s.rank.beta = c.get_double("connector.beta");
  s.rank.k = c.get_size("connector.k");
  if (s.rank.beta <= 0) throw ParameterError("connector.beta must be positive");
  if (s.rank.k == 0) throw ParameterError("connector.k must be at least 1");

  s.adjective.describe = c.get_size("adjective.describe_threshold");
  s.adjective.salience = c.get_size("adjective.salience_threshold");
  s.adjective_templates = c.get_list("adjective.templates");
  s.filter.min_tokens = c.get_size("validity.min_tokens");
  s.filter.max_tokens = c.get_size("validity.max_tokens");
  if (s.filter.min_tokens > s.filter.max_tokens) {
    throw ParameterError("validity.min_tokens exceeds validity.max_tokens");
  }

  s.target_selection.expansion_k = c.get_size("lexicon.expansion_k");
  s.target_selection.min_freq = c.get_double("lexicon.min_freq");
  s.source_selection.top_by_freq = c.get_size("lexicon.top_by_freq");
  s.source_selection.top_by_conc = c.get_size("lexicon.top_by_conc");

  s.trigger.threshold = c.get_double("trigger.threshold");
  s.trigger.keyword_weight = c.get_double("trigger.keyword_weight");
  s.trigger.topic_weight = c.get_double("trigger.topic_weight");
  s.trigger.qa_weight = c.get_double("trigger.qa_weight");
  s.trigger.neighbor_k = c.get_size("trigger.neighbor_k");

  s.dialogue.follow_up_window = c.get_size("dialogue.follow_up_window");
  if (s.dialogue.follow_up_window == 0) {
    throw ParameterError("dialogue.follow_up_window must be at least 1");
  }
  s.dialogue.fallback_reply = c.get_string("dialogue.fallback_reply");
  s.seed = c.get_u64("seed");
  s.host = c.get_string("server.host");
  const auto port = c.get_size("server.port");
  if (port > 65535) throw ParameterError("server.port out of range");
  s.port = static_cast<int>(port);
  return s;
}

}  // namespace figura
