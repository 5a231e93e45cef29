#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "figura/bootstrap.hpp"
#include "figura/connector.hpp"
#include "figura/event_log.hpp"
#include "figura/lexicon.hpp"
#include "figura/pipeline.hpp"
#include "figura/service.hpp"

namespace figura::cli {

namespace {

// Raised while assembling settings from flags; reported as a usage error.
struct UsageError : Error {
  using Error::Error;
};

struct Overrides {
  std::optional<std::string> config_file;
  std::vector<std::string> assignments;
};

// Flag that feeds a configuration key, so flags, env and file share one path.
void key_option(CLI::App* app, const std::string& flag, const std::string& key, Overrides& ov,
                const std::string& description) {
  app->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.assignments.push_back(key + "=" + v); },
      description);
}

void common_options(CLI::App* app, Overrides& ov) {
  app->add_option_function<std::string>(
      "--config", [&ov](const std::string& v) { ov.config_file = v; }, "YAML configuration file");
  app->add_option_function<std::vector<std::string>>(
      "--set",
      [&ov](const std::vector<std::string>& v) {
        ov.assignments.insert(ov.assignments.begin(), v.begin(), v.end());
      },
      "Override a configuration key (key=value)");
}

Settings settings_for(const Overrides& ov, const Config::EnvLookup& env) {
  try {
    std::optional<std::filesystem::path> file;
    if (ov.config_file) file = *ov.config_file;
    return to_settings(load_config(file, ov.assignments, env));
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError(fmt::format("cannot write {}", path));
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot open {}", path));
  return in;
}

void print_warnings(const Warnings& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

std::string format_rate(const FormStats& s) {
  return fmt::format("{}/{} ({:.2f})", s.followed_up, s.delivered, s.rate());
}

int cmd_freq(const std::string& in_path, const std::string& out_path, std::ostream& out) {
  auto in = open_input(in_path);
  const auto counts = compute_utterance_frequency(in);
  auto file = open_output(out_path);
  for (const auto& [token, f] : counts.rows) fmt::print(file, "{}\t{:.10g}\n", token, f);
  fmt::print(out, "freq: {} utterances, {} tokens -> {}\n", counts.utterances, counts.rows.size(),
             out_path);
  return kExitOk;
}

int cmd_lexicon(const Settings& s, const std::string& targets_out, const std::string& sources_out,
                std::ostream& out, std::ostream& err) {
  Warnings warnings;
  const auto store = load_store(s);
  LexicalTables tables;
  const auto need = [](const auto& path, const char* key) {
    if (!path) throw LoadError(fmt::format("setting '{}' is required", key));
    return path->string();
  };
  tables.frequency = read_frequency_file(need(s.frequency, "frequency"), s.lowercase);
  tables.pos = read_pos_file(need(s.pos_table, "pos_table"), s.lowercase);
  tables.concreteness =
      read_concreteness_file(need(s.concreteness, "concreteness"), s.lowercase, &warnings);
  const auto themes = read_word_list_file(need(s.themes, "themes"), s.lowercase);

  const auto targets = select_targets(themes, *store, tables, s.target_selection, &warnings);
  const auto sources = select_sources(tables, s.source_selection, &warnings);

  auto tfile = open_output(targets_out);
  for (const auto& e : targets.entries) {
    fmt::print(tfile, "{}\t{}\t{:.10g}\n", e.word, to_string(e.pos), e.frequency);
  }
  auto sfile = open_output(sources_out);
  for (const auto& e : sources.entries) {
    fmt::print(sfile, "{}\t{:.10g}\t{:.4g}\n", e.word, e.frequency, e.concreteness.value_or(0.0));
  }
  print_warnings(warnings, err);
  fmt::print(out, "lexicon: {} targets -> {}, {} sources -> {}\n", targets.entries.size(),
             targets_out, sources.entries.size(), sources_out);
  return kExitOk;
}

int cmd_connect(const Settings& s, const std::string& target, const std::string& source,
                const std::string& pos_name, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  const auto pos = parse_pos(pos_name);
  if (!pos || !is_content_pos(*pos)) {
    throw UsageError(fmt::format("--pos must be adjective, verb or noun, got '{}'", pos_name));
  }
  const auto store = load_store(s);
  const auto pos_table = load_pos_table(s);
  Warnings warnings;
  const auto ranked = rank_connecting_words(*store, target, source, *pos, pos_table, s.rank, &warnings);

  std::ofstream file;
  if (!out_path.empty()) file = open_output(out_path);
  std::ostream& rows = out_path.empty() ? out : file;
  rows << "word\ttotal\tdist_target\tdist_source\timbalance\n";
  for (const auto& c : ranked) {
    fmt::print(rows, "{}\t{:.12g}\t{:.12g}\t{:.12g}\t{:.12g}\n", c.word, c.score.total,
               c.score.dist_target, c.score.dist_source, c.score.imbalance);
  }
  print_warnings(warnings, err);
  fmt::print(out, "connect: {} {} connecting words for ({}, {})\n", ranked.size(),
             to_string(*pos), target, source);
  return kExitOk;
}

int cmd_generate(const Settings& s, const std::vector<std::string>& pos_names,
                 std::optional<std::size_t> limit, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  GenerationRequest request;
  request.targets = load_word_list(s.targets, s.lowercase);
  request.sources = load_word_list(s.sources, s.lowercase);
  if (request.targets.empty() || request.sources.empty()) {
    throw UsageError("generate needs --targets and --sources word lists");
  }
  if (!pos_names.empty()) {
    request.pos.clear();
    for (const auto& p : pos_names) {
      const auto pos = parse_pos(p);
      if (!pos || !is_content_pos(*pos)) throw UsageError(fmt::format("invalid --pos '{}'", p));
      request.pos.push_back(*pos);
    }
  }
  request.limit = limit;

  Warnings warnings;
  const auto pipeline = load_pipeline(s, load_store(s), &warnings);
  const auto records = pipeline->generate(request, &warnings);
  auto file = open_output(out_path);
  write_records(file, records);

  std::array<std::size_t, 3> by_pos{};
  for (const auto& r : records) {
    const auto p = r.metaphor.triplet.pos;
    ++by_pos[p == PartOfSpeech::adjective ? 0 : p == PartOfSpeech::verb ? 1 : 2];
  }
  print_warnings(warnings, err);
  fmt::print(out, "generate: {} metaphors ({} adjective, {} verb, {} noun) -> {}\n",
             records.size(), by_pos[0], by_pos[1], by_pos[2], out_path);
  return kExitOk;
}

int cmd_export(const std::string& in_path, const std::string& out_path, std::ostream& out) {
  const auto records = read_records_file(in_path);
  auto file = open_output(out_path);
  file << "id,text,smoothness,properness,novelty\r\n";
  for (const auto& r : records) {
    file << csv_field(r.metaphor.id) << ',' << csv_field(r.metaphor.text) << ",,,\r\n";
  }
  fmt::print(out, "export-annotations: {} rows -> {}\n", records.size(), out_path);
  return kExitOk;
}

int cmd_replay(const std::string& log_path, const std::string& out_path, std::ostream& out) {
  if (!std::filesystem::exists(log_path)) throw LoadError(fmt::format("cannot open {}", log_path));
  const auto events = read_event_log_file(log_path);
  const auto stats = record_and_report(events);
  if (!out_path.empty()) {
    auto file = open_output(out_path);
    file << to_json(stats).dump(2) << '\n';
  }
  fmt::print(out, "replay: {} events, literal {}, one_round {}, two_round {}\n", events.size(),
             format_rate(stats[ExpressionForm::literal]), format_rate(stats[ExpressionForm::one_round]),
             format_rate(stats[ExpressionForm::two_round]));
  return kExitOk;
}

int cmd_serve(const Settings& s, std::ostream& out, std::ostream& err) {
  Warnings warnings;
  MetaphorService service(load_service_resources(s, &warnings));
  print_warnings(warnings, err);
  HttpServer server(service);
  const int port = server.bind(s.host, s.port);
  fmt::print(out, "serve: http://{}:{} ({} sessions restored)\n", s.host, port,
             service.session_count());
  out.flush();
  server.listen();
  return kExitOk;
}

}  // namespace

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Config::EnvLookup& env) {
  CLI::App app{"Metaphor generation and chat service toolkit", "figura"};
  app.require_subcommand(1, 1);
  Overrides ov;

  std::string in_path, out_path, log_path, targets_out, sources_out;
  std::string target, source, pos_name;
  std::vector<std::string> pos_names;
  std::optional<std::size_t> limit;

  auto* freq = app.add_subcommand("freq", "Utterance-containment frequency of a chat log");
  freq->add_option("--in", in_path, "Chat log, one utterance per line")->required();
  freq->add_option("--out", out_path, "Frequency TSV to write")->required();

  auto* lexicon = app.add_subcommand("lexicon", "Select target and source concepts");
  common_options(lexicon, ov);
  key_option(lexicon, "--embeddings", "embeddings", ov, "Word-vector file");
  key_option(lexicon, "--frequency", "frequency", ov, "Frequency TSV");
  key_option(lexicon, "--pos-table", "pos_table", ov, "POS TSV");
  key_option(lexicon, "--concreteness", "concreteness", ov, "Concreteness TSV");
  key_option(lexicon, "--themes", "themes", ov, "Theme list");
  lexicon->add_option("--targets-out", targets_out, "Target TSV to write")->required();
  lexicon->add_option("--sources-out", sources_out, "Source TSV to write")->required();

  auto* connect = app.add_subcommand("connect", "Rank connecting words for one pair");
  common_options(connect, ov);
  key_option(connect, "--embeddings", "embeddings", ov, "Word-vector file");
  key_option(connect, "--pos-table", "pos_table", ov, "POS TSV");
  key_option(connect, "--k", "connector.k", ov, "Number of connecting words");
  key_option(connect, "--beta", "connector.beta", ov, "Smoothing constant of the balance term");
  connect->add_option("--target", target, "Target concept")->required();
  connect->add_option("--source", source, "Source concept")->required();
  connect->add_option("--pos", pos_name, "adjective, verb or noun")->required();
  connect->add_option("--out", out_path, "TSV to write instead of standard output");

  auto* generate = app.add_subcommand("generate", "Generate metaphors as JSON lines");
  common_options(generate, ov);
  key_option(generate, "--embeddings", "embeddings", ov, "Word-vector file");
  key_option(generate, "--pos-table", "pos_table", ov, "POS TSV");
  key_option(generate, "--corpus", "corpus", ov, "CoNLL-U corpus");
  key_option(generate, "--stopwords", "stopwords", ov, "Stopword list");
  key_option(generate, "--templates", "templates", ov, "Template file");
  key_option(generate, "--targets", "targets", ov, "Target list");
  key_option(generate, "--sources", "sources", ov, "Source list");
  key_option(generate, "--k", "connector.k", ov, "Connecting words per pair and POS");
  key_option(generate, "--beta", "connector.beta", ov, "Smoothing constant of the balance term");
  generate->add_option("--pos", pos_names, "Restrict to these parts of speech");
  generate->add_option("--limit", limit, "Keep at most this many metaphors");
  generate->add_option("--out", out_path, "JSON-lines file to write")->required();

  auto* export_cmd =
      app.add_subcommand("export-annotations", "Blank annotation sheet for generated metaphors");
  export_cmd->add_option("--in", in_path, "Metaphor JSON lines")->required();
  export_cmd->add_option("--out", out_path, "CSV to write")->required();

  auto* replay = app.add_subcommand("replay", "Follow-up rates from an event log");
  replay->add_option("--log", log_path, "Event log (JSON lines)")->required();
  replay->add_option("--out", out_path, "Write the metrics JSON here");

  auto* serve = app.add_subcommand("serve", "Run the HTTP chat service");
  common_options(serve, ov);
  key_option(serve, "--host", "server.host", ov, "Listen address");
  key_option(serve, "--port", "server.port", ov, "Listen port (0 picks one)");
  key_option(serve, "--event-log", "event_log", ov, "Append-only event log");
  key_option(serve, "--inventory", "inventory", ov, "Metaphor JSON lines to serve");
  key_option(serve, "--seed", "seed", ov, "Base seed for session generators");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (freq->parsed()) return cmd_freq(in_path, out_path, out);
    if (lexicon->parsed()) {
      return cmd_lexicon(settings_for(ov, env), targets_out, sources_out, out, err);
    }
    if (connect->parsed()) {
      return cmd_connect(settings_for(ov, env), target, source, pos_name, out_path, out, err);
    }
    if (generate->parsed()) {
      return cmd_generate(settings_for(ov, env), pos_names, limit, out_path, out, err);
    }
    if (export_cmd->parsed()) return cmd_export(in_path, out_path, out);
    if (replay->parsed()) return cmd_replay(log_path, out_path, out);
    if (serve->parsed()) return cmd_serve(settings_for(ov, env), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace figura::cli
