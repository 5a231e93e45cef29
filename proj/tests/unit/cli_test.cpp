#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "figura/event_log.hpp"
#include "figura/pipeline.hpp"
#include "oracle.hpp"

using namespace figura;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  const auto lookup = [env](const std::string& name) -> std::optional<std::string> {
    const auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const int code = cli::run(args, out, err, lookup);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "figura_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> generate_args(const std::filesystem::path& out) {
  return {"generate",    "--embeddings", oracle::fixture("world.vec"),
          "--pos-table", oracle::fixture("world_pos.tsv"),
          "--corpus",    oracle::fixture("corpus.conllu"),
          "--stopwords", oracle::fixture("stopwords.txt"),
          "--targets",   oracle::fixture("targets.txt"),
          "--sources",   oracle::fixture("sources.txt"),
          "--out",       out.string()};
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"dance"}).code, cli::kExitUsage);
  const auto r = run({"connect", "--target", "love"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--source"), std::string::npos);
  EXPECT_EQ(run({"connect", "--target", "love", "--source", "math", "--pos", "adverb",
                 "--embeddings", oracle::fixture("world.vec")})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(run({"connect", "--target", "love", "--source", "math", "--pos", "verb", "--set",
                 "connector.bogus=1"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, ConnectPrintsRanking) {
  const auto r = run({"connect", "--embeddings", oracle::fixture("world.vec"), "--pos-table",
                      oracle::fixture("world_pos.tsv"), "--target", "love", "--source", "math",
                      "--pos", "adjective", "--k", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "word\ttotal\tdist_target\tdist_source\timbalance");
  std::getline(lines, line);
  EXPECT_TRUE(line.starts_with("complex\t")) << line;
  EXPECT_NE(r.out.find("connect: "), std::string::npos);
}

TEST(Cli, EnvironmentSuppliesPaths) {
  const auto r = run({"connect", "--target", "love", "--source", "math", "--pos", "adjective"},
                     {{"FIGURA_EMBEDDINGS", oracle::fixture("world.vec")},
                      {"FIGURA_POS_TABLE", oracle::fixture("world_pos.tsv")}});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(Cli, DataErrors) {
  auto r = run({"connect", "--embeddings", "/nonexistent.vec", "--pos-table",
                oracle::fixture("world_pos.tsv"), "--target", "love", "--source", "math", "--pos",
                "verb"});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("nonexistent"), std::string::npos);
  r = run({"connect", "--embeddings", oracle::fixture("world.vec"), "--pos-table",
           oracle::fixture("world_pos.tsv"), "--target", "zeppelin", "--source", "math", "--pos",
           "verb"});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_EQ(run({"replay", "--log", "/nonexistent.jsonl"}).code, cli::kExitData);
}

TEST(Cli, GenerateExportReplay) {
  const auto records = scratch("records.jsonl");
  auto r = run(generate_args(records));
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("generate: 6 metaphors (1 adjective, "), std::string::npos) << r.out;
  EXPECT_EQ(read_records_file(records).size(), 6u);

  const auto csv = scratch("sheet.csv");
  r = run({"export-annotations", "--in", records.string(), "--out", csv.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto sheet = slurp(csv);
  EXPECT_TRUE(sheet.starts_with("id,text,smoothness,properness,novelty\r\n"));
  EXPECT_NE(sheet.find("relationship.park.maintain.explanation,\"Relationship is like a park, "
                       "must be maintained every day.\",,,\r\n"),
            std::string::npos);

  r = run({"replay", "--log", oracle::fixture("followup_300.jsonl")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "replay: 390 events, literal 22/100 (0.22), one_round 27/100 (0.27), "
            "two_round 41/100 (0.41)\n");
}

TEST(Cli, GenerateRespectsPosAndLimit) {
  const auto records = scratch("limited.jsonl");
  auto args = generate_args(records);
  args.insert(args.end(), {"--pos", "verb", "--limit", "1"});
  ASSERT_EQ(run(args).code, cli::kExitOk);
  const auto back = read_records_file(records);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].metaphor.id, "relationship.park.maintain.explanation");
}

TEST(Cli, FrequencyAndLexicon) {
  const auto chat = scratch("chat.txt");
  std::ofstream(chat) << "I love you\nlove is blind\nhello\nhello there\n";
  const auto freq = scratch("freq.tsv");
  auto r = run({"freq", "--in", chat.string(), "--out", freq.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto table = slurp(freq);
  EXPECT_NE(table.find("love\t0.5\n"), std::string::npos) << table;
  EXPECT_NE(table.find("hello\t0.5\n"), std::string::npos);

  const auto targets = scratch("targets.tsv");
  const auto sources = scratch("sources.tsv");
  r = run({"lexicon", "--embeddings", oracle::fixture("world.vec"), "--frequency",
           oracle::fixture("world_freq.tsv"), "--pos-table", oracle::fixture("world_pos.tsv"),
           "--concreteness", oracle::fixture("world_conc.tsv"), "--themes",
           oracle::fixture("themes.txt"), "--targets-out", targets.string(), "--sources-out",
           sources.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(slurp(targets).find("love\t"), std::string::npos);
  EXPECT_FALSE(slurp(sources).empty());
}

TEST(Cli, CsvQuoting) {
  EXPECT_EQ(cli::csv_field("plain"), "plain");
  EXPECT_EQ(cli::csv_field("a, b"), "\"a, b\"");
  EXPECT_EQ(cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(cli::csv_field("two\nlines"), "\"two\nlines\"");
}
