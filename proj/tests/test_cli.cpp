// End-to-end checks of the command-line surface: exit codes, output
// formats, determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(AMRST_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  return {WEXITSTATUS(pclose(pipe)), output};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "amrst_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_scratch(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("amr: valid blocks succeed, partial failure exits 2") {
  const auto good = write_scratch("good.amr", "(a / alpha)\n\n(b / beta :mod (c / gamma))\n");
  const CliResult ok = run_cli("amr parse -i " + good.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("(a / alpha)") != std::string::npos);

  const auto mixed =
      write_scratch("mixed.amr", "(a / alpha)\n\n(broken / \n\n(c / gamma)\n");
  const CliResult partial = run_cli("amr parse -i " + mixed.string());
  CHECK(partial.exit_code == 2);
  CHECK(partial.output.find("(a / alpha)") != std::string::npos);
  CHECK(partial.output.find("(c / gamma)") != std::string::npos);
  CHECK(partial.output.find("block 2") != std::string::npos);
}

TEST_CASE("amr: parse -> serialize round trip scores F=1 via smatch") {
  const auto file = write_scratch("round.amr",
                                  "(e / eat-01 :ARG0 (d / dog :location (u / under :op1 "
                                  "(t / table))) :ARG1 (c / crumb :poss (c2 / child)))\n");
  const fs::path out = scratch_dir() / "round_out.amr";
  CHECK(run_cli("amr parse -i " + file.string() + " -o " + out.string()).exit_code == 0);
  const CliResult scored = run_cli("smatch " + file.string() + " " + out.string() + " --exact");
  CHECK(scored.exit_code == 0);
  CHECK(scored.output.find("F-score: 1.0000") != std::string::npos);
}

TEST_CASE("smatch: identical file scores all 1, mismatched counts exit 1") {
  const auto file = write_scratch("pairs.amr", "(a / alpha)\n\n(b / beta)\n");
  const CliResult self = run_cli("smatch " + file.string() + " " + file.string());
  CHECK(self.exit_code == 0);
  CHECK(self.output.find("Precision: 1.0000  Recall: 1.0000  F-score: 1.0000") !=
        std::string::npos);
  CHECK(self.output.find("quartiles") != std::string::npos);

  const auto shorter = write_scratch("single.amr", "(a / alpha)\n");
  const CliResult mismatch = run_cli("smatch " + file.string() + " " + shorter.string());
  CHECK(mismatch.exit_code == 1);
  CHECK(mismatch.output.find("mismatch") != std::string::npos);
}

TEST_CASE("smatch: derived fixture prints 0.7500") {
  const auto a = write_scratch("dog.amr", "(e / eat-01 :ARG0 (d / dog))\n");
  const auto b = write_scratch("cat.amr", "(e2 / eat-01 :ARG0 (c / cat))\n");
  const CliResult res = run_cli("smatch " + a.string() + " " + b.string() + " --exact");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("Precision: 0.7500  Recall: 0.7500  F-score: 0.7500") !=
        std::string::npos);
}

TEST_CASE("wmd: identical sentences print 0.000000") {
  const CliResult res =
      run_cli("wmd --sentence-a \"dogs eat crumbs\" --sentence-b \"dogs eat crumbs\"");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "0.000000\n");
}

TEST_CASE("wmd: verbless input with --verbs exits 3") {
  const auto tagger = write_scratch("tagger.txt", "ran verb\n");
  const auto amr = write_scratch("verbless.amr", "(d / dog)\n");
  const CliResult res = run_cli("wmd --sentence \"the red table\" --amr " + amr.string() +
                                " --verbs --tagger " + tagger.string());
  CHECK(res.exit_code == 3);
}

TEST_CASE("wmd: empty content extraction exits 3") {
  const CliResult res = run_cli("wmd --sentence-a \"and the of\" --sentence-b \"dogs\"");
  CHECK(res.exit_code == 3);
}

TEST_CASE("eval: identity fixture and bad input line") {
  const auto markers =
      write_scratch("markers.json", R"json({"bible": ["thou"], "modern": ["you"]})json");
  const auto instances = write_scratch(
      "inst.jsonl",
      R"json({"source": "you eat bread", "target": "you eat bread", "source_style": "modern", "target_style": "bible"})json"
      "\n");
  const CliResult res = run_cli("eval --input " + instances.string() + " --scorer lexicon:" +
                                markers.string() + " --hash-embeddings 16,0");
  CHECK(res.exit_code == 0);
  // Identity transfer: wmd 0, sim 1, and the similarity backend is named.
  CHECK(res.output.find("0.000000\t1.000000") != std::string::npos);
  CHECK(res.output.find("# similarity: mean-embedding-cosine(hash:16,0)") != std::string::npos);

  const auto bad = write_scratch("bad.jsonl",
                                 R"json({"source": "a", "target": "b", "source_style": "x", "target_style": "y"})json"
                                 "\nnot json at all\n");
  const CliResult failed = run_cli("eval --input " + bad.string() + " --scorer lexicon:" +
                                   markers.string());
  CHECK(failed.exit_code == 1);
  CHECK(failed.output.find("line 2") != std::string::npos);
}

TEST_CASE("pipeline: unreachable remote exits 4 before writing state") {
  const auto gold = write_scratch(
      "gold.jsonl", R"json({"text": "dogs eat crumbs", "penman": "(e / eat-01 :ARG0 (d / dogs))"})json"
                    "\n");
  const auto mono_a = write_scratch("mono_a.jsonl", "{\"text\": \"thou eateth bread\"}\n");
  const auto mono_b = write_scratch("mono_b.jsonl", "{\"text\": \"you eat pizza\"}\n");
  const fs::path outdir = scratch_dir() / "remote_out";
  fs::remove_all(outdir);
  const auto config = write_scratch("remote.cfg",
                                    "styles = bible, modern\n"
                                    "backend = remote\n"
                                    "endpoint = http://127.0.0.1:9\n"
                                    "timeout_ms = 200\n"
                                    "retries = 0\n"
                                    "gold = " + gold.string() + "\n" +
                                    "mono.bible = " + mono_a.string() + "\n" +
                                    "mono.modern = " + mono_b.string() + "\n" +
                                    "output = " + outdir.string() + "\n");
  const CliResult res = run_cli("pipeline run --config " + config.string());
  CHECK(res.exit_code == 4);
  CHECK_FALSE(fs::exists(outdir / "pipeline_log.json"));
}

TEST_CASE("pipeline: toy run is deterministic across fresh output dirs") {
  const auto gold = write_scratch(
      "gold2.jsonl",
      R"json({"text": "dogs eat crumbs", "penman": "(e / eat-01 :ARG0 (d / dogs) :ARG1 (c / crumbs))"})json"
      "\n"
      R"json({"text": "cats drink milk", "penman": "(d / drink-01 :ARG0 (c / cats) :ARG1 (m / milk))"})json"
      "\n");
  const auto mono_a = write_scratch("mono_a2.jsonl",
                                    "{\"text\": \"thou eateth bread\"}\n"
                                    "{\"text\": \"children eat honey\"}\n");
  const auto mono_b = write_scratch("mono_b2.jsonl", "{\"text\": \"you eat pizza\"}\n");
  const auto lex = write_scratch("bible_lex2.json", R"json({"you": "thou"})json");

  auto config_for = [&](const fs::path& outdir) {
    return write_scratch("toy_" + outdir.filename().string() + ".cfg",
                         "styles = bible, modern\n"
                         "backend = toy\n"
                         "gold = " + gold.string() + "\n" +
                         "mono.bible = " + mono_a.string() + "\n" +
                         "mono.modern = " + mono_b.string() + "\n" +
                         "output = " + outdir.string() + "\n" +
                         "delta = 0.7\niterations = 2\nseed = 0\n" +
                         "embeddings = hash:16,0\n" +
                         "toy_lexicon.bible = " + lex.string() + "\n");
  };
  const fs::path out1 = scratch_dir() / "toy_run1";
  const fs::path out2 = scratch_dir() / "toy_run2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  CHECK(run_cli("pipeline run --config " + config_for(out1).string()).exit_code == 0);
  CHECK(run_cli("pipeline run --config " + config_for(out2).string()).exit_code == 0);
  CHECK(testutil::read_file((out1 / "pipeline_log.json").string()) ==
        testutil::read_file((out2 / "pipeline_log.json").string()));
  CHECK(testutil::read_file((out1 / "iter_2" / "synthetic.jsonl").string()) ==
        testutil::read_file((out2 / "iter_2" / "synthetic.jsonl").string()));
  CHECK(fs::exists(out1 / "iter_1" / "DONE"));
}

TEST_CASE("pipeline: environment variables override path keys") {
  const auto gold = write_scratch(
      "gold3.jsonl", R"json({"text": "dogs eat crumbs", "penman": "(e / eat-01 :ARG0 (d / dogs))"})json"
                     "\n");
  const auto mono_a = write_scratch("mono_a3.jsonl", "{\"text\": \"thou eateth bread\"}\n");
  const auto mono_b = write_scratch("mono_b3.jsonl", "{\"text\": \"you eat pizza\"}\n");
  const fs::path outdir = scratch_dir() / "env_out";
  fs::remove_all(outdir);
  // Config points at a nonexistent gold file; the environment fixes it.
  const auto config = write_scratch("env.cfg",
                                    "styles = bible, modern\n"
                                    "backend = toy\n"
                                    "gold = /nonexistent/gold.jsonl\n"
                                    "mono.bible = " + mono_a.string() + "\n" +
                                    "mono.modern = " + mono_b.string() + "\n" +
                                    "output = " + outdir.string() + "\n" +
                                    "iterations = 1\n");
  const std::string cmd = "AMRST_GOLD=" + gold.string() + " " + std::string(AMRST_CLI_PATH) +
                          " pipeline run --config " + config.string() + " 2>&1";
  std::array<char, 4096> buf{};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
}
