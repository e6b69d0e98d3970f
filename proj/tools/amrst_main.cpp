// amrst: AMR toolkit and style-transfer evaluation CLI.
//
// Exit codes, stable across subcommands:
//   0 success
//   1 usage or input-format error
//   2 partial per-item failure (some blocks processed, some not)
//   3 incomparable inputs (empty extraction)
//   4 pipeline abort (backend unreachable or iteration failure)

#include "amrst/amr.hpp"
#include "amrst/bleu.hpp"
#include "amrst/embeddings.hpp"
#include "amrst/errors.hpp"
#include "amrst/extraction.hpp"
#include "amrst/pipeline.hpp"
#include "amrst/remote_client.hpp"
#include "amrst/smatch.hpp"
#include "amrst/style_metrics.hpp"
#include "amrst/toy_backends.hpp"
#include "amrst/wmd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace amrst;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIncomparable = 3;
constexpr int kExitPipeline = 4;

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
}

std::string joined(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

// --embeddings PATH or --hash-embeddings DIM,SEED (default hash 64,0).
struct EmbeddingOptions {
  std::string path;
  std::string hash_spec;

  EmbeddingStore open() const {
    if (!path.empty()) return load_embeddings(path);
    Eigen::Index dim = 64;
    std::uint64_t seed = 0;
    if (!hash_spec.empty()) {
      const auto comma = hash_spec.find(',');
      try {
        dim = std::stol(hash_spec.substr(0, comma));
        if (comma != std::string::npos) seed = std::stoull(hash_spec.substr(comma + 1));
      } catch (const std::exception&) {
        throw FormatError("bad --hash-embeddings spec '" + hash_spec + "', expected DIM[,SEED]");
      }
    }
    return make_hash_store(dim, seed);
  }

  std::string describe() const {
    if (!path.empty()) return "file:" + path;
    return "hash:" + (hash_spec.empty() ? std::string("64,0") : hash_spec);
  }
};

ExtractionConfig extraction_config(const std::string& stopword_path) {
  ExtractionConfig cfg = ExtractionConfig::defaults();
  if (!stopword_path.empty()) cfg.stopwords = load_stopwords(stopword_path);
  return cfg;
}

// --- amr subcommand ---

struct AmrArgs {
  std::string mode;
  std::string input;
  std::string output = "-";
};

int run_amr(const AmrArgs& args) {
  const std::string text = slurp_file(args.input);
  std::string out;
  std::size_t failures = 0;

  auto report_block_error = [&](std::size_t index, const std::exception& e) {
    std::cerr << "block " << index + 1 << ": " << e.what() << "\n";
    ++failures;
  };

  if (args.mode == "delinearize") {
    // One whitespace-joined token sequence per line.
    std::istringstream lines(text);
    std::string line;
    std::size_t index = 0;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        out += serialize_penman(delinearize(line));
        out += "\n\n";
      } catch (const std::exception& e) {
        report_block_error(index, e);
      }
      ++index;
    }
    if (index == 0) throw FormatError("no token sequences in '" + args.input + "'");
  } else {
    const auto blocks = read_penman_blocks(text);
    if (blocks.empty()) throw FormatError("no Penman blocks in '" + args.input + "'");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      try {
        const AmrGraph g = parse_penman(blocks[i]);
        if (args.mode == "linearize") {
          out += linearize_dfs(g).joined();
          out += '\n';
        } else {  // parse | serialize: canonical single-line Penman
          out += serialize_penman(g);
          out += "\n\n";
        }
      } catch (const std::exception& e) {
        report_block_error(i, e);
      }
    }
  }
  write_output(args.output, out);
  return failures == 0 ? kExitOk : kExitPartial;
}

// --- smatch subcommand ---

struct SmatchArgs {
  std::string file_a;
  std::string file_b;
  std::size_t restarts = 4;
  bool exact = false;
  std::uint64_t seed = 0;
  std::string tsv;
};

int run_smatch(const SmatchArgs& args) {
  const auto blocks_a = read_penman_blocks(slurp_file(args.file_a));
  const auto blocks_b = read_penman_blocks(slurp_file(args.file_b));
  if (blocks_a.size() != blocks_b.size())
    throw FormatError("block count mismatch: " + std::to_string(blocks_a.size()) + " vs " +
                      std::to_string(blocks_b.size()));
  if (blocks_a.empty()) throw FormatError("no Penman blocks to compare");

  std::vector<SmatchScore> scores;
  std::vector<double> fs;
  for (std::size_t i = 0; i < blocks_a.size(); ++i) {
    const AmrGraph a = parse_penman(blocks_a[i]);
    const AmrGraph b = parse_penman(blocks_b[i]);
    scores.push_back(args.exact ? smatch_exact(a, b)
                                : smatch_hill_climb(a, b, args.restarts, args.seed));
    fs.push_back(scores.back().f);
    std::printf("Precision: %.4f  Recall: %.4f  F-score: %.4f\n", scores.back().precision,
                scores.back().recall, scores.back().f);
  }
  const ScoreDistribution dist = score_distribution(fs);
  std::printf("F-score quartiles: min=%.4f q1=%.4f median=%.4f q3=%.4f max=%.4f\n", dist.min,
              dist.q1, dist.median, dist.q3, dist.max);

  if (!args.tsv.empty()) {
    std::string tsv = "pair\tprecision\trecall\tf\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
      tsv += std::to_string(i + 1);
      tsv += '\t' + format_fixed(scores[i].precision);
      tsv += '\t' + format_fixed(scores[i].recall);
      tsv += '\t' + format_fixed(scores[i].f);
      tsv += '\n';
    }
    write_output(args.tsv, tsv);
  }
  return kExitOk;
}

// --- wmd subcommand ---

struct WmdArgs {
  std::string sentence_a;
  std::string sentence_b;
  std::string sentence;
  std::string amr_path;
  bool verbs = false;
  bool explain = false;
  EmbeddingOptions embeddings;
  std::string stopwords;
  std::string tagger_path;
};

int run_wmd(const WmdArgs& args) {
  const EmbeddingStore store = args.embeddings.open();
  const ExtractionConfig cfg = extraction_config(args.stopwords);

  const bool text_pair = !args.sentence_a.empty() || !args.sentence_b.empty();
  const bool text_amr = !args.sentence.empty() || !args.amr_path.empty();
  if (text_pair == text_amr)
    throw FormatError("pass either --sentence-a/--sentence-b or --sentence/--amr");

  std::vector<std::string> side_a, side_b;
  if (text_pair) {
    if (args.sentence_a.empty() || args.sentence_b.empty())
      throw FormatError("--sentence-a and --sentence-b are both required");
    side_a = extract_sentence_content(args.sentence_a, cfg);
    side_b = extract_sentence_content(args.sentence_b, cfg);
  } else {
    if (args.sentence.empty() || args.amr_path.empty())
      throw FormatError("--sentence and --amr are both required");
    const auto blocks = read_penman_blocks(slurp_file(args.amr_path));
    if (blocks.empty()) throw FormatError("no Penman blocks in '" + args.amr_path + "'");
    const AmrGraph graph = parse_penman(blocks.front());
    if (args.verbs) {
      if (args.tagger_path.empty()) throw FormatError("--verbs requires --tagger FILE");
      const LexiconPosTagger tagger = LexiconPosTagger::from_file(args.tagger_path);
      side_a = extract_sentence_verbs(args.sentence, tagger);
      side_b = extract_amr_verbs(graph, cfg);
    } else {
      side_a = extract_sentence_content(args.sentence, cfg);
      side_b = extract_amr_content(graph, cfg);
    }
  }

  if (args.explain) {
    std::printf("%s\n", joined(side_a).c_str());
    std::printf("%s\n", joined(side_b).c_str());
  }
  const double score = wmd(side_a, side_b, store);
  std::printf("%.6f\n", score);
  return kExitOk;
}

// --- eval subcommand ---

struct EvalArgs {
  std::string input;
  std::string report = "-";
  std::string format = "tsv";
  std::string scorer_spec;
  EmbeddingOptions embeddings;
  std::string stopwords;
};

// POST /classify {"text": s} -> {"style": p, "confidence": c}; the trained
// classifier stays external behind this seam.
class RemoteStyleScorer : public StyleScorer {
 public:
  RemoteStyleScorer(std::string url, std::vector<std::string> labels)
      : labels_(std::move(labels)),
        client_(std::make_shared<RemoteBackendClient>(RemoteConfig{std::move(url)})) {}

  StyleDecision classify(const std::string& sentence) const override;
  std::vector<std::string> labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::shared_ptr<RemoteBackendClient> client_;
};

std::unique_ptr<StyleScorer> open_scorer(const std::string& spec,
                                         const std::vector<std::string>& labels) {
  if (spec.rfind("lexicon:", 0) == 0)
    return std::make_unique<LexiconStyleScorer>(
        LexiconStyleScorer::from_file(spec.substr(8)));
  if (spec.rfind("remote:", 0) == 0)
    return std::make_unique<RemoteStyleScorer>(spec.substr(7), labels);
  throw FormatError("--scorer must be lexicon:PATH or remote:URL");
}

int run_eval(const EvalArgs& args) {
  const auto instances = load_instances_jsonl(args.input);
  if (instances.empty()) throw FormatError("no instances in '" + args.input + "'");
  const EmbeddingStore store = args.embeddings.open();
  const ExtractionConfig cfg = extraction_config(args.stopwords);
  const SimilarityFn sim = make_embedding_sim(store, cfg);

  std::vector<std::string> labels;
  for (const auto& inst : instances) {
    for (const auto& s : {inst.source_style, inst.target_style})
      if (std::find(labels.begin(), labels.end(), s) == labels.end()) labels.push_back(s);
  }
  std::sort(labels.begin(), labels.end());
  const auto scorer = open_scorer(args.scorer_spec, labels);

  std::map<std::pair<std::string, std::string>, std::vector<EvalInstance>> by_direction;
  for (const auto& inst : instances)
    by_direction[{inst.source_style, inst.target_style}].push_back(inst);

  const std::string sim_name = "mean-embedding-cosine(" + args.embeddings.describe() + ")";
  std::vector<DirectionReport> reports;
  for (const auto& [direction, group] : by_direction)
    reports.push_back(direction_report(group, *scorer, sim, store, cfg, sim_name));

  write_output(args.report,
               args.format == "json" ? reports_to_json(reports) : reports_to_tsv(reports));
  return kExitOk;
}

StyleDecision RemoteStyleScorer::classify(const std::string& sentence) const {
  const auto [style, confidence] = client_->classify(sentence);
  return {style, confidence};
}

// --- pipeline subcommand ---

struct KeyValueConfig {
  std::map<std::string, std::string> values;

  static KeyValueConfig parse_file(const std::string& path) {
    KeyValueConfig cfg;
    std::istringstream in(slurp_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw FormatError("expected 'key = value'", line_no);
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      cfg.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
  }

  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  std::string require(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end() || it->second.empty())
      throw FormatError("pipeline config is missing '" + key + "'");
    return it->second;
  }

  // Environment variables override path-valued keys only:
  // AMRST_<KEY> with '.'/'-' mapped to '_', upper-cased.
  std::string path_key(const std::string& key, bool required) const {
    std::string env_name = "AMRST_";
    for (char c : key)
      env_name += (c == '.' || c == '-') ? '_' : static_cast<char>(std::toupper(c));
    if (const char* env = std::getenv(env_name.c_str()); env && *env) return env;
    return required ? require(key) : get(key);
  }
};

struct PipelineArgs {
  std::string config_path;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::map<std::string, std::string> load_toy_lexicon(const std::string& path) {
  if (path.empty()) return {};
  const auto j = nlohmann::json::parse(slurp_file(path));
  return j.get<std::map<std::string, std::string>>();
}

int run_pipeline_cmd(const PipelineArgs& args) {
  const KeyValueConfig kv = KeyValueConfig::parse_file(args.config_path);

  PipelineConfig cfg;
  cfg.styles = split_csv(kv.require("styles"));
  cfg.delta = std::stod(kv.get("delta", "0.7"));
  cfg.iterations = static_cast<std::size_t>(std::stoul(kv.get("iterations", "2")));
  cfg.seed = std::stoull(kv.get("seed", "0"));
  cfg.refilter_each_iteration = kv.get("refilter", "on") != "off";
  if (const std::string w = kv.get("wmd_filter", "off"); w != "off" && !w.empty())
    cfg.wmd_filter = std::stod(w);
  cfg.abort_failure_fraction = std::stod(kv.get("abort_failures", "0.1"));
  cfg.validate();

  EmbeddingOptions emb;
  if (const std::string spec = kv.path_key("embeddings", false); !spec.empty()) {
    if (spec.rfind("hash:", 0) == 0)
      emb.hash_spec = spec.substr(5);
    else
      emb.path = spec;
  }
  const EmbeddingStore store = emb.open();
  const ExtractionConfig xcfg = extraction_config(kv.path_key("stopwords", false));
  const SimilarityFn sim = make_embedding_sim(store, xcfg);

  const GoldAmrCorpus gold = load_gold_corpus_jsonl(kv.path_key("gold", true));
  std::map<std::string, MonoStyleCorpus> mono;
  for (const auto& style : cfg.styles)
    mono[style] = load_mono_corpus_jsonl(kv.path_key("mono." + style, true), style);

  const fs::path outdir = kv.path_key("output", true);

  // Backends: toy (default) or remote.
  const std::string backend_kind = kv.get("backend", "toy");
  Backends backends;
  std::optional<ToyBackends> toys;
  if (backend_kind == "toy") {
    ToyLexicons lexicons;
    for (const auto& style : cfg.styles)
      lexicons[style] = load_toy_lexicon(kv.path_key("toy_lexicon." + style, false));
    toys = make_toy_backends(lexicons, cfg.seed);
    backends = toys->as_backends();
  } else if (backend_kind == "remote") {
    RemoteConfig rc;
    rc.endpoint = kv.require("endpoint");
    rc.timeout_ms = std::stoi(kv.get("timeout_ms", "5000"));
    rc.retries = std::stoi(kv.get("retries", "2"));
    auto client = std::make_shared<RemoteBackendClient>(rc);
    if (!client->reachable())
      throw BackendError(BackendError::Kind::Unreachable,
                         "remote backend '" + rc.endpoint + "' is unreachable");
    backends = make_remote_backends(client, cfg.styles);
  } else {
    throw FormatError("backend must be 'toy' or 'remote'");
  }

  fs::create_directories(outdir);

  // Resume from the last completed iteration when its artifacts exist.
  std::optional<SyntheticCorpus> resume;
  std::size_t start_iteration = 0;
  for (std::size_t k = cfg.iterations; k >= 1; --k) {
    const fs::path dir = outdir / ("iter_" + std::to_string(k));
    if (!fs::exists(dir / "DONE")) continue;
    SyntheticCorpus synth;
    synth.pairs = synthetic_from_jsonl(slurp_file((dir / "synthetic.jsonl").string()));
    resume = std::move(synth);
    start_iteration = k;
    if (toys && fs::exists(dir / "toy_state.json"))
      toys->state_from_json(nlohmann::json::parse(slurp_file((dir / "toy_state.json").string())));
    if (toys) backends = toys->as_backends();
    std::cerr << "resuming after completed iteration " << k << "\n";
    break;
  }
  if (start_iteration >= cfg.iterations && resume) {
    std::cerr << "all " << cfg.iterations << " iterations already completed\n";
    return kExitOk;
  }

  const IterationCallback on_iteration = [&](const IterationReport& report,
                                             const SyntheticCorpus& synthetic) {
    const fs::path dir = outdir / ("iter_" + std::to_string(report.index));
    fs::create_directories(dir);
    write_output((dir / "synthetic.jsonl").string(), synthetic_to_jsonl(synthetic.pairs));
    write_output((dir / "report.json").string(), report.to_json().dump(2) + "\n");
    if (toys)
      write_output((dir / "toy_state.json").string(), toys->state_to_json().dump(2) + "\n");
    write_output((dir / "DONE").string(), "");
  };

  const PipelineResult result = run_pipeline(cfg, backends, gold, mono, sim, &store, xcfg,
                                             on_iteration, std::move(resume), start_iteration);
  write_output((outdir / "pipeline_log.json").string(), result.log.dump(2) + "\n");
  std::cout << "pipeline complete: " << result.iterations.size() << " iteration(s), "
            << result.final_synthetic.pairs.size() << " synthetic pairs\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMR toolkit: Penman parsing, SMATCH, WMD metrics, style-transfer evaluation"};
  app.require_subcommand(1);

  AmrArgs amr_args;
  CLI::App* amr = app.add_subcommand("amr", "Parse, serialize, linearize or repair Penman files");
  amr->add_option("mode", amr_args.mode, "parse|serialize|linearize|delinearize")
      ->required()
      ->check(CLI::IsMember({"parse", "serialize", "linearize", "delinearize"}));
  amr->add_option("--input,-i", amr_args.input, "input file")->required();
  amr->add_option("--output,-o", amr_args.output, "output file or '-'");

  SmatchArgs smatch_args;
  CLI::App* smatch = app.add_subcommand("smatch", "Score AMR pairs from two block files");
  smatch->add_option("file_a", smatch_args.file_a)->required();
  smatch->add_option("file_b", smatch_args.file_b)->required();
  smatch->add_option("--restarts", smatch_args.restarts, "hill-climbing restarts");
  smatch->add_flag("--exact", smatch_args.exact, "exhaustive matcher (size-bounded)");
  smatch->add_option("--seed", smatch_args.seed);
  smatch->add_option("--tsv", smatch_args.tsv, "write per-pair scores as TSV");

  WmdArgs wmd_args;
  CLI::App* wmdc = app.add_subcommand("wmd", "Word Mover's Distance between texts or text/AMR");
  wmdc->add_option("--sentence-a", wmd_args.sentence_a);
  wmdc->add_option("--sentence-b", wmd_args.sentence_b);
  wmdc->add_option("--sentence", wmd_args.sentence);
  wmdc->add_option("--amr", wmd_args.amr_path, "Penman block file (first block used)");
  wmdc->add_flag("--verbs", wmd_args.verbs, "compare verb extractions");
  wmdc->add_flag("--explain", wmd_args.explain, "print the extracted token lists");
  wmdc->add_option("--embeddings", wmd_args.embeddings.path, "embedding text file");
  wmdc->add_option("--hash-embeddings", wmd_args.embeddings.hash_spec, "DIM[,SEED]");
  wmdc->add_option("--stopwords", wmd_args.stopwords, "stopword file (one token per line)");
  wmdc->add_option("--tagger", wmd_args.tagger_path, "POS lexicon file for --verbs");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Direction reports from a JSONL instance file");
  eval->add_option("--input", eval_args.input)->required();
  eval->add_option("--report", eval_args.report, "output path or '-'");
  eval->add_option("--format", eval_args.format)->check(CLI::IsMember({"tsv", "json"}));
  eval->add_option("--scorer", eval_args.scorer_spec, "lexicon:PATH or remote:URL")->required();
  eval->add_option("--embeddings", eval_args.embeddings.path);
  eval->add_option("--hash-embeddings", eval_args.embeddings.hash_spec, "DIM[,SEED]");
  eval->add_option("--stopwords", eval_args.stopwords);

  PipelineArgs pipe_args;
  CLI::App* pipe = app.add_subcommand("pipeline", "Iterative back-translation pipeline");
  CLI::App* pipe_run = pipe->add_subcommand("run", "run (or resume) from a config file");
  pipe_run->add_option("--config", pipe_args.config_path)->required();
  pipe->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*amr) return run_amr(amr_args);
    if (*smatch) return run_smatch(smatch_args);
    if (*wmdc) return run_wmd(wmd_args);
    if (*eval) return run_eval(eval_args);
    if (*pipe) return run_pipeline_cmd(pipe_args);
  } catch (const EmptyExtractionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIncomparable;
  } catch (const BackendError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
