#include "amrst/style_metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amrst/bleu.hpp"
#include "amrst/errors.hpp"
#include "amrst/wmd.hpp"

namespace amrst {

namespace {

bool is_pointer_token(const std::string& s) {
  if (s.size() < 4 || s[0] != '<' || s[1] != 'p' || s.back() != '>') return false;
  for (std::size_t i = 2; i + 1 < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

void check_label(const StyleScorer& scorer, const std::string& label) {
  const auto labels = scorer.labels();
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw ValidationError("scorer returned unknown style label '" + label + "'");
}

}  // namespace

LexiconStyleScorer::LexiconStyleScorer(Lexicons lexicons) : lexicons_(std::move(lexicons)) {
  if (lexicons_.empty()) throw ValidationError("style lexicons must be non-empty");
  for (const auto& [style, markers] : lexicons_)
    for (const auto& [other, other_markers] : lexicons_)
      if (style < other && markers == other_markers)
        throw ValidationError("styles '" + style + "' and '" + other +
                              "' have identical marker sets");
}

StyleDecision LexiconStyleScorer::classify(const std::string& sentence) const {
  const auto tokens = tokenize(lowercase(sentence));
  std::size_t total = 0;
  std::string best_style = lexicons_.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [style, markers] : lexicons_) {
    std::size_t count = 0;
    for (const auto& t : tokens)
      if (markers.count(t)) ++count;
    total += count;
    if (count > best_count) {  // ties keep the earlier (sorted) style
      best_count = count;
      best_style = style;
    }
  }
  const double conf = total ? static_cast<double>(best_count) / static_cast<double>(total) : 0.0;
  return {best_style, conf};
}

std::vector<std::string> LexiconStyleScorer::labels() const {
  std::vector<std::string> out;
  for (const auto& [style, markers] : lexicons_) out.push_back(style);
  return out;
}

LexiconStyleScorer LexiconStyleScorer::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad style lexicon JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("style lexicon must be a JSON object");
  Lexicons lex;
  for (const auto& [style, markers] : j.items()) {
    if (!markers.is_array()) throw FormatError("markers for '" + style + "' must be an array");
    auto& set = lex[style];
    for (const auto& m : markers) set.insert(lowercase(m.get<std::string>()));
  }
  return LexiconStyleScorer(std::move(lex));
}

LexiconStyleScorer LexiconStyleScorer::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open style lexicon '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

double embedding_sim(const std::string& source, const std::string& target,
                     const EmbeddingStore& store, const ExtractionConfig& cfg) {
  auto mean_vector = [&](const std::string& text) {
    const auto tokens = extract_sentence_content(text, cfg);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(store.dimension());
    std::size_t n = 0;
    for (const auto& t : tokens) {
      if (auto v = store.lookup(t)) {
        sum += *v;
        ++n;
      }
    }
    if (n == 0) throw EmptyExtractionError("no content tokens with embeddings in: " + text);
    return Eigen::VectorXd(sum / static_cast<double>(n));
  };
  const Eigen::VectorXd a = mean_vector(source);
  const Eigen::VectorXd b = mean_vector(target);
  const double na = a.norm(), nb = b.norm();
  const double cosine = (na > 0.0 && nb > 0.0) ? a.dot(b) / (na * nb) : 0.0;
  return (std::clamp(cosine, -1.0, 1.0) + 1.0) / 2.0;
}

SimilarityFn make_embedding_sim(const EmbeddingStore& store, const ExtractionConfig& cfg) {
  return [&store, cfg](const std::string& a, const std::string& b) {
    return embedding_sim(a, b, store, cfg);
  };
}

double style_accuracy(const std::vector<EvalInstance>& instances, const StyleScorer& scorer) {
  if (instances.empty()) throw ValidationError("style_accuracy over no instances");
  std::size_t hits = 0;
  for (const auto& inst : instances) {
    const auto decision = scorer.classify(inst.target);
    check_label(scorer, decision.label);
    if (decision.label == inst.target_style) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(instances.size());
}

double style_retention(const std::vector<EvalInstance>& instances, const StyleScorer& scorer) {
  if (instances.empty()) throw ValidationError("style_retention over no instances");
  std::size_t hits = 0;
  for (const auto& inst : instances) {
    const auto decision = scorer.classify(inst.target);
    check_label(scorer, decision.label);
    if (decision.label == inst.source_style) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(instances.size());
}

double weighted_style_accuracy(const std::vector<EvalInstance>& instances,
                               const StyleScorer& scorer, const SimilarityFn& sim_fn) {
  if (instances.empty()) throw ValidationError("weighted_style_accuracy over no instances");
  double sum = 0.0;
  for (const auto& inst : instances) {
    const auto decision = scorer.classify(inst.target);
    check_label(scorer, decision.label);
    if (decision.label == inst.target_style) sum += sim_fn(inst.source, inst.target);
  }
  // Denominator is all instances, not only the correctly transferred ones.
  return sum / static_cast<double>(instances.size());
}

std::vector<std::string> mask_for_style_probe(const std::vector<std::string>& tokens,
                                              const PosTagger& tagger, const MaskConfig& cfg) {
  const auto tags = tagger.tag(tokens);
  if (tags.size() != tokens.size())
    throw ValidationError("tagger returned a tag count different from the token count");
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    bool mask = tags[i] == PosTag::Entity || tags[i] == PosTag::Number || tags[i] == PosTag::Noun;
    if (cfg.mask_amr_structure &&
        ((tok.size() > 1 && tok[0] == ':') || is_pointer_token(tok)))
      mask = true;
    out.push_back(mask ? cfg.mask_token : tok);
  }
  return out;
}

DirectionReport direction_report(const std::vector<EvalInstance>& instances,
                                 const StyleScorer& scorer, const SimilarityFn& sim_fn,
                                 const EmbeddingStore& store, const ExtractionConfig& cfg,
                                 const std::string& sim_backend_name) {
  if (instances.empty()) throw ValidationError("direction_report over no instances");
  const std::string src_style = instances.front().source_style;
  const std::string tgt_style = instances.front().target_style;
  for (const auto& inst : instances)
    if (inst.source_style != src_style || inst.target_style != tgt_style)
      throw ValidationError("direction_report requires a single direction, got " +
                            inst.source_style + "->" + inst.target_style + " among " + src_style +
                            "->" + tgt_style);

  DirectionReport rep;
  rep.source_style = src_style;
  rep.target_style = tgt_style;
  rep.n = instances.size();
  rep.sim_backend = sim_backend_name;

  double bleu_sum = 0.0, wmd_sum = 0.0, sim_sum = 0.0, wsa_sum = 0.0;
  std::size_t transfer_hits = 0, retention_hits = 0;
  for (const auto& inst : instances) {
    bleu_sum += self_bleu(inst.source, inst.target);
    wmd_sum += wmd(extract_sentence_content(inst.source, cfg),
                   extract_sentence_content(inst.target, cfg), store);
    const double sim = sim_fn(inst.source, inst.target);
    sim_sum += sim;
    const auto decision = scorer.classify(inst.target);
    check_label(scorer, decision.label);
    if (decision.label == inst.target_style) {
      ++transfer_hits;
      wsa_sum += sim;
    }
    if (decision.label == inst.source_style) ++retention_hits;
  }
  const double n = static_cast<double>(instances.size());
  rep.self_bleu = bleu_sum / n;
  rep.wmd = wmd_sum / n;
  rep.sim = sim_sum / n;
  rep.style_transfer = static_cast<double>(transfer_hits) / n;
  rep.style_retention = static_cast<double>(retention_hits) / n;
  rep.weighted_style_accuracy = wsa_sum / n;
  return rep;
}

std::vector<EvalInstance> read_instances_jsonl(const std::string& text) {
  std::vector<EvalInstance> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad JSON: ") + e.what(), line_no);
    }
    EvalInstance inst;
    try {
      inst.source = j.at("source").get<std::string>();
      inst.target = j.at("target").get<std::string>();
      inst.source_style = j.at("source_style").get<std::string>();
      inst.target_style = j.at("target_style").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("instance is missing a field: ") + e.what(), line_no);
    }
    if (inst.source.empty()) throw FormatError("instance source must be non-empty", line_no);
    if (j.contains("amr")) {
      try {
        inst.intermediate_amr = parse_penman(j.at("amr").get<std::string>());
      } catch (const ParseError& e) {
        throw FormatError(std::string("bad amr field: ") + e.what(), line_no);
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<EvalInstance> load_instances_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_instances_jsonl(buf.str());
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string reports_to_tsv(const std::vector<DirectionReport>& reports) {
  std::string out;
  if (!reports.empty()) out += "# similarity: " + reports.front().sim_backend + "\n";
  out += "direction\tn\tself_bleu\twmd\tsim\tstyle_retention\tstyle_transfer\twsacc\n";
  for (const auto& r : reports) {
    out += r.source_style + "->" + r.target_style;
    out += '\t' + std::to_string(r.n);
    out += '\t' + format_fixed(r.self_bleu);
    out += '\t' + format_fixed(r.wmd);
    out += '\t' + format_fixed(r.sim);
    out += '\t' + format_fixed(r.style_retention);
    out += '\t' + format_fixed(r.style_transfer);
    out += '\t' + format_fixed(r.weighted_style_accuracy);
    out += '\n';
  }
  return out;
}

std::string reports_to_json(const std::vector<DirectionReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["direction"] = r.source_style + "->" + r.target_style;
    j["n"] = r.n;
    j["self_bleu"] = r.self_bleu;
    j["wmd"] = r.wmd;
    j["sim"] = r.sim;
    j["style_retention"] = r.style_retention;
    j["style_transfer"] = r.style_transfer;
    j["wsacc"] = r.weighted_style_accuracy;
    j["similarity"] = r.sim_backend;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace amrst
