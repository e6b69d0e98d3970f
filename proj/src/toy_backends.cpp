#include "amrst/toy_backends.hpp"

#include <algorithm>
#include <cctype>

#include "amrst/errors.hpp"
#include "amrst/extraction.hpp"

namespace amrst {

namespace {

const std::unordered_set<std::string> kDeterminers = {"the", "a", "an"};

std::string strip_outer_punct(const std::string& token) {
  std::size_t begin = 0, end = token.size();
  while (begin < end && std::ispunct(static_cast<unsigned char>(token[begin]))) ++begin;
  while (end > begin && std::ispunct(static_cast<unsigned char>(token[end - 1]))) --end;
  return token.substr(begin, end - begin);
}

// Lowercased tokens, punctuation trimmed, determiners dropped.
std::vector<std::string> toy_content_tokens(const std::string& sentence) {
  std::vector<std::string> out;
  for (const auto& raw : tokenize(sentence)) {
    std::string tok = strip_outer_punct(lowercase(raw));
    if (tok.empty() || kDeterminers.count(tok)) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

std::string variable_for(const std::string& concept_label, std::unordered_set<std::string>& used) {
  char c = 'x';
  for (char ch : concept_label)
    if (std::islower(static_cast<unsigned char>(ch))) {
      c = ch;
      break;
    }
  std::string base(1, c);
  if (used.insert(base).second) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used.insert(cand).second) return cand;
  }
}

// Tokens of `a` that do not occur in `b`, consuming multiplicity.
std::vector<std::string> token_difference(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : b) ++counts[t];
  std::vector<std::string> diff;
  for (const auto& t : a) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
    } else {
      diff.push_back(t);
    }
  }
  return diff;
}

std::string readout_joined(const AmrGraph& graph,
                           const std::map<std::string, std::string>& lexicon) {
  static const ExtractionConfig cfg = ExtractionConfig::defaults();
  std::string out;
  for (const auto& tok : extract_amr_content(graph, cfg)) {
    auto it = lexicon.find(tok);
    if (!out.empty()) out += ' ';
    out += it == lexicon.end() ? tok : it->second;
  }
  return out;
}

std::vector<std::string> readout_tokens(const AmrGraph& graph) {
  static const ExtractionConfig cfg = ExtractionConfig::defaults();
  return extract_amr_content(graph, cfg);
}

}  // namespace

ToyEncoderBackend::ToyEncoderBackend(std::map<std::string, std::string> normalizations)
    : normalizations_(std::move(normalizations)) {}

AmrGraph ToyEncoderBackend::to_amr(const std::string& sentence) {
  std::vector<std::string> tokens = toy_content_tokens(sentence);
  for (auto& t : tokens) {
    auto it = normalizations_.find(t);
    if (it != normalizations_.end()) t = it->second;
  }
  if (tokens.empty())
    throw BackendError(BackendError::Kind::Item, "no content tokens in: " + sentence);

  AmrGraph g;
  std::unordered_set<std::string> used;
  if (tokens.size() == 1) {
    g.root = variable_for(tokens[0], used);
    g.instances.emplace_back(g.root, tokens[0]);
    return g;
  }
  // SVO reading: token 0 is the subject, token 1 the predicate.
  const std::string frame = tokens[1] + "-01";
  g.root = variable_for(frame, used);
  g.instances.emplace_back(g.root, frame);
  const std::string subj = variable_for(tokens[0], used);
  g.instances.emplace_back(subj, tokens[0]);
  g.edges.push_back({g.root, ":ARG0", EdgeTarget::variable(subj)});
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const std::string var = variable_for(tokens[i], used);
    g.instances.emplace_back(var, tokens[i]);
    const std::string role = i == 2 ? ":ARG1" : ":mod";
    g.edges.push_back({g.root, role, EdgeTarget::variable(var)});
  }
  return g;
}

void ToyEncoderBackend::fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) {
  ++fine_tune_calls_;
  for (const auto& [sentence, graph] : pairs) {
    const auto sent = toy_content_tokens(sentence);
    const auto graph_toks = readout_tokens(graph);
    const auto only_sent = token_difference(sent, graph_toks);
    const auto only_graph = token_difference(graph_toks, sent);
    if (only_sent.size() != only_graph.size()) continue;  // no usable alignment
    for (std::size_t i = 0; i < only_sent.size(); ++i)
      normalizations_.emplace(only_sent[i], only_graph[i]);  // first seen wins
  }
}

ToyDecoderBackend::ToyDecoderBackend(std::string style, std::map<std::string, std::string> lexicon)
    : style_(std::move(style)), lexicon_(std::move(lexicon)) {}

std::string ToyDecoderBackend::to_text(const AmrGraph& graph) {
  return readout_joined(graph, lexicon_);
}

void ToyDecoderBackend::fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) {
  std::vector<std::string> sentences;
  sentences.reserve(pairs.size());
  for (const auto& [sentence, graph] : pairs) {
    sentences.push_back(sentence);
    const auto sent = toy_content_tokens(sentence);
    const auto graph_toks = readout_tokens(graph);
    const auto only_graph = token_difference(graph_toks, sent);
    const auto only_sent = token_difference(sent, graph_toks);
    if (only_sent.size() != only_graph.size()) continue;
    for (std::size_t i = 0; i < only_graph.size(); ++i)
      lexicon_.emplace(only_graph[i], only_sent[i]);
  }
  history_.push_back(std::move(sentences));
}

ToyStylerBackend::ToyStylerBackend(ToyLexicons lexicons) : lexicons_(std::move(lexicons)) {
  if (lexicons_.empty()) throw ValidationError("styler needs at least one style lexicon");
}

std::string ToyStylerBackend::stylize(const std::string& sentence, const std::string& style) {
  auto it = lexicons_.find(style);
  if (it == lexicons_.end())
    throw BackendError(BackendError::Kind::Item, "no styler lexicon for style '" + style + "'");
  std::string out;
  for (const auto& raw : tokenize(sentence)) {
    auto sub = it->second.find(lowercase(raw));
    if (!out.empty()) out += ' ';
    out += sub == it->second.end() ? raw : sub->second;
  }
  return out;
}

Backends ToyBackends::as_backends() const {
  Backends b;
  b.encoder = encoder;
  b.styler = styler;
  for (const auto& [style, dec] : decoders) b.decoders[style] = dec;
  return b;
}

nlohmann::ordered_json ToyBackends::state_to_json() const {
  nlohmann::ordered_json j;
  j["encoder_normalizations"] = encoder->normalizations();
  nlohmann::ordered_json dec;
  for (const auto& [style, d] : decoders) dec[style] = d->lexicon();
  j["decoder_lexicons"] = std::move(dec);
  return j;
}

void ToyBackends::state_from_json(const nlohmann::json& j) {
  std::map<std::string, std::string> norms =
      j.at("encoder_normalizations").get<std::map<std::string, std::string>>();
  encoder = std::make_shared<ToyEncoderBackend>(std::move(norms));
  for (auto& [style, dec] : decoders) {
    auto lex = j.at("decoder_lexicons").at(style).get<std::map<std::string, std::string>>();
    dec = std::make_shared<ToyDecoderBackend>(style, std::move(lex));
  }
}

ToyBackends make_toy_backends(const ToyLexicons& lexicons, std::uint64_t seed) {
  (void)seed;  // all toy rules are deterministic
  if (lexicons.empty()) throw ValidationError("toy backends need at least one style lexicon");
  ToyBackends b;
  b.encoder = std::make_shared<ToyEncoderBackend>();
  b.styler = std::make_shared<ToyStylerBackend>(lexicons);
  for (const auto& [style, lex] : lexicons)
    b.decoders[style] = std::make_shared<ToyDecoderBackend>(style, lex);
  return b;
}

}  // namespace amrst
