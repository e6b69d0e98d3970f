#include "amrst/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "amrst/errors.hpp"

namespace amrst {

namespace {

// Bundled English stopword list, version en-stop-1. Fixed so extractions are
// reproducible; pass a custom list to override.
const std::vector<std::string> kStopwords = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that", "that'll",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
    "between", "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn",
    "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn",
    "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
    "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn",
    "wouldn't"};

// Non-content bare constants: polarity and sentence-mode markers.
const std::unordered_set<std::string> kStructuralConstants = {"-", "imperative", "interrogative",
                                                              "expressive"};

bool is_punctuation_only(const std::string& token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](unsigned char c) {
    return std::ispunct(c);
  });
}

bool is_numeric_token(const std::string& token) {
  bool digit = false;
  for (char c : token) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digit = true;
    else if (c != '.' && c != ',' && c != '-' && c != '+')
      return false;
  }
  return digit;
}

PosTag tag_from_string(const std::string& s, std::size_t line) {
  if (s == "verb") return PosTag::Verb;
  if (s == "noun") return PosTag::Noun;
  if (s == "entity") return PosTag::Entity;
  if (s == "number") return PosTag::Number;
  if (s == "other") return PosTag::Other;
  throw FormatError("unknown POS tag '" + s + "'", line);
}

}  // namespace

const char* stopword_list_version() { return "en-stop-1"; }

const std::vector<std::string>& bundled_stopwords() { return kStopwords; }

ExtractionConfig ExtractionConfig::defaults() {
  ExtractionConfig cfg;
  cfg.stopwords.insert(kStopwords.begin(), kStopwords.end());
  return cfg;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open stopword file '" + path + "'");
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) words.insert(lowercase(tok));
  }
  return words;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

std::string lowercase(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> extract_sentence_content(const std::string& sentence,
                                                  const ExtractionConfig& cfg) {
  std::vector<std::string> out;
  for (const auto& raw : tokenize(sentence)) {
    const std::string tok = lowercase(raw);
    if (cfg.stopwords.count(tok)) continue;
    if (!cfg.keep_punctuation && is_punctuation_only(tok)) continue;
    out.push_back(tok);
  }
  return out;
}

std::vector<std::string> extract_amr_content(const AmrGraph& graph, const ExtractionConfig& cfg) {
  std::unordered_map<std::string, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < graph.edges.size(); ++i)
    out_edges[graph.edges[i].source].push_back(i);

  std::vector<std::string> tokens;
  std::unordered_set<std::string> visited;
  auto walk = [&](auto&& self, const std::string& var) -> void {
    visited.insert(var);
    const std::string& concept_label = graph.concept_of(var);
    if (!cfg.amr_drop_concepts.count(concept_label)) tokens.push_back(strip_sense(concept_label));
    auto it = out_edges.find(var);
    if (it == out_edges.end()) return;
    for (std::size_t i : it->second) {
      const auto& e = graph.edges[i];
      switch (e.target.kind) {
        case EdgeTarget::Kind::Variable:
          if (!visited.count(e.target.value)) self(self, e.target.value);
          break;
        case EdgeTarget::Kind::Literal:
          tokens.push_back(e.target.value);
          break;
        case EdgeTarget::Kind::Constant:
          if (!kStructuralConstants.count(e.target.value)) tokens.push_back(e.target.value);
          break;
      }
    }
  };
  walk(walk, graph.root);
  return tokens;
}

std::vector<std::string> extract_sentence_verbs(const std::string& sentence,
                                                const PosTagger& tagger) {
  const std::vector<std::string> tokens = tokenize(sentence);
  const std::vector<PosTag> tags = tagger.tag(tokens);
  if (tags.size() != tokens.size())
    throw ValidationError("tagger returned " + std::to_string(tags.size()) + " tags for " +
                          std::to_string(tokens.size()) + " tokens");
  std::vector<std::string> verbs;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tags[i] == PosTag::Verb) verbs.push_back(tokens[i]);
  return verbs;
}

std::vector<std::string> extract_amr_verbs(const AmrGraph& graph, const ExtractionConfig& cfg) {
  std::unordered_map<std::string, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < graph.edges.size(); ++i)
    out_edges[graph.edges[i].source].push_back(i);

  std::vector<std::string> verbs;
  std::unordered_set<std::string> visited;
  auto walk = [&](auto&& self, const std::string& var) -> void {
    visited.insert(var);
    const std::string& concept_label = graph.concept_of(var);
    const bool reification = concept_label.starts_with("have-") && concept_label.ends_with("-91");
    if (has_sense_suffix(concept_label) && !reification && !cfg.amr_drop_concepts.count(concept_label))
      verbs.push_back(strip_sense(concept_label));
    auto it = out_edges.find(var);
    if (it == out_edges.end()) return;
    for (std::size_t i : it->second) {
      const auto& e = graph.edges[i];
      if (e.target.kind == EdgeTarget::Kind::Variable && !visited.count(e.target.value))
        self(self, e.target.value);
    }
  };
  walk(walk, graph.root);
  return verbs;
}

std::vector<std::string> extract_amr_verbs(const AmrGraph& graph) {
  return extract_amr_verbs(graph, ExtractionConfig::defaults());
}

std::vector<PosTag> LexiconPosTagger::tag(const std::vector<std::string>& tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (is_numeric_token(tok)) {
      tags.push_back(PosTag::Number);
      continue;
    }
    auto it = lexicon_.find(lowercase(tok));
    tags.push_back(it == lexicon_.end() ? PosTag::Other : it->second);
  }
  return tags;
}

LexiconPosTagger LexiconPosTagger::from_text(const std::string& text) {
  std::unordered_map<std::string, PosTag> lex;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string token, tag;
    if (!(ls >> token >> tag)) throw FormatError("expected 'token tag'", line_no);
    lex[lowercase(token)] = tag_from_string(tag, line_no);
  }
  return LexiconPosTagger(std::move(lex));
}

LexiconPosTagger LexiconPosTagger::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open tagger lexicon '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace amrst
