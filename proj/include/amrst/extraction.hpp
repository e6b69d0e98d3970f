#ifndef AMRST_EXTRACTION_HPP
#define AMRST_EXTRACTION_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amrst/amr.hpp"

namespace amrst {

// Coarse token classes used by verb extraction and the masking probe.
enum class PosTag { Verb, Noun, Entity, Number, Other };

// Part-of-speech tagger seam. Implementations must be deterministic and
// return one tag per input token.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> tag(const std::vector<std::string>& tokens) const = 0;
};

// Word-list tagger: case-insensitive lookup with numeric tokens tagged
// Number automatically; everything else Other.
class LexiconPosTagger : public PosTagger {
 public:
  explicit LexiconPosTagger(std::unordered_map<std::string, PosTag> lexicon)
      : lexicon_(std::move(lexicon)) {}

  std::vector<PosTag> tag(const std::vector<std::string>& tokens) const override;

  // One `token tag` pair per line, tags in {verb, noun, entity, number, other}.
  static LexiconPosTagger from_file(const std::string& path);
  static LexiconPosTagger from_text(const std::string& text);

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

struct ExtractionConfig {
  std::unordered_set<std::string> stopwords;  // compared after lowercasing
  bool keep_punctuation = true;
  std::unordered_set<std::string> amr_drop_concepts = {"date-entity", "multi-sentence",
                                                       "amr-unknown"};
  std::string mask_token = "<MASK>";

  // Bundled English stopword list (see stopword_list_version()).
  static ExtractionConfig defaults();
};

// Version tag of the bundled stopword list.
const char* stopword_list_version();
const std::vector<std::string>& bundled_stopwords();

// Stopword file: one token per line.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// Whitespace tokenization.
std::vector<std::string> tokenize(const std::string& text);
std::string lowercase(const std::string& text);

// Lowercased whitespace tokens minus stopwords; tokens consisting solely of
// punctuation are dropped when keep_punctuation is off.
std::vector<std::string> extract_sentence_content(const std::string& sentence,
                                                  const ExtractionConfig& cfg);

// Content tokens of a graph in DFS order: concepts (sense codes stripped,
// drop-listed concepts skipped) and literal operands verbatim without
// quotes. Roles, parentheses and variable ids contribute nothing.
std::vector<std::string> extract_amr_content(const AmrGraph& graph, const ExtractionConfig& cfg);

// Surface forms of verb-tagged tokens, original order, no lemmatization.
std::vector<std::string> extract_sentence_verbs(const std::string& sentence,
                                                const PosTagger& tagger);

// PropBank-framed concepts `lemma-NN` in DFS order, sense-stripped.
// Drop-listed concepts and `have-*-91` reification frames are excluded.
std::vector<std::string> extract_amr_verbs(const AmrGraph& graph, const ExtractionConfig& cfg);
std::vector<std::string> extract_amr_verbs(const AmrGraph& graph);

}  // namespace amrst

#endif  // AMRST_EXTRACTION_HPP
