#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "amrst/errors.hpp"
#include "amrst/wmd.hpp"
#include "test_util.hpp"

using namespace amrst;

namespace {

std::vector<std::string> random_tokens(testutil::Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> vocab = {"alpha", "beta",  "gamma", "delta",
                                                 "eps",   "zeta",  "eta",   "theta"};
  std::vector<std::string> out;
  const std::size_t len = 1 + rng.below(max_len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(vocab[rng.below(vocab.size())]);
  return out;
}

}  // namespace

TEST_CASE("hash fallback vectors are deterministic unit vectors") {
  const EmbeddingStore store = make_hash_store(16, 7);
  const auto a1 = store.lookup("token");
  const auto a2 = store.lookup("token");
  REQUIRE(a1);
  CHECK(*a1 == *a2);
  CHECK(a1->norm() == doctest::Approx(1.0));
  const EmbeddingStore other_seed = make_hash_store(16, 8);
  CHECK((*other_seed.lookup("token") - *a1).norm() > 1e-6);
}

TEST_CASE("embedding file parsing") {
  const std::string text = "cat 1.0 0.0 0.0\ndog 0.0 1.0 0.0\n";
  const EmbeddingStore store = parse_embeddings(text, OovPolicy::skip());
  CHECK(store.dimension() == 3);
  CHECK(store.size() == 2);
  CHECK(store.contains("cat"));
  CHECK_FALSE(store.lookup("mouse"));  // skip policy

  // Optional header line is equivalent to none.
  const EmbeddingStore with_header = parse_embeddings("2 3\n" + text, OovPolicy::skip());
  CHECK(with_header.size() == 2);
  CHECK(*with_header.lookup("cat") == *store.lookup("cat"));
}

TEST_CASE("embedding file errors carry line numbers") {
  try {
    parse_embeddings("cat 1.0 2.0\ndog 1.0 oops\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_embeddings("cat 1.0 2.0\ndog 1.0\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("wmd of identical token lists is 0") {
  const EmbeddingStore store = make_hash_store(12, 0);
  CHECK(wmd({"a", "b", "c"}, {"a", "b", "c"}, store) == doctest::Approx(0.0));
  CHECK(wmd({"a", "a", "b"}, {"b", "a", "a"}, store) == doctest::Approx(0.0));
}

TEST_CASE("wmd of two singletons is the embedding distance") {
  const EmbeddingStore store = make_hash_store(12, 0);
  const double expect = (*store.lookup("a") - *store.lookup("b")).norm();
  CHECK(wmd({"a"}, {"b"}, store) == doctest::Approx(expect));
}

TEST_CASE("wmd 2x2 uniform equals the best matching") {
  const EmbeddingStore store = make_hash_store(12, 3);
  auto d = [&](const char* x, const char* y) {
    return (*store.lookup(x) - *store.lookup(y)).norm();
  };
  const double m1 = (d("a", "c") + d("b", "d")) / 2.0;
  const double m2 = (d("a", "d") + d("b", "c")) / 2.0;
  CHECK(wmd({"a", "b"}, {"c", "d"}, store) == doctest::Approx(std::min(m1, m2)));
}

TEST_CASE("wmd rejects empty-after-OOV inputs") {
  EmbeddingStore store(4, OovPolicy::skip());
  store.insert("known", Eigen::VectorXd::Ones(4));
  CHECK_THROWS_AS(wmd({"unknown"}, {"known"}, store), EmptyExtractionError);
  CHECK_THROWS_AS(wmd({}, {"known"}, store), EmptyExtractionError);
}

TEST_CASE("wmd metric axioms on random instances") {
  const EmbeddingStore store = make_hash_store(10, 11);
  testutil::Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto a = random_tokens(rng, 5);
    const auto b = random_tokens(rng, 5);
    const auto c = random_tokens(rng, 5);
    const double ab = wmd(a, b, store);
    const double ba = wmd(b, a, store);
    const double aa = wmd(a, a, store);
    const double ac = wmd(a, c, store);
    const double bc = wmd(b, c, store);
    CHECK(std::abs(aa) <= 1e-9);
    CHECK(std::abs(ab - ba) <= 1e-9);
    CHECK(ac <= ab + bc + 1e-9);
    CHECK(ab >= 0.0);
  }
}

TEST_CASE("wmd plan satisfies marginals") {
  const EmbeddingStore store = make_hash_store(8, 2);
  const WmdResult r = wmd_detailed({"a", "b", "a"}, {"c", "d"}, store);
  const Eigen::VectorXd rows = r.plan.flows.rowwise().sum();
  for (Eigen::Index i = 0; i < rows.size(); ++i)
    CHECK(std::abs(rows[i] - r.supply.weights[i]) <= 1e-9);
}

TEST_CASE("wmd_overall is 0 when extractions coincide") {
  const EmbeddingStore store = make_hash_store(12, 0);
  const ExtractionConfig cfg = ExtractionConfig::defaults();
  const AmrGraph g = parse_penman("(e / eat-01 :ARG0 (d / dog))");
  // extraction: "eat dog"
  CHECK(wmd_overall("eat dog", g, store, cfg) == doctest::Approx(0.0));
  CHECK(wmd_overall("the eat and dog", g, store, cfg) == doctest::Approx(0.0));
}

TEST_CASE("wmd_overall is symmetric in token multisets and positive otherwise") {
  const EmbeddingStore store = make_hash_store(12, 0);
  const ExtractionConfig cfg = ExtractionConfig::defaults();
  const auto blocks = read_penman_blocks(testutil::read_file(testutil::data_path("table11.amr")));
  const AmrGraph g = parse_penman(blocks.at(0));
  const std::string sentence = testutil::read_file(testutil::data_path("table11_sentence.txt"));
  const double score = wmd_overall(sentence, g, store, cfg);
  CHECK(score > 0.0);
  // Swapping the argument sides of the underlying transport is symmetric.
  const double swapped =
      wmd(extract_amr_content(g, cfg), extract_sentence_content(sentence, cfg), store);
  CHECK(score == doctest::Approx(swapped).epsilon(1e-9));
}

TEST_CASE("wmd_verb_overall matches a 2x3 transport oracle") {
  const EmbeddingStore store = make_hash_store(12, 5);
  const ExtractionConfig cfg = ExtractionConfig::defaults();
  const LexiconPosTagger tagger = LexiconPosTagger::from_text("ended verb\nleft verb\n");
  const auto blocks = read_penman_blocks(testutil::read_file(testutil::data_path("table11.amr")));
  const AmrGraph g = parse_penman(blocks.at(0));
  const std::string sentence = testutil::read_file(testutil::data_path("table11_sentence.txt"));

  const double score = wmd_verb_overall(sentence, g, store, tagger, cfg);
  // Independent route: explicit nBOWs and the exact solver over the known
  // extractions `ended left` vs `end visit leave`.
  const NbowDistribution supply = make_nbow({"ended", "left"});
  const NbowDistribution demand = make_nbow({"end", "visit", "leave"});
  Eigen::MatrixXd costs(2, 3);
  const std::vector<std::string> s = {"ended", "left"};
  const std::vector<std::string> d = {"end", "visit", "leave"};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      costs(i, j) = (*store.lookup(s[static_cast<std::size_t>(i)]) -
                     *store.lookup(d[static_cast<std::size_t>(j)]))
                        .norm();
  CHECK(score == doctest::Approx(solve_transport(supply, demand, costs).cost).epsilon(1e-12));
  CHECK(score > 0.0);
}

TEST_CASE("wmd_verb_overall rejects verbless sides") {
  const EmbeddingStore store = make_hash_store(12, 5);
  const ExtractionConfig cfg = ExtractionConfig::defaults();
  const LexiconPosTagger tagger = LexiconPosTagger::from_text("ran verb\n");
  const AmrGraph g = parse_penman("(e / eat-01 :ARG0 (d / dog))");
  CHECK_THROWS_AS(wmd_verb_overall("the red table", g, store, tagger, cfg),
                  EmptyExtractionError);
  const AmrGraph verbless = parse_penman("(d / dog)");
  CHECK_THROWS_AS(wmd_verb_overall("he ran home", verbless, store, tagger, cfg),
                  EmptyExtractionError);
}
