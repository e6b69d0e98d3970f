#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "amrst/bleu.hpp"

using namespace amrst;

TEST_CASE("identical sentences score 1") {
  CHECK(self_bleu("the cat sat on the mat", "the cat sat on the mat") == doctest::Approx(1.0));
  // Smoothing keeps short sentences finite: n-gram orders beyond the
  // sentence length are skipped, not zeroed.
  CHECK(self_bleu("hello", "hello") == doctest::Approx(1.0));
  CHECK(self_bleu("a b", "a b") == doctest::Approx(1.0));
}

TEST_CASE("empty target scores 0") {
  CHECK(self_bleu("some source", "") == 0.0);
}

TEST_CASE("token-disjoint sentences score at epsilon scale") {
  const double score = self_bleu("aaa bbb ccc ddd", "eee fff ggg hhh");
  CHECK(score <= 1e-8);
  CHECK(score > 0.0);
}

TEST_CASE("golden partial-overlap value") {
  // target `the cat sat` against source `the cat sat on the mat`:
  // p1 = p2 = p3 = 1, no 4-grams in the target, brevity penalty exp(1-6/3).
  const double expect = std::exp(-1.0);
  CHECK(self_bleu("the cat sat on the mat", "the cat sat") == doctest::Approx(expect));
}

TEST_CASE("golden clipped-precision value") {
  // source `a b`, target `a a b`: p1 = 2/3 (the second `a` is clipped),
  // p2 = 1/2, p3 = epsilon (the target trigram has no source counterpart),
  // no 4-grams, no brevity penalty (target longer than source).
  const double expect =
      std::exp((std::log(2.0 / 3.0) + std::log(0.5) + std::log(1e-9)) / 4.0);
  CHECK(self_bleu("a b", "a a b") == doctest::Approx(expect));
}

TEST_CASE("brevity penalty for a short target") {
  // All target n-grams occur in the source, so the score is exactly the
  // penalty exp(1 - 6/4).
  CHECK(self_bleu("w x y z q r", "w x y z") == doctest::Approx(std::exp(1.0 - 6.0 / 4.0)));
  // No penalty when the target is at least as long as the source.
  CHECK(self_bleu("w x y z", "w x y z q r") < 1.0);
  CHECK(self_bleu("w x y", "w x y") == doctest::Approx(1.0));
}
