#include <doctest.h>

#include "binet/score.hpp"
#include "oracles.hpp"

using namespace binet;

namespace {

struct TestRng {
  std::uint64_t state;
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::string random_word(TestRng& rng, int max_len) {
  std::string out;
  const int n = rng.range(0, max_len);
  for (int i = 0; i < n; ++i) {
    out.push_back(static_cast<char>('a' + rng.range(0, 5)));
  }
  return out;
}

BurstSequence seq_of(std::vector<std::uint8_t> s) {
  BurstSequence seq;
  seq.s = std::move(s);
  return seq;
}

}  // namespace

TEST_CASE("levenshtein and lcs match the reference implementations") {
  TestRng rng{0x1EE7ull};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string a = random_word(rng, 9);
    const std::string b = random_word(rng, 9);
    CHECK(levenshtein(a, b) == oracles::reference_levenshtein(a, b));
    CHECK(lcs_length(a, b) == oracles::reference_lcs(a, b));
  }

  CHECK(levenshtein("", "abc") == 3);
  CHECK(lcs_length("", "abc") == 0);
  CHECK(levenshtein("威廉", "威廉") == 0);
  CHECK(lcs_length("澳洲网球公开赛", "澳洲的公开赛") == 5);
}

TEST_CASE("piecewise score maps") {
  CHECK(pronunciation_score_from_distance(0.0) == 3.0);
  CHECK(pronunciation_score_from_distance(0.25) == 3.0);  // boundary: 1+1/0.5
  CHECK(pronunciation_score_from_distance(0.4) ==
        doctest::Approx(2.25).epsilon(1e-12));
  CHECK(pronunciation_score_from_distance(0.5) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pronunciation_score_from_distance(0.51) == 0.0);

  CHECK(translation_score_from_ratio(1.0) == 2.0);
  CHECK(translation_score_from_ratio(0.75) == 2.0);  // boundary: 1/(2*0.25)
  CHECK(translation_score_from_ratio(0.6) ==
        doctest::Approx(1.25).epsilon(1e-12));
  CHECK(translation_score_from_ratio(0.49) == 0.0);
}

TEST_CASE("score_pronunciation on the Williams example") {
  RomanizationTable table;
  table.add("威", "wei");
  table.add("廉", "lian");

  // Frozen with the reference DP: Leven(weilian, william) = 3, len 7.
  CHECK(oracles::reference_levenshtein("weilian", "william") == 3);
  const double expected = 1.0 + 1.0 / (2.0 * (3.0 / 7.0));
  CHECK(expected == doctest::Approx(2.1666666666666667).epsilon(1e-12));

  CHECK(score_pronunciation("威廉", "william", table) ==
        doctest::Approx(expected).epsilon(1e-12));

  // Identical strings score 3.
  CHECK(score_pronunciation("威廉", "weilian", table) == 3.0);

  // Multi-word candidates take the best part.
  CHECK(score_pronunciation("威廉", "Serena Williams", table) ==
        doctest::Approx(1.0 + 1.0 / (2.0 * (4.0 / 8.0))).epsilon(1e-12));

  // Unromanizable words score 0.
  CHECK(score_pronunciation("杯", "cup", table) == 0.0);
}

TEST_CASE("score_translation on the Australian Open example") {
  SeedLexicon lexicon;
  lexicon.add("澳洲的", "Australian");
  lexicon.add("公开赛", "open");

  // Frozen with the reference LCS: LCS(澳洲网球公开赛, 澳洲的公开赛) = 5 of 7.
  CHECK(oracles::reference_lcs("澳洲网球公开赛", "澳洲的公开赛") == 5);
  const double got = score_translation("澳洲网球公开赛", "Australian Open",
                                       lexicon);
  CHECK(got == doctest::Approx(1.75).epsilon(1e-9));

  // Exact translation: r = 1 -> St = 2.
  CHECK(score_translation("公开赛", "open", lexicon) == 2.0);

  // No lexicon entry at all -> 0.
  CHECK(score_translation("公开赛", "wimbledon", lexicon) == 0.0);

  // One untranslatable part kills the concatenation.
  CHECK(score_translation("澳洲网球公开赛", "Grand Open", lexicon) == 0.0);
}

TEST_CASE("score_translation caps the combination explosion") {
  SeedLexicon lexicon;
  // Each part has 10 translations; only one combination is right.
  for (int i = 0; i < 10; ++i) {
    lexicon.add("aa" + std::to_string(i), "left");
    lexicon.add("bb" + std::to_string(i), "right");
  }
  lexicon.add("abcd", "left");
  lexicon.add("efgh", "right");
  // The greedy per-part ordering puts the highest-LCS translations first,
  // so the right combination survives a cap of 1.
  CHECK(score_translation("abcdefgh", "left right", lexicon, 1) == 2.0);
}

TEST_CASE("score_coburst") {
  CHECK(score_coburst(seq_of({1, 1, 0, 0}), seq_of({1, 1, 1, 0})) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK(score_coburst(seq_of({1, 1, 0}), seq_of({1, 1, 0})) == 0.5);
  CHECK(score_coburst(seq_of({1, 0, 0}), seq_of({0, 1, 1})) == 0.0);
  CHECK(score_coburst(seq_of({0, 0}), seq_of({0, 0})) == 0.0);
  CHECK_THROWS_AS(score_coburst(seq_of({1}), seq_of({1, 0})), DomainError);

  // Symmetry.
  TestRng rng{0xABCDull};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> a(8), b(8);
    for (auto& v : a) v = static_cast<std::uint8_t>(rng.range(0, 1));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng.range(0, 1));
    CHECK(score_coburst(seq_of(a), seq_of(b)) ==
          score_coburst(seq_of(b), seq_of(a)));
  }
}

TEST_CASE("combined_score follows the weighted form") {
  const ScoreParams params;  // stock defaults
  CHECK(combined_score(0, 0, 0, 0, params) == 0.0);
  CHECK(combined_score(3, 2, 1, 0.4, params) ==
        doctest::Approx(1.83).epsilon(1e-12));
  // The neighbor contribution is capped.
  CHECK(combined_score(0, 0, 100.0, 0, params) == doctest::Approx(0.4));
}

TEST_CASE("clue scores stay in their documented ranges") {
  TestRng rng{0xFACEull};
  RomanizationTable table;
  table.add("x", "xx");
  SeedLexicon lexicon;
  lexicon.add("xaby", "target");
  lexicon.add("abc", "other words");

  for (int trial = 0; trial < 150; ++trial) {
    const std::string c = random_word(rng, 8);
    const std::string e = random_word(rng, 8);
    if (c.empty() || e.empty()) continue;
    const double sp = score_pronunciation(c, e, table);
    CHECK(sp >= 0.0);
    CHECK(sp <= 3.0);
    const double st = score_translation(c, e, lexicon);
    CHECK(st >= 0.0);
    CHECK(st <= 2.0);

    std::vector<std::uint8_t> sa(10), sb(10);
    for (auto& v : sa) v = static_cast<std::uint8_t>(rng.range(0, 1));
    for (auto& v : sb) v = static_cast<std::uint8_t>(rng.range(0, 1));
    const double coburst = score_coburst(seq_of(sa), seq_of(sb));
    CHECK(coburst >= 0.0);
    CHECK(coburst <= 0.5);
  }
}

TEST_CASE("score params validation") {
  ScoreParams params;
  CHECK_NOTHROW(params.validate());
  params.iterations = 0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = ScoreParams{};
  params.cap = 1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = ScoreParams{};
  params.eta = -0.1;
  CHECK_THROWS_AS(params.validate(), ConfigError);
}
