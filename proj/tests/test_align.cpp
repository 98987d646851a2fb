#include <doctest.h>

#include <algorithm>

#include "binet/align.hpp"
#include "oracles.hpp"

using namespace binet;

namespace {

BINet net_of(const std::vector<BurstElement>& elements,
             const std::vector<std::tuple<int, int, std::int64_t>>& edges = {}) {
  BINetBuilder builder;
  std::vector<NodeId> ids;
  for (const auto& e : elements) ids.push_back(builder.add_node(e));
  for (const auto& [a, b, w] : edges) builder.add_edge(ids[a], ids[b], w);
  return std::move(builder).build();
}

const SeedLexicon kEmptyLexicon;
const RomanizationTable kEmptyRoman;
const BurstSeqMap kEmptySeqs;

}  // namespace

TEST_CASE("candidates: interval intersection, inclusive endpoints") {
  const BINet source = net_of({{"c", {10, 15}}});
  const BINet target = net_of({{"in", {14, 20}},
                               {"out", {16, 20}},
                               {"touch", {15, 15}},
                               {"early", {0, 10}}});
  const auto result = candidates(source, target, 0);
  std::vector<std::string> words;
  for (NodeId e : result) words.push_back(target.node(e).word);
  CHECK(words == std::vector<std::string>{"early", "in", "touch"});
  CHECK_THROWS_AS(candidates(source, target, 9), DomainError);
}

TEST_CASE("score table rows, lookups, and mutation") {
  const BINet source = net_of({{"c1", {0, 5}}, {"c2", {8, 9}}});
  const BINet target = net_of({{"e1", {0, 3}}, {"e2", {4, 6}}, {"e3", {8, 8}}});
  ScoreTable table(source, target);

  CHECK(table.pair_count() == 3);
  CHECK(table.row_targets(source.id_of({"c1", {0, 5}})).size() == 2);
  CHECK(table.row_targets(source.id_of({"c2", {8, 9}})).size() == 1);

  const NodeId c1 = source.id_of({"c1", {0, 5}});
  const NodeId e1 = target.id_of({"e1", {0, 3}});
  const NodeId e3 = target.id_of({"e3", {8, 8}});

  CHECK(table.score(c1, e1) == 0.0);
  CHECK(!table.score(c1, e3));       // not a candidate
  CHECK(table.score_or_zero(c1, e3) == 0.0);
  CHECK_THROWS_AS(table.set_score(c1, e3, 0.5), DomainError);

  table.set_score(c1, e1, 0.25);
  CHECK(table.score(c1, e1) == 0.25);
  CHECK(!table.is_fixed(c1, e1));
  table.set_fixed(c1, e1, 1.0);
  CHECK(table.is_fixed(c1, e1));
  CHECK(table.is_seeded_source(c1));
}

TEST_CASE("score_neighbor basics") {
  // c1 - c2 in the source; e1 - e2 in the target.
  const BINet source =
      net_of({{"c1", {0, 5}}, {"c2", {0, 5}}}, {{0, 1, 2}});
  const BINet target =
      net_of({{"e1", {0, 5}}, {"e2", {0, 5}}}, {{0, 1, 3}});
  const NodeId c1 = source.id_of({"c1", {0, 5}});
  const NodeId c2 = source.id_of({"c2", {0, 5}});
  const NodeId e1 = target.id_of({"e1", {0, 5}});
  const NodeId e2 = target.id_of({"e2", {0, 5}});

  ScoreTable table(source, target);
  table.set_fixed(c2, e2, 1.0);

  // Single neighbor with normalized weight 1 whose best counterpart is a
  // fixed seed.
  CHECK(score_neighbor(c1, e1, source, target, table) == 1.0);

  // e2's only neighbor is e1; (c2, e1) is an un-scored candidate -> 0.
  CHECK(score_neighbor(c1, e2, source, target, table) == 0.0);

  // An isolated source node has an empty sum.
  const BINet lonely = net_of({{"c1", {0, 5}}});
  ScoreTable lone_table(lonely, target);
  CHECK(score_neighbor(0, e1, lonely, target, lone_table) == 0.0);
}

TEST_CASE("score_neighbor honors the normalization switch") {
  // b's edges: to c with weight 6, to a with weight 2.
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {0, 9}}}, {{0, 1, 2}, {1, 2, 6}});
  const BINet target = net_of({{"x", {0, 9}}, {"y", {0, 9}}}, {{0, 1, 1}});
  const NodeId a = source.id_of({"a", {0, 9}});
  const NodeId b = source.id_of({"b", {0, 9}});
  const NodeId c = source.id_of({"c", {0, 9}});
  const NodeId x = target.id_of({"x", {0, 9}});
  const NodeId y = target.id_of({"y", {0, 9}});

  ScoreTable table(source, target);
  table.set_fixed(a, x, 1.0);
  table.set_score(c, x, 0.5);

  // Dividing by b's weight sum: 6/8 * 0.5 + 2/8 * 1.
  CHECK(score_neighbor(b, y, source, target, table, NeighborNorm::source) ==
        doctest::Approx(0.625).epsilon(1e-12));
  // Dividing by each neighbor's own weight sum: 6/6 * 0.5 + 2/2 * 1.
  CHECK(score_neighbor(b, y, source, target, table, NeighborNorm::paper) ==
        doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("decipher: initialization, neighbor coupling, and cap") {
  // c1 - c2; target clique-ish: e0..e4 all overlap, edge e0-e1 only.
  const BINet source =
      net_of({{"a", {0, 9}}, {"b", {0, 9}}}, {{0, 1, 1}});
  const BINet target = net_of({{"t0", {0, 9}},
                               {"t1", {0, 9}},
                               {"t2", {0, 9}},
                               {"t3", {0, 9}},
                               {"t4", {0, 9}}},
                              {{0, 1, 1}});
  const NodeId c1 = source.id_of({"a", {0, 9}});
  const NodeId e0 = target.id_of({"t0", {0, 9}});

  ScoreParams params;
  params.iterations = 1;
  const ScoreTable table =
      decipher(source, target, SeedAlignment{}, kEmptyLexicon, kEmptyRoman,
               kEmptySeqs, kEmptySeqs, params);

  // |Cand| = 5, so every pair started at 0.5/5 = 0.1; with no other clue,
  // round 1 of (c1, t0) sees Sn = 1.0 * Score(b, t1) = 0.1.
  CHECK(table.score(c1, e0) == doctest::Approx(0.5 * 0.1).epsilon(1e-12));

  // A pair whose static clues already exceed the cap gets clamped.
  SeedLexicon lexicon;
  lexicon.add("a", "t0");  // St = 2 for (a, t0)
  RomanizationTable roman;
  roman.add("a", "t0");    // Sp = 3 for (a, t0)
  const ScoreTable capped =
      decipher(source, target, SeedAlignment{}, lexicon, roman, kEmptySeqs,
               kEmptySeqs, params);
  // eta*3 + lambda*2 = 1.35 -> capped at 0.99.
  CHECK(capped.score(c1, e0) == 0.99);
}

TEST_CASE("decipher: fixed seeds stay at 1 and ranges hold every round") {
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {0, 9}}}, {{0, 1, 2}, {1, 2, 1}});
  const BINet target = net_of(
      {{"x", {0, 9}}, {"y", {0, 9}}, {"z", {0, 9}}}, {{0, 1, 1}, {1, 2, 2}});

  SeedAlignment seeds;
  seeds.pairs.emplace_back(source.id_of({"b", {0, 9}}),
                           target.id_of({"y", {0, 9}}));

  for (int rounds = 1; rounds <= 5; ++rounds) {
    ScoreParams params;
    params.iterations = rounds;
    const ScoreTable table =
        decipher(source, target, seeds, kEmptyLexicon, kEmptyRoman, kEmptySeqs,
                 kEmptySeqs, params);
    for (NodeId c = 0; c < source.node_count(); ++c) {
      const auto targets = table.row_targets(c);
      const auto scores = table.row_scores(c);
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (table.is_fixed(c, targets[i])) {
          CHECK(scores[i] == 1.0);
        } else {
          CHECK(scores[i] >= 0.0);
          CHECK(scores[i] <= params.cap);
        }
      }
    }
  }
}

TEST_CASE("decipher: seeds must be candidates") {
  const BINet source = net_of({{"a", {0, 4}}});
  const BINet target = net_of({{"x", {10, 14}}});
  SeedAlignment seeds;
  seeds.pairs.emplace_back(0, 0);  // periods do not overlap
  CHECK_THROWS_AS(decipher(source, target, seeds, kEmptyLexicon, kEmptyRoman,
                           kEmptySeqs, kEmptySeqs, ScoreParams{}),
                  DomainError);
}

TEST_CASE("decipher: visit order cannot change the result") {
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {2, 9}}, {"d", {4, 9}}},
      {{0, 1, 2}, {1, 2, 1}, {0, 3, 1}});
  const BINet target = net_of(
      {{"x", {0, 9}}, {"y", {0, 9}}, {"z", {3, 9}}, {"w", {5, 9}}},
      {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}});
  SeedAlignment seeds;
  seeds.pairs.emplace_back(source.id_of({"a", {0, 9}}),
                           target.id_of({"x", {0, 9}}));

  ScoreParams params;
  params.iterations = 7;
  const ScoreTable natural =
      decipher(source, target, seeds, kEmptyLexicon, kEmptyRoman, kEmptySeqs,
               kEmptySeqs, params, NeighborNorm::source, nullptr, 0);
  for (std::uint64_t shuffle_seed : {1ull, 42ull, 0xFEEDull}) {
    const ScoreTable shuffled =
        decipher(source, target, seeds, kEmptyLexicon, kEmptyRoman, kEmptySeqs,
                 kEmptySeqs, params, NeighborNorm::source, nullptr,
                 shuffle_seed);
    REQUIRE(shuffled.scores().size() == natural.scores().size());
    for (std::size_t i = 0; i < natural.scores().size(); ++i) {
      // Bit-identical, not approximately equal.
      CHECK(shuffled.scores()[i] == natural.scores()[i]);
    }
  }
}

TEST_CASE("decipher: with gamma=0 one round equals twenty") {
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {2, 9}}}, {{0, 1, 2}, {1, 2, 1}});
  const BINet target = net_of(
      {{"x", {0, 9}}, {"y", {0, 9}}, {"z", {3, 9}}}, {{0, 1, 1}, {1, 2, 2}});
  SeedAlignment seeds;
  seeds.pairs.emplace_back(source.id_of({"a", {0, 9}}),
                           target.id_of({"x", {0, 9}}));
  SeedLexicon lexicon;
  lexicon.add("b", "y");

  ScoreParams one;
  one.gamma = 0.0;
  one.iterations = 1;
  ScoreParams twenty = one;
  twenty.iterations = 20;

  const ScoreTable t1 = decipher(source, target, seeds, lexicon, kEmptyRoman,
                                 kEmptySeqs, kEmptySeqs, one);
  const ScoreTable t20 = decipher(source, target, seeds, lexicon, kEmptyRoman,
                                  kEmptySeqs, kEmptySeqs, twenty);
  REQUIRE(t1.scores().size() == t20.scores().size());
  for (std::size_t i = 0; i < t1.scores().size(); ++i) {
    CHECK(t1.scores()[i] == t20.scores()[i]);
  }
}

TEST_CASE("decipher: optional early stop halts on convergence") {
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {2, 9}}}, {{0, 1, 2}, {1, 2, 1}});
  const BINet target = net_of(
      {{"x", {0, 9}}, {"y", {0, 9}}, {"z", {3, 9}}}, {{0, 1, 1}, {1, 2, 2}});
  SeedAlignment seeds;
  seeds.pairs.emplace_back(source.id_of({"a", {0, 9}}),
                           target.id_of({"x", {0, 9}}));

  ScoreParams params;
  params.iterations = 50;
  params.early_stop = true;
  DecipherReport report;
  const ScoreTable table =
      decipher(source, target, seeds, kEmptyLexicon, kEmptyRoman, kEmptySeqs,
               kEmptySeqs, params, NeighborNorm::source, &report);
  CHECK(report.rounds_run < 50);
  CHECK(report.round_max_delta.back() < 1e-6);
  CHECK(table.pair_count() > 0);
}

TEST_CASE("adding a seed never lowers round-1 Sn") {
  const BINet source = net_of(
      {{"a", {0, 9}}, {"b", {0, 9}}, {"c", {0, 9}}}, {{0, 1, 2}, {0, 2, 1}});
  const BINet target = net_of(
      {{"x", {0, 9}}, {"y", {0, 9}}, {"z", {0, 9}}}, {{0, 1, 1}, {0, 2, 1}});

  auto init_table = [&](bool extra_seed) {
    ScoreTable table(source, target);
    for (NodeId c = 0; c < source.node_count(); ++c) {
      const auto row = table.row_targets(c);
      for (NodeId e : row) {
        table.set_score(c, e, 0.5 / static_cast<double>(row.size()));
      }
    }
    table.set_fixed(source.id_of({"b", {0, 9}}),
                    target.id_of({"y", {0, 9}}), 1.0);
    if (extra_seed) {
      table.set_fixed(source.id_of({"c", {0, 9}}),
                      target.id_of({"z", {0, 9}}), 1.0);
    }
    return table;
  };

  const ScoreTable without = init_table(false);
  const ScoreTable with = init_table(true);
  for (NodeId c = 0; c < source.node_count(); ++c) {
    for (NodeId e : without.row_targets(c)) {
      CHECK(score_neighbor(c, e, source, target, with) >=
            score_neighbor(c, e, source, target, without));
    }
  }
}

TEST_CASE("extract_pairs: argmax, ranking, seed exclusion, empty rows") {
  const BINet source = net_of({{"a", {0, 5}},
                               {"b", {0, 5}},
                               {"isolated", {40, 45}},
                               {"双", {0, 2}},
                               {"双", {7, 9}}});
  const BINet target = net_of({{"x", {0, 5}},
                               {"y", {0, 9}},
                               {"z", {6, 9}}});

  ScoreTable table(source, target);
  const NodeId a = source.id_of({"a", {0, 5}});
  const NodeId b = source.id_of({"b", {0, 5}});
  const NodeId s1 = source.id_of({"双", {0, 2}});
  const NodeId s2 = source.id_of({"双", {7, 9}});
  const NodeId x = target.id_of({"x", {0, 5}});
  const NodeId y = target.id_of({"y", {0, 9}});
  const NodeId z = target.id_of({"z", {6, 9}});

  table.set_score(a, x, 0.3);
  table.set_score(a, y, 0.7);
  table.set_fixed(b, x, 1.0);   // seeded source: excluded from ranking
  table.set_score(b, y, 0.9);
  table.set_score(s1, x, 0.4);
  table.set_score(s1, y, 0.4);  // tie -> earlier period start wins (x)
  table.set_score(s2, y, 0.8);
  table.set_score(s2, z, 0.8);  // tie -> same start, word decides (y < z)

  const AlignmentResult all =
      extract_pairs(table, source, target, static_cast<std::size_t>(-1));
  REQUIRE(all.pairs.size() == 3);  // a, 双[0,2], 双[7,9]; b seeded, isolated empty
  CHECK(all.pairs[0].source.word == "双");
  CHECK(all.pairs[0].source.period.start == 7);
  CHECK(all.pairs[0].target.word == "y");
  CHECK(all.pairs[0].score == 0.8);
  CHECK(all.pairs[1].source.word == "a");
  CHECK(all.pairs[1].target.word == "y");
  CHECK(all.pairs[2].source.word == "双");
  CHECK(all.pairs[2].target.word == "x");  // tie broken toward earlier start

  const AlignmentResult top1 = extract_pairs(table, source, target, 1);
  CHECK(top1.pairs.size() == 1);

  // Word translations: the outer max over a word's elements.
  bool found = false;
  for (const WordTranslation& wt : all.word_translations) {
    if (wt.source_word == "双") {
      found = true;
      CHECK(wt.target_word == "y");
      CHECK(wt.score == 0.8);
    }
  }
  CHECK(found);
}

TEST_CASE("translate_word") {
  const BINet source = net_of({{"w", {0, 2}}, {"w", {6, 8}}, {"lonely", {40, 41}}});
  const BINet target = net_of({{"t1", {0, 3}}, {"t2", {5, 7}}});
  ScoreTable table(source, target);
  table.set_score(source.id_of({"w", {0, 2}}), target.id_of({"t1", {0, 3}}),
                  0.4);
  table.set_score(source.id_of({"w", {6, 8}}), target.id_of({"t2", {5, 7}}),
                  0.8);

  const auto wt = translate_word("w", table, source, target);
  REQUIRE(wt);
  CHECK(wt->target_word == "t2");
  CHECK(wt->score == 0.8);

  CHECK(!translate_word("lonely", table, source, target));
  CHECK_THROWS_AS(translate_word("missing", table, source, target),
                  DomainError);
}
