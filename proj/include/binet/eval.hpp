#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "binet/align.hpp"
#include "binet/corpus.hpp"
#include "binet/lexicon.hpp"
#include "binet/pipeline.hpp"

namespace binet {

// Acceptable target words per source word, standing in for human annotation.
struct GoldTable {
  std::map<std::string, std::set<std::string>> entries;

  bool contains(const std::string& source, const std::string& target) const;
  std::size_t size() const { return entries.size(); }
};

struct SynthConfig {
  int T = 90;
  int n_topics = 6;
  int words_per_topic = 12;  // per language, planted pairs included
  int n_planted_pairs = 8;   // per topic
  double seed_fraction = 0.4;
  int docs_per_epoch = 24;
  int background_vocab_size = 40;
  std::uint64_t rng_seed = 20100131;

  void validate() const;  // throws ConfigError
};

struct SynthDataset {
  Stream source;
  Stream target;
  SeedLexicon lexicon;
  RomanizationTable romanization;
  GoldTable gold;
};

// Coordinated streams with planted translation pairs. Topic episodes get
// disjoint burst windows; each planted pair co-bursts across streams inside
// its episode and co-occurs with the episode's other words. seed_fraction of
// each topic's pairs go into the lexicon (a fixed prefix of a per-topic
// shuffle, so larger fractions add seeds without moving the rest); everything
// else becomes gold. Non-seed source words get a romanization within an edit
// budget of their target. Fully determined by rng_seed.
SynthDataset generate_coordinated(const SynthConfig& config);

// Fraction of the top-k ranked pairs whose target word is acceptable for the
// source word; sources absent from the gold count as wrong. k above the
// result size uses the result size as denominator.
double topk_accuracy(const AlignmentResult& result, const GoldTable& gold,
                     std::size_t k);

struct SplitHalfReport {
  int begin = 0;
  int end = 0;
  std::size_t source_nodes = 0;
  std::size_t source_edges = 0;
  std::size_t source_docs = 0;
  std::size_t target_nodes = 0;
  std::size_t target_edges = 0;
  std::size_t target_docs = 0;
  std::size_t seed_pairs = 0;
  std::size_t candidate_pairs = 0;
};

// Runs the full pipeline on [0, split_epoch) and [split_epoch, T)
// concurrently and merges the ranked pairs, deduplicating on
// (source word, target word) with the max score. Periods in the second half
// are reported in whole-stream epochs.
AlignmentResult split_merge_decipher(const Stream& source_stream,
                                     const Stream& target_stream,
                                     int split_epoch,
                                     const SeedLexicon& lexicon,
                                     const RomanizationTable& roman,
                                     const PipelineParams& params,
                                     const UniversalMatcher& universal =
                                         UniversalMatcher(),
                                     std::vector<SplitHalfReport>* reports =
                                         nullptr);

// Standard-format writers/readers so generated data round-trips through the
// normal CLI. Dates start at base_day (days since 1970-01-01).
void write_corpus(const Stream& stream, const std::string& path,
                  std::int64_t base_day = days_from_civil(2010, 1, 1));
void write_lexicon(const SeedLexicon& lexicon, const std::string& path);
void write_romanization(const RomanizationTable& table,
                        const std::string& path);
void write_gold(const GoldTable& gold, const std::string& path);
GoldTable load_gold(const std::string& path);

}  // namespace binet
