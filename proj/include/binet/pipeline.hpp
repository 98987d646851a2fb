#pragma once

#include <cstdint>
#include <string>

#include "binet/align.hpp"
#include "binet/binet.hpp"
#include "binet/burst.hpp"
#include "binet/corpus.hpp"
#include "binet/lexicon.hpp"
#include "binet/score.hpp"

namespace binet {

struct PipelineParams {
  BurstParams burst;
  ScoreParams score;
  std::int64_t min_count = 1;
  std::int64_t min_edge_weight = 1;
  NeighborNorm neighbor_norm = NeighborNorm::source;
};

// Everything derived from one stream: burst sequences and periods for every
// vocabulary word, and the resulting network.
struct StreamAnalysis {
  int epochs = 0;
  std::size_t documents = 0;
  std::int64_t tokens = 0;
  BurstSeqMap sequences;  // words with at least one burst period
  PeriodMap periods;
  BINet net;
};

StreamAnalysis analyze_stream(const Stream& stream,
                              const PipelineParams& params,
                              const Stream* base_stream = nullptr);

struct DecipherRun {
  StreamAnalysis source;
  StreamAnalysis target;
  SeedAlignment seeds;
  ScoreTable table;
  DecipherReport report;
};

DecipherRun run_decipherment(const Stream& source_stream,
                             const Stream& target_stream,
                             const SeedLexicon& lexicon,
                             const RomanizationTable& roman,
                             const PipelineParams& params,
                             const UniversalMatcher& universal =
                                 UniversalMatcher(),
                             const Stream* source_base = nullptr,
                             const Stream* target_base = nullptr);

}  // namespace binet
