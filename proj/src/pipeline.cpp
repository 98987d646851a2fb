#include "binet/pipeline.hpp"

namespace binet {

StreamAnalysis analyze_stream(const Stream& stream,
                              const PipelineParams& params,
                              const Stream* base_stream) {
  StreamAnalysis out;
  out.epochs = stream.epochs;
  out.documents = stream.doc_count();
  out.tokens = stream.token_count();

  const StreamStats stats(stream);
  std::optional<StreamStats> base;
  if (base_stream) base.emplace(*base_stream);

  for (const std::string& word : stats.vocabulary(params.min_count)) {
    const WordStats ws = stats.word_stats(word, base ? &*base : nullptr);
    if (ws.q0 <= 0.0) continue;
    BurstSequence seq = detect_bursts(ws, params.burst);
    auto periods = extract_periods(seq);
    if (periods.empty()) continue;
    out.periods.emplace(word, std::move(periods));
    out.sequences.emplace(word, std::move(seq));
  }

  out.net = build_binet(stream, out.periods, params.min_edge_weight);
  return out;
}

DecipherRun run_decipherment(const Stream& source_stream,
                             const Stream& target_stream,
                             const SeedLexicon& lexicon,
                             const RomanizationTable& roman,
                             const PipelineParams& params,
                             const UniversalMatcher& universal,
                             const Stream* source_base,
                             const Stream* target_base) {
  DecipherRun run;
  run.source = analyze_stream(source_stream, params, source_base);
  run.target = analyze_stream(target_stream, params, target_base);
  run.seeds =
      seed_alignments(run.source.net, run.target.net, lexicon, universal);
  run.table = decipher(run.source.net, run.target.net, run.seeds, lexicon,
                       roman, run.source.sequences, run.target.sequences,
                       params.score, params.neighbor_norm, &run.report);
  return run;
}

}  // namespace binet
