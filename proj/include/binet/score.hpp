#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "binet/burst.hpp"
#include "binet/lexicon.hpp"

namespace binet {

// Code-point-level string metrics.
std::int64_t levenshtein(std::span<const char32_t> a,
                         std::span<const char32_t> b);
std::int64_t levenshtein(std::string_view a, std::string_view b);
std::int64_t lcs_length(std::span<const char32_t> a,
                        std::span<const char32_t> b);
std::int64_t lcs_length(std::string_view a, std::string_view b);

// Piecewise maps from the raw similarity to the clue score. Both boundary
// arguments land on the branch that keeps the map continuous.
double pronunciation_score_from_distance(double normalized_leven);
double translation_score_from_ratio(double lcs_ratio);

// Sp: normalized edit distance between romanize(c_word) and each
// whitespace-separated part of e_word (lowercased), minimized over parts.
// Empty romanization scores 0.
double score_pronunciation(std::string_view c_word, std::string_view e_word,
                           const RomanizationTable& table);

// St: best character-LCS ratio between c_word and any lexicon translation of
// e_word; multi-part targets concatenate one translation per part, capped at
// max_combinations (overflow keeps the per-part translations with the
// highest LCS against c_word).
double score_translation(std::string_view c_word, std::string_view e_word,
                         const SeedLexicon& lexicon,
                         std::size_t max_combinations = 64);

// Sb: dot product of the two words' binary burst sequences over the sum of
// their squared norms; 0 when both are all-zero.
double score_coburst(const BurstSequence& seq_c, const BurstSequence& seq_e);

struct ScoreParams {
  double eta = 0.25;    // Sp weight
  double lambda = 0.3;  // St weight
  double gamma = 0.5;   // Sn weight
  double delta = 0.2;   // Sb weight
  double sn_max = 0.4;  // cap on gamma * Sn
  int iterations = 20;
  double init_mass = 0.5;  // initial score = init_mass / |Cand(c)|
  double cap = 0.99;       // non-seed scores never exceed this
  std::size_t max_combinations = 64;
  bool early_stop = false;
  double early_stop_delta = 1e-6;

  void validate() const;  // throws ConfigError
};

// eta*Sp + lambda*St + min(gamma*Sn, sn_max) + delta*Sb.
double combined_score(double sp, double st, double sn, double sb,
                      const ScoreParams& params);

}  // namespace binet
