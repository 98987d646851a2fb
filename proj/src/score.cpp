#include "binet/score.hpp"

#include <algorithm>
#include <numeric>

#include "binet/errors.hpp"
#include "binet/text.hpp"

namespace binet {

std::int64_t levenshtein(std::span<const char32_t> a,
                         std::span<const char32_t> b) {
  if (a.empty()) return static_cast<std::int64_t>(b.size());
  if (b.empty()) return static_cast<std::int64_t>(a.size());

  std::vector<std::int64_t> prev(b.size() + 1), curr(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::int64_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, subst});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

std::int64_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(std::span<const char32_t>(utf8_codepoints(a)),
                     std::span<const char32_t>(utf8_codepoints(b)));
}

std::int64_t lcs_length(std::span<const char32_t> a,
                        std::span<const char32_t> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::int64_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                     : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

std::int64_t lcs_length(std::string_view a, std::string_view b) {
  return lcs_length(std::span<const char32_t>(utf8_codepoints(a)),
                    std::span<const char32_t>(utf8_codepoints(b)));
}

double pronunciation_score_from_distance(double normalized_leven) {
  if (normalized_leven <= 0.25) return 3.0;
  if (normalized_leven <= 0.5) return 1.0 + 1.0 / (2.0 * normalized_leven);
  return 0.0;
}

double translation_score_from_ratio(double lcs_ratio) {
  if (lcs_ratio >= 0.75) return 2.0;
  if (lcs_ratio >= 0.5) return 1.0 / (2.0 * (1.0 - lcs_ratio));
  return 0.0;
}

double score_pronunciation(std::string_view c_word, std::string_view e_word,
                           const RomanizationTable& table) {
  const std::string roman = table.romanize(c_word);
  if (roman.empty()) return 0.0;
  const auto roman_cps = utf8_codepoints(roman);

  const std::string target = ascii_lower(e_word);
  double best = -1.0;
  for (std::string_view part : split_whitespace(target)) {
    const auto part_cps = utf8_codepoints(part);
    const double dist =
        static_cast<double>(levenshtein(roman_cps, part_cps)) /
        static_cast<double>(part_cps.size());
    if (best < 0.0 || dist < best) best = dist;
  }
  if (best < 0.0) return 0.0;  // no parts
  return pronunciation_score_from_distance(best);
}

namespace {

// Concatenations of one translation per part, in part order, capped at
// max_combinations. Per-part translations are tried in descending LCS
// against c so a truncated enumeration keeps the most promising ones.
std::vector<std::string> translation_combinations(
    const std::vector<std::vector<const std::string*>>& per_part,
    std::size_t max_combinations) {
  std::vector<std::string> out;
  std::vector<std::size_t> odometer(per_part.size(), 0);
  while (out.size() < max_combinations) {
    std::string combined;
    for (std::size_t i = 0; i < per_part.size(); ++i) {
      combined += *per_part[i][odometer[i]];
    }
    out.push_back(std::move(combined));

    // Advance the odometer, last part fastest.
    std::size_t i = per_part.size();
    while (i-- > 0) {
      if (++odometer[i] < per_part[i].size()) break;
      odometer[i] = 0;
      if (i == 0) return out;
    }
  }
  return out;
}

}  // namespace

double score_translation(std::string_view c_word, std::string_view e_word,
                         const SeedLexicon& lexicon,
                         std::size_t max_combinations) {
  const auto c_cps = utf8_codepoints(c_word);
  if (c_cps.empty()) return 0.0;

  const std::string target = ascii_lower(e_word);
  const auto parts = split_whitespace(target);
  if (parts.empty()) return 0.0;

  std::int64_t best_lcs = -1;
  if (parts.size() == 1) {
    const std::set<std::string>* translations = lexicon.sources_of(parts[0]);
    if (!translations) return 0.0;
    for (const std::string& candidate : *translations) {
      best_lcs = std::max(
          best_lcs,
          lcs_length(c_cps,
                     std::span<const char32_t>(utf8_codepoints(candidate))));
    }
  } else {
    // Every part must be translatable; otherwise no concatenation exists.
    std::vector<std::vector<const std::string*>> per_part;
    per_part.reserve(parts.size());
    for (std::string_view part : parts) {
      const std::set<std::string>* translations = lexicon.sources_of(part);
      if (!translations || translations->empty()) return 0.0;
      std::vector<const std::string*> ranked;
      ranked.reserve(translations->size());
      for (const std::string& t : *translations) ranked.push_back(&t);
      std::stable_sort(ranked.begin(), ranked.end(),
                       [&](const std::string* x, const std::string* y) {
                         return lcs_length(
                                    c_cps, std::span<const char32_t>(
                                               utf8_codepoints(*x))) >
                                lcs_length(c_cps,
                                           std::span<const char32_t>(
                                               utf8_codepoints(*y)));
                       });
      per_part.push_back(std::move(ranked));
    }
    for (const std::string& combined :
         translation_combinations(per_part, max_combinations)) {
      best_lcs = std::max(
          best_lcs,
          lcs_length(c_cps,
                     std::span<const char32_t>(utf8_codepoints(combined))));
    }
  }

  if (best_lcs < 0) return 0.0;
  const double ratio =
      static_cast<double>(best_lcs) / static_cast<double>(c_cps.size());
  return translation_score_from_ratio(ratio);
}

double score_coburst(const BurstSequence& seq_c, const BurstSequence& seq_e) {
  if (seq_c.s.size() != seq_e.s.size()) {
    throw DomainError("score_coburst: sequence length mismatch");
  }
  std::int64_t dot = 0, norm_c = 0, norm_e = 0;
  for (std::size_t tau = 0; tau < seq_c.s.size(); ++tau) {
    const int a = seq_c.s[tau] ? 1 : 0;
    const int b = seq_e.s[tau] ? 1 : 0;
    dot += a & b;
    norm_c += a;
    norm_e += b;
  }
  if (norm_c + norm_e == 0) return 0.0;
  return static_cast<double>(dot) / static_cast<double>(norm_c + norm_e);
}

void ScoreParams::validate() const {
  if (eta < 0 || lambda < 0 || gamma < 0 || delta < 0) {
    throw ConfigError("clue weights must be non-negative");
  }
  if (sn_max < 0) throw ConfigError("sn_max must be non-negative");
  if (iterations < 1) throw ConfigError("iterations must be at least 1");
  if (!(init_mass > 0.0 && init_mass <= 1.0)) {
    throw ConfigError("init_mass must be in (0, 1]");
  }
  if (!(cap > 0.0 && cap < 1.0)) throw ConfigError("cap must be in (0, 1)");
  if (max_combinations < 1) {
    throw ConfigError("max_combinations must be at least 1");
  }
}

double combined_score(double sp, double st, double sn, double sb,
                      const ScoreParams& params) {
  return params.eta * sp + params.lambda * st +
         std::min(params.gamma * sn, params.sn_max) + params.delta * sb;
}

}  // namespace binet
