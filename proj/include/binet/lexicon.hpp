#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "binet/binet.hpp"

namespace binet {

// Bilingual seed dictionary. Source lookups are case-sensitive; target words
// are lowercased at load and looked up case-insensitively.
class SeedLexicon {
 public:
  void add(std::string_view source, std::string_view target);

  // nullptr when the word has no entry.
  const std::set<std::string>* translations(const std::string& source) const;
  const std::set<std::string>* sources_of(std::string_view target) const;

  std::size_t entry_count() const { return pair_count_; }
  bool empty() const { return pair_count_ == 0; }

  const std::map<std::string, std::set<std::string>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::set<std::string>> entries_;
  std::map<std::string, std::set<std::string>> reverse_;
  std::size_t pair_count_ = 0;
};

// TSV: source_word<TAB>target_word, repeats deduplicated.
SeedLexicon load_lexicon(const std::string& path);

// Maps words or graphemes to ASCII-lowercase romanized strings, with greedy
// longest-match composition for unseen words.
class RomanizationTable {
 public:
  void add(std::string key, std::string_view value);

  // Whole-word lookup first, then longest-match over code points. Unmapped
  // ASCII passes through lowercased; unmapped non-ASCII is dropped. Total.
  std::string romanize(std::string_view word) const;

  std::size_t size() const { return map_.size(); }
  const std::unordered_map<std::string, std::string>& entries() const {
    return map_;
  }

 private:
  std::unordered_map<std::string, std::string> map_;
  std::size_t max_key_codepoints_ = 0;
};

// TSV: grapheme_or_word<TAB>romanized.
RomanizationTable load_romanization(const std::string& path);

inline std::string romanize(const RomanizationTable& table,
                            std::string_view word) {
  return table.romanize(word);
}

enum class UniversalTag { number, date, scoreline, url, currency };

const char* to_string(UniversalTag tag);

// Recognizes tokens that read the same across languages and can seed the
// decipherment without a dictionary.
class UniversalMatcher {
 public:
  UniversalMatcher();  // default currency symbols: $ € £ ¥
  explicit UniversalMatcher(std::vector<std::string> currency_symbols);

  std::optional<UniversalTag> match(std::string_view token) const;

 private:
  std::vector<std::string> currency_symbols_;
};

// Matches with the default symbol set.
std::optional<UniversalTag> universal_match(std::string_view token);

// Node pairs fixed to score 1 by prior knowledge. Always a subset of the
// temporal candidate universe.
struct SeedAlignment {
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (source id, target id)

  bool operator==(const SeedAlignment&) const = default;
};

// (c, e) is seeded iff their periods overlap and either e's word is a
// lexicon translation of c's word, or both words are the same
// language-universal token.
SeedAlignment seed_alignments(const BINet& source_net, const BINet& target_net,
                              const SeedLexicon& lexicon,
                              const UniversalMatcher& universal =
                                  UniversalMatcher());

}  // namespace binet
