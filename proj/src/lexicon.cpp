#include "binet/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "binet/text.hpp"

namespace binet {

void SeedLexicon::add(std::string_view source, std::string_view target) {
  std::string src(source);
  std::string tgt = ascii_lower(target);
  if (entries_[src].insert(tgt).second) ++pair_count_;
  reverse_[std::move(tgt)].insert(std::move(src));
}

const std::set<std::string>* SeedLexicon::translations(
    const std::string& source) const {
  const auto it = entries_.find(source);
  return it == entries_.end() ? nullptr : &it->second;
}

const std::set<std::string>* SeedLexicon::sources_of(
    std::string_view target) const {
  const auto it = reverse_.find(ascii_lower(target));
  return it == reverse_.end() ? nullptr : &it->second;
}

SeedLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path);
  SeedLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, line_no, "expected source_word<TAB>target_word");
    }
    lexicon.add(fields[0], fields[1]);
  }
  return lexicon;
}

void RomanizationTable::add(std::string key, std::string_view value) {
  std::string lowered = ascii_lower(value);
  if (!is_ascii(lowered)) {
    throw DomainError("romanized value must be ASCII: " + lowered);
  }
  max_key_codepoints_ = std::max(max_key_codepoints_, utf8_length(key));
  map_[std::move(key)] = std::move(lowered);
}

std::string RomanizationTable::romanize(std::string_view word) const {
  // Whole-word lookup first.
  if (const auto it = map_.find(std::string(word)); it != map_.end()) {
    return it->second;
  }

  const auto offsets = utf8_offsets(word);
  const std::size_t n = offsets.size() - 1;  // code points
  std::string out;
  std::string key;
  std::size_t i = 0;
  while (i < n) {
    // Greedy longest match over code-point substrings.
    bool matched = false;
    const std::size_t max_len = std::min(max_key_codepoints_, n - i);
    for (std::size_t len = max_len; len >= 1; --len) {
      key.assign(word.substr(offsets[i], offsets[i + len] - offsets[i]));
      const auto it = map_.find(key);
      if (it != map_.end()) {
        out += it->second;
        i += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;

    const std::size_t byte_len = offsets[i + 1] - offsets[i];
    if (byte_len == 1) {
      char c = word[offsets[i]];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(c);  // unmapped ASCII passes through
    }
    // Unmapped non-ASCII code points are dropped.
    ++i;
  }
  return out;
}

RomanizationTable load_romanization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open romanization file: " + path);
  RomanizationTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(path, line_no,
                       "expected grapheme_or_word<TAB>romanized");
    }
    if (!is_ascii(fields[1])) {
      throw ParseError(path, line_no, "romanized value must be ASCII");
    }
    table.add(std::string(fields[0]), fields[1]);
  }
  return table;
}

const char* to_string(UniversalTag tag) {
  switch (tag) {
    case UniversalTag::number: return "NUMBER";
    case UniversalTag::date: return "DATE";
    case UniversalTag::scoreline: return "SCORELINE";
    case UniversalTag::url: return "URL";
    case UniversalTag::currency: return "CURRENCY";
  }
  return "?";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// [0-9]+([.,][0-9]+)?
bool is_number(std::string_view s) {
  const std::size_t sep = s.find_first_of(".,");
  if (sep == std::string_view::npos) return all_digits(s);
  return all_digits(s.substr(0, sep)) && all_digits(s.substr(sep + 1));
}

bool in_range(std::string_view s, int lo, int hi) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return lo <= v && v <= hi;
}

// Three numeric fields with one separator from {-,/,.}: either ISO
// (4-digit year first) or day/month/year (2- or 4-digit year last).
bool is_date(std::string_view s) {
  for (char sep : {'-', '/', '.'}) {
    const std::size_t a = s.find(sep);
    if (a == std::string_view::npos) continue;
    const std::size_t b = s.find(sep, a + 1);
    if (b == std::string_view::npos) continue;
    const std::string_view f1 = s.substr(0, a);
    const std::string_view f2 = s.substr(a + 1, b - a - 1);
    const std::string_view f3 = s.substr(b + 1);
    if (!all_digits(f1) || !all_digits(f2) || !all_digits(f3)) return false;
    if (f1.size() == 4 && f2.size() <= 2 && f3.size() <= 2) {
      return in_range(f2, 1, 12) && in_range(f3, 1, 31);
    }
    if ((f3.size() == 4 || f3.size() == 2) && f1.size() <= 2 &&
        f2.size() <= 2) {
      return in_range(f1, 1, 31) && in_range(f2, 1, 12);
    }
    return false;
  }
  return false;
}

// [0-9]+-[0-9]+ exactly.
bool is_scoreline(std::string_view s) {
  const std::size_t dash = s.find('-');
  if (dash == std::string_view::npos) return false;
  return all_digits(s.substr(0, dash)) && all_digits(s.substr(dash + 1));
}

// scheme:// with an alpha-leading scheme, or a www. prefix.
bool is_url(std::string_view s) {
  const std::string lower = ascii_lower(s);
  if (lower.starts_with("www.") && lower.size() > 4) return true;
  const std::size_t sep = lower.find("://");
  if (sep == std::string::npos || sep == 0 || sep + 3 >= lower.size()) {
    return false;
  }
  if (lower[0] < 'a' || lower[0] > 'z') return false;
  for (std::size_t i = 1; i < sep; ++i) {
    const char c = lower[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '+' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

UniversalMatcher::UniversalMatcher()
    : currency_symbols_{"$", "€", "£", "¥"} {}

UniversalMatcher::UniversalMatcher(std::vector<std::string> currency_symbols)
    : currency_symbols_(std::move(currency_symbols)) {}

std::optional<UniversalTag> UniversalMatcher::match(
    std::string_view token) const {
  if (token.empty()) return std::nullopt;
  if (is_url(token)) return UniversalTag::url;
  if (is_date(token)) return UniversalTag::date;
  if (is_number(token)) return UniversalTag::number;
  if (is_scoreline(token)) return UniversalTag::scoreline;
  for (const std::string& symbol : currency_symbols_) {
    if (symbol.empty() || token.size() <= symbol.size()) continue;
    if (token.starts_with(symbol) && is_number(token.substr(symbol.size()))) {
      return UniversalTag::currency;
    }
    if (token.ends_with(symbol) &&
        is_number(token.substr(0, token.size() - symbol.size()))) {
      return UniversalTag::currency;
    }
  }
  return std::nullopt;
}

std::optional<UniversalTag> universal_match(std::string_view token) {
  static const UniversalMatcher matcher;
  return matcher.match(token);
}

SeedAlignment seed_alignments(const BINet& source_net, const BINet& target_net,
                              const SeedLexicon& lexicon,
                              const UniversalMatcher& universal) {
  const CandidateIndex index(target_net);
  SeedAlignment seeds;
  for (NodeId c = 0; c < source_net.node_count(); ++c) {
    const BurstElement& src = source_net.node(c);
    const std::set<std::string>* translations =
        lexicon.translations(src.word);
    const auto src_tag = universal.match(src.word);
    if (!translations && !src_tag) continue;

    for (NodeId e : index.query(src.period)) {
      const BurstElement& tgt = target_net.node(e);
      bool seeded = false;
      if (translations && translations->contains(ascii_lower(tgt.word))) {
        seeded = true;
      } else if (src_tag && src.word == tgt.word &&
                 universal.match(tgt.word) == src_tag) {
        seeded = true;
      }
      if (seeded) seeds.pairs.emplace_back(c, e);
    }
  }
  return seeds;
}

}  // namespace binet
