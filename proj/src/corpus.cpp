#include "binet/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "binet/text.hpp"

namespace binet {

std::size_t Stream::doc_count() const {
  std::size_t n = 0;
  for (const auto& bucket : docs_by_epoch) n += bucket.size();
  return n;
}

std::int64_t Stream::token_count() const {
  std::int64_t n = 0;
  for (const auto& bucket : docs_by_epoch) {
    for (const auto& doc : bucket) n += static_cast<std::int64_t>(doc.tokens.size());
  }
  return n;
}

// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 +
         static_cast<std::int64_t>(doe) - 719468;
}

std::string date_string(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  const std::int64_t year = y + (m <= 2);

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u",
                static_cast<long long>(year), m, d);
  return buf;
}

bool parse_date(std::string_view text, std::int64_t* days) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  auto read = [&](std::size_t pos, std::size_t len, int* out) {
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, *out);
    return ec == std::errc() && ptr == first + len;
  };
  int y = 0, m = 0, d = 0;
  if (!read(0, 4, &y) || !read(5, 2, &m) || !read(8, 2, &d)) return false;
  if (m < 1 || m > 12 || d < 1 || d > 31) return false;
  *days = days_from_civil(y, m, d);
  return true;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path);
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.insert(line);
  }
  return out;
}

Stream ingest_stream(const std::string& path, int granularity_days,
                     const StopwordSet* stopwords) {
  if (granularity_days < 1) {
    throw ConfigError("granularity must be at least one day");
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path);

  struct Record {
    std::string doc_id;
    std::int64_t day;
    std::vector<std::string> tokens;
  };
  std::vector<Record> records;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(path, line_no, "expected doc_id<TAB>date<TAB>tokens");
    }
    if (fields[0].empty()) throw ParseError(path, line_no, "empty doc_id");

    std::int64_t day = 0;
    if (!parse_date(fields[1], &day)) {
      throw ParseError(path, line_no,
                       "unparseable date (want YYYY-MM-DD): " +
                           std::string(fields[1]));
    }

    const auto raw_tokens = split_whitespace(fields[2]);
    if (raw_tokens.empty()) {
      throw ParseError(path, line_no, "record has no tokens");
    }
    Record rec;
    rec.doc_id = std::string(fields[0]);
    rec.day = day;
    for (std::string_view raw : raw_tokens) {
      std::string token = unescape_token(raw);
      if (stopwords && stopwords->contains(token)) continue;
      rec.tokens.push_back(std::move(token));
    }
    if (rec.tokens.empty()) continue;  // all tokens were stopwords
    records.push_back(std::move(rec));
  }

  if (records.empty()) throw Error("empty stream: " + path);

  std::int64_t min_day = records.front().day;
  std::int64_t max_day = records.front().day;
  for (const Record& rec : records) {
    min_day = std::min(min_day, rec.day);
    max_day = std::max(max_day, rec.day);
  }

  Stream stream;
  stream.granularity_days = granularity_days;
  stream.epochs =
      static_cast<int>((max_day - min_day) / granularity_days) + 1;
  stream.docs_by_epoch.resize(stream.epochs);
  for (Record& rec : records) {
    const int epoch = static_cast<int>((rec.day - min_day) / granularity_days);
    stream.docs_by_epoch[epoch].push_back(
        Document{std::move(rec.doc_id), epoch, std::move(rec.tokens)});
  }
  return stream;
}

StreamStats::StreamStats(const Stream& stream)
    : epochs_(stream.epochs), epoch_tokens_(stream.epochs, 0) {
  for (int tau = 0; tau < stream.epochs; ++tau) {
    for (const Document& doc : stream.docs_by_epoch[tau]) {
      epoch_tokens_[tau] += static_cast<std::int64_t>(doc.tokens.size());
      for (const std::string& token : doc.tokens) {
        PerWord& w = words_[token];
        ++w.count;
        if (!w.by_epoch.empty() && w.by_epoch.back().first == tau) {
          ++w.by_epoch.back().second;
        } else {
          w.by_epoch.emplace_back(tau, 1);
        }
      }
    }
  }
  for (std::int64_t n : epoch_tokens_) total_tokens_ += n;
}

std::int64_t StreamStats::count_of(const std::string& word) const {
  const auto it = words_.find(word);
  return it == words_.end() ? 0 : it->second.count;
}

WordStats StreamStats::word_stats(const std::string& word,
                                  const StreamStats* base) const {
  const auto it = words_.find(word);
  const std::int64_t own_count = it == words_.end() ? 0 : it->second.count;
  const std::int64_t base_count = base ? base->count_of(word) : 0;
  if (own_count == 0 && base_count == 0) {
    throw DomainError("unknown word: " + word);
  }

  WordStats stats;
  stats.word = word;
  stats.count = own_count;
  stats.p.assign(epochs_, 0.0);
  if (it != words_.end()) {
    for (const auto& [tau, n] : it->second.by_epoch) {
      if (epoch_tokens_[tau] > 0) {
        stats.p[tau] =
            static_cast<double>(n) / static_cast<double>(epoch_tokens_[tau]);
      }
    }
  }

  // Base probability from the larger stream when it knows the word, else
  // from this stream.
  if (base && base_count > 0) {
    stats.q0 = static_cast<double>(base_count) /
               static_cast<double>(base->total_tokens());
  } else {
    stats.q0 = static_cast<double>(own_count) /
               static_cast<double>(total_tokens_);
  }
  return stats;
}

std::vector<std::string> StreamStats::vocabulary(std::int64_t min_count) const {
  if (min_count < 1) throw ConfigError("min_count must be at least 1");
  std::vector<std::pair<std::int64_t, const std::string*>> picked;
  for (const auto& [word, stats] : words_) {
    if (stats.count >= min_count) picked.emplace_back(stats.count, &word);
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return *a.second < *b.second;
            });
  std::vector<std::string> out;
  out.reserve(picked.size());
  for (const auto& [count, word] : picked) out.push_back(*word);
  return out;
}

WordStats word_stats(const Stream& stream, const std::string& word,
                     const Stream* base_stream) {
  StreamStats stats(stream);
  if (!base_stream) return stats.word_stats(word);
  StreamStats base(*base_stream);
  return stats.word_stats(word, &base);
}

std::vector<std::string> vocabulary(const Stream& stream,
                                    std::int64_t min_count) {
  return StreamStats(stream).vocabulary(min_count);
}

}  // namespace binet
