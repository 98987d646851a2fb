#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "binet/errors.hpp"

namespace binet {

struct Document {
  std::string doc_id;
  int epoch = 0;  // index into the owning stream's buckets
  std::vector<std::string> tokens;

  bool operator==(const Document&) const = default;
};

// A timestamped document collection bucketed into T consecutive epochs.
// Immutable after construction; safe to share across threads.
struct Stream {
  int epochs = 0;  // T
  int granularity_days = 1;
  std::vector<std::vector<Document>> docs_by_epoch;

  std::size_t doc_count() const;
  std::int64_t token_count() const;

  bool operator==(const Stream&) const = default;
};

using StopwordSet = std::unordered_set<std::string>;

StopwordSet load_stopwords(const std::string& path);

// Reads the line-delimited corpus format: doc_id<TAB>YYYY-MM-DD<TAB>tokens.
// Dates map to consecutive epoch indices from the earliest date present;
// epochs with no documents stay as empty buckets. Documents that lose every
// token to the stopword filter are dropped.
Stream ingest_stream(const std::string& path, int granularity_days = 1,
                     const StopwordSet* stopwords = nullptr);

struct WordStats {
  std::string word;
  std::vector<double> p;  // per-epoch probability, length T
  double q0 = 0.0;        // base probability
  std::int64_t count = 0; // global occurrences in the stream
};

// One-pass index over a stream; the bulk backend for word_stats/vocabulary.
class StreamStats {
 public:
  explicit StreamStats(const Stream& stream);

  int epochs() const { return epochs_; }
  std::int64_t total_tokens() const { return total_tokens_; }
  std::int64_t tokens_at(int epoch) const { return epoch_tokens_.at(epoch); }
  std::int64_t count_of(const std::string& word) const;

  // p from this stream; q0 from `base` when given and the word occurs there,
  // else from this stream. Throws DomainError("unknown word") if the word
  // occurs in neither.
  WordStats word_stats(const std::string& word,
                       const StreamStats* base = nullptr) const;

  // Tokens with count >= min_count, ordered by descending count then
  // lexicographic.
  std::vector<std::string> vocabulary(std::int64_t min_count) const;

 private:
  struct PerWord {
    std::int64_t count = 0;
    std::vector<std::pair<int, std::int64_t>> by_epoch;  // sparse, ascending
  };

  int epochs_ = 0;
  std::int64_t total_tokens_ = 0;
  std::vector<std::int64_t> epoch_tokens_;
  std::unordered_map<std::string, PerWord> words_;
};

WordStats word_stats(const Stream& stream, const std::string& word,
                     const Stream* base_stream = nullptr);

std::vector<std::string> vocabulary(const Stream& stream,
                                    std::int64_t min_count);

// Civil-date helpers shared by ingestion and the synthetic generator.
std::int64_t days_from_civil(int year, int month, int day);
std::string date_string(std::int64_t days_since_epoch);
bool parse_date(std::string_view text, std::int64_t* days_since_epoch);

}  // namespace binet
