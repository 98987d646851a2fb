#include "binet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <unordered_set>

#include "binet/text.hpp"

namespace binet {

bool GoldTable::contains(const std::string& source,
                         const std::string& target) const {
  const auto it = entries.find(source);
  return it != entries.end() && it->second.contains(target);
}

void SynthConfig::validate() const {
  if (T < 1 || n_topics < 1 || words_per_topic < 1 || n_planted_pairs < 1 ||
      docs_per_epoch < 1 || background_vocab_size < 1) {
    throw ConfigError("synthetic config counts must be at least 1");
  }
  if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0)) {
    throw ConfigError("seed_fraction must be in [0, 1]");
  }
  if (n_planted_pairs > words_per_topic) {
    throw ConfigError("planted pairs exceed topic capacity");
  }
  if (T / n_topics < 15) {
    throw ConfigError("epochs per topic too small; need T >= 15 * n_topics");
  }
}

namespace {

// Deterministic across platforms, unlike <random> distributions.
struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi].
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool chance(double p) { return uniform() < p; }
};

std::string make_word(Rng& rng, char prefix, int length,
                      std::unordered_set<std::string>& used) {
  static constexpr char letters[] = "abcdefghijklmnopqrstuvwxyz";
  while (true) {
    std::string word(1, prefix);
    for (int i = 0; i < length; ++i) word.push_back(letters[rng.range(0, 25)]);
    if (used.insert(word).second) return word;
  }
}

// Substitutes `edits` distinct positions with a different letter.
std::string mangle(const std::string& word, int edits, Rng& rng) {
  std::string out = word;
  if (edits <= 0 || out.empty()) return out;
  std::vector<int> positions(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) positions[i] = static_cast<int>(i);
  for (std::size_t i = positions.size(); i > 1; --i) {
    std::swap(positions[i - 1], positions[rng.next() % i]);
  }
  const int n = std::min<int>(edits, static_cast<int>(out.size()));
  for (int k = 0; k < n; ++k) {
    const int pos = positions[k];
    char replacement = out[pos];
    while (replacement == out[pos]) {
      replacement = static_cast<char>('a' + rng.range(0, 25));
    }
    out[pos] = replacement;
  }
  return out;
}

struct PlantedPair {
  std::string source;
  std::string target;
  int topic;
  int subgroup;       // 0 or 1; docs sample mostly within one subgroup
  BurstPeriod window; // same in both streams
  bool seeded;
  int global_index;   // stable across seed fractions
};

struct NoiseWord {
  std::string word;
  int topic;
  int subgroup;
  BurstPeriod window;
};

}  // namespace

SynthDataset generate_coordinated(const SynthConfig& config) {
  config.validate();
  Rng rng{config.rng_seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull};

  std::unordered_set<std::string> used_words;
  const int seg_len = config.T / config.n_topics;

  // Topic windows sit strictly inside disjoint segments, so no episode can
  // straddle a segment boundary.
  std::vector<BurstPeriod> topic_windows;
  for (int k = 0; k < config.n_topics; ++k) {
    const int seg_start = k * seg_len;
    const int win_len = std::min(seg_len - 3, 12 + rng.range(0, 2));
    const int slack = seg_len - win_len - 2;
    const int start = seg_start + 1 + rng.range(0, std::max(slack - 1, 0));
    topic_windows.push_back(BurstPeriod{start, start + win_len - 1});
  }

  // Planted pairs. Each pair gets its own jittered sub-window, identical on
  // both sides, and the jitter grid keeps windows distinct within a topic:
  // a perfect co-burst (Sb = 0.5) then singles out the true counterpart.
  // Noise words use start offsets past the pair grid, with different shapes
  // per side, so no noise word perfectly co-bursts with anything.
  std::vector<PlantedPair> pairs;
  std::vector<NoiseWord> source_noise, target_noise;
  const int n_noise = config.words_per_topic - config.n_planted_pairs;
  for (int k = 0; k < config.n_topics; ++k) {
    const BurstPeriod base = topic_windows[k];
    for (int i = 0; i < config.n_planted_pairs; ++i) {
      PlantedPair pair;
      pair.source = make_word(rng, 'z', 6, used_words);
      pair.target = make_word(rng, 'e', 6, used_words);
      pair.topic = k;
      pair.subgroup = i < config.n_planted_pairs / 2 ? 0 : 1;
      // One deliberate window collision per topic (slots 0 and 4) keeps the
      // co-burst clue ambiguous on its own; those slots always carry a
      // pronunciation or translation signal, so the combined score still
      // separates them.
      const int end_off = i % 8 == 4 ? 0 : (i / 4) % 2;
      pair.window = BurstPeriod{base.start + i % 4, base.end - end_off};
      pair.seeded = false;
      pair.global_index = static_cast<int>(pairs.size());
      pairs.push_back(std::move(pair));
    }
    for (int j = 0; j < n_noise; ++j) {
      // End offsets 2 (source) and 3 (target) keep every noise window off
      // the pair grid and off the other side's noise grid.
      const BurstPeriod src_w{base.start + j % 4, base.end - 2};
      const BurstPeriod tgt_w{base.start + j % 4, base.end - 3};
      source_noise.push_back(
          NoiseWord{make_word(rng, 'x', 6, used_words), k, j % 2, src_w});
      target_noise.push_back(
          NoiseWord{make_word(rng, 'n', 6, used_words), k, j % 2, tgt_w});
    }
  }

  // Seed selection: a fixed per-topic shuffle, alternating subgroups, with
  // the chosen fraction taken as a prefix. Larger fractions therefore keep
  // every smaller fraction's seeds.
  for (int k = 0; k < config.n_topics; ++k) {
    std::vector<int> group[2];
    for (int i = 0; i < config.n_planted_pairs; ++i) {
      const int idx = k * config.n_planted_pairs + i;
      group[pairs[idx].subgroup].push_back(idx);
    }
    for (auto& g : group) {
      for (std::size_t i = g.size(); i > 1; --i) {
        std::swap(g[i - 1], g[rng.next() % i]);
      }
    }
    std::vector<int> order;
    for (std::size_t i = 0; i < std::max(group[0].size(), group[1].size());
         ++i) {
      if (i < group[0].size()) order.push_back(group[0][i]);
      if (i < group[1].size()) order.push_back(group[1][i]);
    }
    int n_seeds = static_cast<int>(
        std::lround(config.seed_fraction * config.n_planted_pairs));
    if (config.seed_fraction > 0.0) n_seeds = std::max(n_seeds, 1);
    n_seeds = std::min(n_seeds, config.n_planted_pairs);
    for (int s = 0; s < n_seeds; ++s) pairs[order[s]].seeded = true;
  }

  // Background vocabulary, shared base probability mass per stream.
  std::vector<std::string> source_bg, target_bg;
  for (int i = 0; i < config.background_vocab_size; ++i) {
    source_bg.push_back(make_word(rng, 'b', 6, used_words));
    target_bg.push_back(make_word(rng, 'g', 6, used_words));
  }

  // Per-epoch topic lookup (at most one topic active per epoch).
  std::vector<int> topic_at(config.T, -1);
  for (int k = 0; k < config.n_topics; ++k) {
    for (int tau = topic_windows[k].start; tau <= topic_windows[k].end; ++tau) {
      topic_at[tau] = k;
    }
  }

  // Occurrence rates as document fractions. Each active word lands in a
  // fixed number of documents per epoch (rng picks which ones), so p_tau is
  // stable and burst detection recovers the planted windows even on half
  // streams where q0 doubles.
  const double p_main = 0.65, p_cross = 0.10;
  const double p_noise_main = 0.58, p_noise_cross = 0.08;

  auto build_stream = [&](bool source_side) {
    Stream stream;
    stream.epochs = config.T;
    stream.docs_by_epoch.resize(config.T);
    const auto& bg = source_side ? source_bg : target_bg;
    const char* id_prefix = source_side ? "s" : "t";

    std::vector<int> group_docs[2];
    for (int d = 0; d < config.docs_per_epoch; ++d) {
      group_docs[d % 2].push_back(d);
    }
    auto pick_docs = [&](int subgroup, double fraction,
                         std::vector<int>& out) {
      auto& docs = group_docs[subgroup];
      const int n = std::min<int>(
          static_cast<int>(docs.size()),
          static_cast<int>(std::lround(fraction * docs.size())));
      for (std::size_t i = docs.size(); i > 1; --i) {
        std::swap(docs[i - 1], docs[rng.next() % i]);
      }
      out.insert(out.end(), docs.begin(), docs.begin() + n);
    };

    for (int tau = 0; tau < config.T; ++tau) {
      const int topic = topic_at[tau];
      auto& bucket = stream.docs_by_epoch[tau];
      for (int d = 0; d < config.docs_per_epoch; ++d) {
        Document doc;
        doc.doc_id = id_prefix + std::to_string(tau) + "_" + std::to_string(d);
        doc.epoch = tau;
        const int n_bg = 5 + rng.range(0, 2);
        for (int b = 0; b < n_bg; ++b) {
          doc.tokens.push_back(bg[rng.next() % bg.size()]);
        }
        bucket.push_back(std::move(doc));
      }
      if (topic < 0) continue;

      std::vector<int> chosen;
      auto place = [&](const std::string& word, int subgroup, double main,
                       double cross) {
        chosen.clear();
        pick_docs(subgroup, main, chosen);
        pick_docs(1 - subgroup, cross, chosen);
        for (int d : chosen) bucket[d].tokens.push_back(word);
      };
      for (int i = 0; i < config.n_planted_pairs; ++i) {
        const PlantedPair& pair = pairs[topic * config.n_planted_pairs + i];
        if (!pair.window.contains(tau)) continue;
        place(source_side ? pair.source : pair.target, pair.subgroup, p_main,
              p_cross);
      }
      const auto& noise = source_side ? source_noise : target_noise;
      for (int j = 0; j < n_noise; ++j) {
        const NoiseWord& w = noise[topic * n_noise + j];
        if (!w.window.contains(tau)) continue;
        place(w.word, w.subgroup, p_noise_main, p_noise_cross);
      }
    }
    return stream;
  };

  SynthDataset data;
  data.source = build_stream(true);
  data.target = build_stream(false);

  // Lexicon: seed pairs verbatim, plus near-variant entries for half of the
  // planted pairs so the translation clue is informative but not complete.
  for (const PlantedPair& pair : pairs) {
    if (pair.seeded) {
      data.lexicon.add(pair.source, pair.target);
    } else {
      data.gold.entries[pair.source].insert(pair.target);
    }
    if (pair.global_index % 2 == 0) {
      std::string variant = pair.source.substr(0, pair.source.size() - 1);
      variant.push_back('q');
      data.lexicon.add(variant, pair.target);
    }
  }

  // Romanization for non-seed source words, with a per-pair edit budget:
  // most are close to the target, one bucket in five lands beyond the
  // useful range of the pronunciation clue.
  for (const PlantedPair& pair : pairs) {
    if (pair.seeded) continue;
    const int len = static_cast<int>(pair.target.size());
    int edits = 0;
    switch (pair.global_index % 5) {
      case 0: case 1: case 2: edits = 1; break;
      case 3: edits = std::max(2, static_cast<int>(std::lround(0.32 * len)));
              break;
      default: edits = static_cast<int>(std::lround(0.58 * len)); break;
    }
    data.romanization.add(pair.source, mangle(pair.target, edits, rng));
  }

  // Self-check: every non-seed planted pair must share a document (on both
  // sides) with some seeded pair of its topic, so the neighbor clue has an
  // anchor to propagate from.
  bool any_seeds = false;
  for (const PlantedPair& pair : pairs) any_seeds |= pair.seeded;
  if (any_seeds) {
    auto covered = [&](const Stream& stream, bool source_side) {
      std::map<std::string, const PlantedPair*> by_word;
      for (const PlantedPair& pair : pairs) {
        by_word.emplace(source_side ? pair.source : pair.target, &pair);
      }
      std::unordered_set<int> ok;  // global indices with a seeded co-doc
      std::vector<const PlantedPair*> in_doc;
      for (const auto& bucket : stream.docs_by_epoch) {
        for (const Document& doc : bucket) {
          in_doc.clear();
          for (const std::string& token : doc.tokens) {
            const auto it = by_word.find(token);
            if (it != by_word.end()) in_doc.push_back(it->second);
          }
          for (const PlantedPair* a : in_doc) {
            if (a->seeded) continue;
            for (const PlantedPair* b : in_doc) {
              if (b->seeded && b->topic == a->topic) {
                ok.insert(a->global_index);
                break;
              }
            }
          }
        }
      }
      return ok;
    };
    const auto src_ok = covered(data.source, true);
    const auto tgt_ok = covered(data.target, false);
    for (const PlantedPair& pair : pairs) {
      if (pair.seeded) continue;
      if (!src_ok.contains(pair.global_index) ||
          !tgt_ok.contains(pair.global_index)) {
        throw DomainError(
            "generator self-check failed: planted pair without a seeded "
            "neighbor in its topic: " + pair.source);
      }
    }
  }

  return data;
}

double topk_accuracy(const AlignmentResult& result, const GoldTable& gold,
                     std::size_t k) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (result.pairs.empty()) throw DomainError("empty alignment result");
  const std::size_t n = std::min(k, result.pairs.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (gold.contains(result.pairs[i].source.word,
                      result.pairs[i].target.word)) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

namespace {

Stream slice_stream(const Stream& stream, int begin, int end) {
  Stream out;
  out.epochs = end - begin;
  out.granularity_days = stream.granularity_days;
  out.docs_by_epoch.resize(out.epochs);
  for (int tau = begin; tau < end; ++tau) {
    for (Document doc : stream.docs_by_epoch[tau]) {
      doc.epoch = tau - begin;
      out.docs_by_epoch[tau - begin].push_back(std::move(doc));
    }
  }
  return out;
}

}  // namespace

AlignmentResult split_merge_decipher(const Stream& source_stream,
                                     const Stream& target_stream,
                                     int split_epoch,
                                     const SeedLexicon& lexicon,
                                     const RomanizationTable& roman,
                                     const PipelineParams& params,
                                     const UniversalMatcher& universal,
                                     std::vector<SplitHalfReport>* reports) {
  if (source_stream.epochs != target_stream.epochs) {
    throw DomainError("streams must cover the same epochs");
  }
  if (split_epoch <= 0 || split_epoch >= source_stream.epochs) {
    throw DomainError("split epoch must lie strictly inside the stream");
  }

  auto run_half = [&](int begin, int end, SplitHalfReport* half_report) {
    const Stream src = slice_stream(source_stream, begin, end);
    const Stream tgt = slice_stream(target_stream, begin, end);
    DecipherRun run =
        run_decipherment(src, tgt, lexicon, roman, params, universal);
    if (half_report) {
      *half_report = SplitHalfReport{begin,
                                     end,
                                     run.source.net.node_count(),
                                     run.source.net.edge_count(),
                                     run.source.documents,
                                     run.target.net.node_count(),
                                     run.target.net.edge_count(),
                                     run.target.documents,
                                     run.report.seed_pairs,
                                     run.report.candidate_pairs};
    }
    AlignmentResult result =
        extract_pairs(run.table, run.source.net, run.target.net,
                      static_cast<std::size_t>(-1));
    // Report periods in whole-stream epochs.
    for (AlignedPair& pair : result.pairs) {
      pair.source.period.start += begin;
      pair.source.period.end += begin;
      pair.target.period.start += begin;
      pair.target.period.end += begin;
    }
    return result;
  };

  if (reports) reports->assign(2, SplitHalfReport{});

  // The two halves are independent; run them concurrently.
  auto first_future =
      std::async(std::launch::async, run_half, 0, split_epoch,
                 reports ? &(*reports)[0] : nullptr);
  AlignmentResult second = run_half(split_epoch, source_stream.epochs,
                                    reports ? &(*reports)[1] : nullptr);
  AlignmentResult first = first_future.get();

  // Merge: dedupe on (source word, target word), keeping the best score.
  std::map<std::pair<std::string, std::string>, AlignedPair> merged;
  for (const AlignmentResult* half : {&first, &second}) {
    for (const AlignedPair& pair : half->pairs) {
      const auto key = std::pair{pair.source.word, pair.target.word};
      const auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, pair);
      } else if (pair.score > it->second.score) {
        it->second = pair;
      }
    }
  }
  std::map<std::string, WordTranslation> merged_words;
  for (const AlignmentResult* half : {&first, &second}) {
    for (const WordTranslation& wt : half->word_translations) {
      const auto it = merged_words.find(wt.source_word);
      if (it == merged_words.end()) {
        merged_words.emplace(wt.source_word, wt);
      } else if (wt.score > it->second.score) {
        it->second = wt;
      }
    }
  }

  AlignmentResult result;
  for (const auto& [key, pair] : merged) result.pairs.push_back(pair);
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const AlignedPair& a, const AlignedPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.source.word != b.source.word) {
                return a.source.word < b.source.word;
              }
              if (a.source.period != b.source.period) {
                return a.source.period < b.source.period;
              }
              if (a.target.word != b.target.word) {
                return a.target.word < b.target.word;
              }
              return a.target.period < b.target.period;
            });
  for (const auto& [word, wt] : merged_words) {
    result.word_translations.push_back(wt);
  }
  std::sort(result.word_translations.begin(), result.word_translations.end(),
            [](const WordTranslation& a, const WordTranslation& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.source_word != b.source_word) {
                return a.source_word < b.source_word;
              }
              return a.target_word < b.target_word;
            });
  return result;
}

void write_corpus(const Stream& stream, const std::string& path,
                  std::int64_t base_day) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file: " + path);
  for (int tau = 0; tau < stream.epochs; ++tau) {
    const std::string date =
        date_string(base_day + static_cast<std::int64_t>(tau) *
                                   stream.granularity_days);
    for (const Document& doc : stream.docs_by_epoch[tau]) {
      out << doc.doc_id << '\t' << date << '\t';
      for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        if (i) out << ' ';
        out << escape_token(doc.tokens[i]);
      }
      out << '\n';
    }
  }
}

void write_lexicon(const SeedLexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write lexicon file: " + path);
  for (const auto& [source, targets] : lexicon.entries()) {
    for (const std::string& target : targets) {
      out << source << '\t' << target << '\n';
    }
  }
}

void write_romanization(const RomanizationTable& table,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write romanization file: " + path);
  std::map<std::string, std::string> sorted(table.entries().begin(),
                                            table.entries().end());
  for (const auto& [key, value] : sorted) {
    out << key << '\t' << value << '\n';
  }
}

void write_gold(const GoldTable& gold, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write gold file: " + path);
  for (const auto& [source, targets] : gold.entries) {
    for (const std::string& target : targets) {
      out << source << '\t' << target << '\n';
    }
  }
}

GoldTable load_gold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold file: " + path);
  GoldTable gold;
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
    gold.entries[std::string(fields[0])].insert(std::string(fields[1]));
  }
  return gold;
}

}  // namespace binet
