#include "binet/config.hpp"

#include <charconv>
#include <fstream>

#include "binet/text.hpp"

namespace binet {

namespace {

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + std::string(key) + ": " +
                      std::string(value));
  }
}

std::int64_t parse_int(std::string_view key, std::string_view value) {
  std::int64_t v = 0;
  const char* first = value.data();
  auto [ptr, ec] = std::from_chars(first, first + value.size(), v);
  if (ec != std::errc() || ptr != first + value.size()) {
    throw ConfigError("bad integer value for " + std::string(key) + ": " +
                      std::string(value));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean value for " + std::string(key) + ": " +
                    std::string(value));
}

}  // namespace

void apply_config_value(PipelineConfig& config, std::string_view key,
                        std::string_view value) {
  auto& params = config.params;
  auto& synth = config.synth;

  if (key == "source_corpus") config.source_corpus = value;
  else if (key == "target_corpus") config.target_corpus = value;
  else if (key == "source_base_corpus") config.source_base_corpus = value;
  else if (key == "target_base_corpus") config.target_base_corpus = value;
  else if (key == "lexicon") config.lexicon = value;
  else if (key == "romanization") config.romanization = value;
  else if (key == "stopwords") config.stopwords = value;
  else if (key == "currency_symbols") config.currency_symbols = value;
  else if (key == "output_dir") config.output_dir = value;
  else if (key == "granularity_days") {
    config.granularity_days = static_cast<int>(parse_int(key, value));
  } else if (key == "k") {
    const std::int64_t k = parse_int(key, value);
    if (k < 1) throw ConfigError("k must be at least 1");
    config.k = static_cast<std::size_t>(k);
  } else if (key == "split_epoch") {
    config.split_epoch = static_cast<int>(parse_int(key, value));
  } else if (key == "min_count") {
    params.min_count = parse_int(key, value);
  } else if (key == "min_edge_weight") {
    params.min_edge_weight = parse_int(key, value);
  } else if (key == "neighbor_norm") {
    if (value == "source") params.neighbor_norm = NeighborNorm::source;
    else if (value == "paper") params.neighbor_norm = NeighborNorm::paper;
    else throw ConfigError("neighbor_norm must be 'source' or 'paper'");
  } else if (key == "alpha") {
    params.burst.alpha = parse_double(key, value);
  } else if (key == "beta") {
    params.burst.beta = parse_double(key, value);
  } else if (key == "epsilon") {
    params.burst.epsilon = parse_double(key, value);
  } else if (key == "eta") {
    params.score.eta = parse_double(key, value);
  } else if (key == "lambda") {
    params.score.lambda = parse_double(key, value);
  } else if (key == "gamma") {
    params.score.gamma = parse_double(key, value);
  } else if (key == "delta") {
    params.score.delta = parse_double(key, value);
  } else if (key == "sn_max") {
    params.score.sn_max = parse_double(key, value);
  } else if (key == "iterations") {
    params.score.iterations = static_cast<int>(parse_int(key, value));
  } else if (key == "init_mass") {
    params.score.init_mass = parse_double(key, value);
  } else if (key == "cap") {
    params.score.cap = parse_double(key, value);
  } else if (key == "max_combinations") {
    params.score.max_combinations =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "early_stop") {
    params.score.early_stop = parse_bool(key, value);
  } else if (key == "early_stop_delta") {
    params.score.early_stop_delta = parse_double(key, value);
  } else if (key == "T") {
    synth.T = static_cast<int>(parse_int(key, value));
  } else if (key == "n_topics") {
    synth.n_topics = static_cast<int>(parse_int(key, value));
  } else if (key == "words_per_topic") {
    synth.words_per_topic = static_cast<int>(parse_int(key, value));
  } else if (key == "n_planted_pairs") {
    synth.n_planted_pairs = static_cast<int>(parse_int(key, value));
  } else if (key == "seed_fraction") {
    synth.seed_fraction = parse_double(key, value);
  } else if (key == "docs_per_epoch") {
    synth.docs_per_epoch = static_cast<int>(parse_int(key, value));
  } else if (key == "background_vocab_size") {
    synth.background_vocab_size = static_cast<int>(parse_int(key, value));
  } else if (key == "rng_seed") {
    synth.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else {
    throw ConfigError("unknown config key: " + std::string(key));
  }
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    std::string_view body(line);
    if (hash != std::string::npos) body = body.substr(0, hash);
    while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) {
      body.remove_prefix(1);
    }
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) {
      body.remove_suffix(1);
    }
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    }
    apply_config_value(config, body.substr(0, eq), body.substr(eq + 1));
  }
  return config;
}

}  // namespace binet
