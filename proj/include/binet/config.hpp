#pragma once

#include <string>
#include <string_view>

#include "binet/eval.hpp"
#include "binet/pipeline.hpp"

namespace binet {

// Flat key=value configuration shared by every subcommand; flags override
// file values.
struct PipelineConfig {
  PipelineParams params;
  SynthConfig synth;

  std::string source_corpus;
  std::string target_corpus;
  std::string source_base_corpus;
  std::string target_base_corpus;
  std::string lexicon;
  std::string romanization;
  std::string stopwords;
  std::string currency_symbols;
  std::string output_dir = ".";

  int granularity_days = 1;
  std::size_t k = 200;
  int split_epoch = -1;  // < 0 disables split-merge
};

// Parses one key=value assignment. Unknown keys and unparseable values throw
// ConfigError.
void apply_config_value(PipelineConfig& config, std::string_view key,
                        std::string_view value);

// Loads a UTF-8 key=value file; '#' starts a comment, blank lines ignored.
PipelineConfig load_config(const std::string& path);

}  // namespace binet
