#include "binet/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "binet/config.hpp"
#include "binet/eval.hpp"
#include "binet/text.hpp"

namespace binet {

namespace {

namespace fs = std::filesystem;

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;  // key=value overrides
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path,
                  "key=value configuration file");
  cmd->add_option("--set", opts->sets,
                  "override a config key (key=value, repeatable)");
}

PipelineConfig resolve_config(const CommonOpts& opts) {
  PipelineConfig config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  for (const std::string& kv : opts.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got: " + kv);
    }
    apply_config_value(config, std::string_view(kv).substr(0, eq),
                       std::string_view(kv).substr(eq + 1));
  }
  return config;
}

UniversalMatcher make_universal(const PipelineConfig& config) {
  if (config.currency_symbols.empty()) return UniversalMatcher();
  std::ifstream in(config.currency_symbols);
  if (!in) {
    throw Error("cannot open currency symbol file: " +
                config.currency_symbols);
  }
  std::vector<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) symbols.push_back(line);
  }
  return UniversalMatcher(std::move(symbols));
}

Stream load_corpus(const PipelineConfig& config, const std::string& path) {
  std::optional<StopwordSet> stopwords;
  if (!config.stopwords.empty()) {
    stopwords = load_stopwords(config.stopwords);
  }
  return ingest_stream(path, config.granularity_days,
                       stopwords ? &*stopwords : nullptr);
}

fs::path prepare_output_dir(const PipelineConfig& config) {
  fs::path dir = config.output_dir.empty() ? "." : config.output_dir;
  fs::create_directories(dir);
  return dir;
}

int cmd_detect_bursts(const PipelineConfig& config) {
  if (config.source_corpus.empty()) {
    throw ConfigError("detect-bursts needs source_corpus (or --corpus)");
  }
  const Stream stream = load_corpus(config, config.source_corpus);
  std::optional<Stream> base;
  if (!config.source_base_corpus.empty()) {
    base = load_corpus(config, config.source_base_corpus);
  }
  const StreamAnalysis analysis =
      analyze_stream(stream, config.params, base ? &*base : nullptr);

  const fs::path out_path = prepare_output_dir(config) / "bursts.tsv";
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path.string());
  std::size_t n_periods = 0;
  for (const auto& [word, periods] : analysis.periods) {
    for (const BurstPeriod& period : periods) {
      out << word << '\t' << period.start << '\t' << period.end << '\n';
      ++n_periods;
    }
  }
  std::cout << "epochs=" << analysis.epochs
            << " documents=" << analysis.documents
            << " bursty_words=" << analysis.periods.size()
            << " burst_periods=" << n_periods << '\n'
            << "wrote " << out_path.string() << '\n';
  return 0;
}

int cmd_build_binet(const PipelineConfig& config) {
  if (config.source_corpus.empty()) {
    throw ConfigError("build-binet needs source_corpus (or --corpus)");
  }
  const Stream stream = load_corpus(config, config.source_corpus);
  std::optional<Stream> base;
  if (!config.source_base_corpus.empty()) {
    base = load_corpus(config, config.source_base_corpus);
  }
  const StreamAnalysis analysis =
      analyze_stream(stream, config.params, base ? &*base : nullptr);

  const fs::path dir = prepare_output_dir(config);
  const fs::path nodes_path = dir / "nodes.tsv";
  const fs::path edges_path = dir / "edges.tsv";
  dump_binet(analysis.net, nodes_path.string(), edges_path.string());
  std::cout << "nodes=" << analysis.net.node_count()
            << " edges=" << analysis.net.edge_count()
            << " documents=" << analysis.documents << '\n'
            << "wrote " << nodes_path.string() << " and "
            << edges_path.string() << '\n';
  return 0;
}

void write_pairs(const AlignmentResult& result, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const AlignedPair& pair : result.pairs) {
    out << pair.source.word << '\t' << pair.source.period.start << '\t'
        << pair.source.period.end << '\t' << pair.target.word << '\t'
        << pair.target.period.start << '\t' << pair.target.period.end << '\t'
        << format_score(pair.score) << '\n';
  }
}

void write_word_translations(const AlignmentResult& result,
                             const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const WordTranslation& wt : result.word_translations) {
    out << wt.source_word << '\t' << wt.target_word << '\t'
        << format_score(wt.score) << '\n';
  }
}

AlignmentResult load_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pairs file: " + path);
  AlignmentResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 7) {
      throw ParseError(path, line_no, "expected 7 tab-separated fields");
    }
    try {
      AlignedPair pair;
      pair.source.word = std::string(fields[0]);
      pair.source.period = {std::stoi(std::string(fields[1])),
                            std::stoi(std::string(fields[2]))};
      pair.target.word = std::string(fields[3]);
      pair.target.period = {std::stoi(std::string(fields[4])),
                            std::stoi(std::string(fields[5]))};
      pair.score = std::stod(std::string(fields[6]));
      result.pairs.push_back(std::move(pair));
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "bad numeric field");
    }
  }
  std::stable_sort(result.pairs.begin(), result.pairs.end(),
                   [](const AlignedPair& a, const AlignedPair& b) {
                     return a.score > b.score;
                   });
  return result;
}

int cmd_decipher(const PipelineConfig& config) {
  if (config.source_corpus.empty() || config.target_corpus.empty()) {
    throw ConfigError("decipher needs source_corpus and target_corpus");
  }
  const auto t0 = std::chrono::steady_clock::now();

  const Stream source = load_corpus(config, config.source_corpus);
  const Stream target = load_corpus(config, config.target_corpus);
  std::optional<Stream> source_base, target_base;
  if (!config.source_base_corpus.empty()) {
    source_base = load_corpus(config, config.source_base_corpus);
  }
  if (!config.target_base_corpus.empty()) {
    target_base = load_corpus(config, config.target_base_corpus);
  }
  SeedLexicon lexicon;
  if (!config.lexicon.empty()) lexicon = load_lexicon(config.lexicon);
  RomanizationTable roman;
  if (!config.romanization.empty()) {
    roman = load_romanization(config.romanization);
  }
  const UniversalMatcher universal = make_universal(config);

  const fs::path dir = prepare_output_dir(config);
  const fs::path pairs_path = dir / "pairs.tsv";
  const fs::path words_path = dir / "word_translations.tsv";
  const fs::path report_path = dir / "report.txt";
  std::ofstream report(report_path);
  if (!report) throw Error("cannot write " + report_path.string());

  AlignmentResult result;
  if (config.split_epoch >= 0) {
    std::vector<SplitHalfReport> halves;
    result = split_merge_decipher(source, target, config.split_epoch, lexicon,
                                  roman, config.params, universal, &halves);
    if (result.pairs.size() > config.k) result.pairs.resize(config.k);
    report << "mode=split_merge\nsplit_epoch=" << config.split_epoch << '\n';
    for (const SplitHalfReport& half : halves) {
      report << "half=" << half.begin << ".." << half.end
             << " source_nodes=" << half.source_nodes
             << " source_edges=" << half.source_edges
             << " source_docs=" << half.source_docs
             << " target_nodes=" << half.target_nodes
             << " target_edges=" << half.target_edges
             << " target_docs=" << half.target_docs
             << " seed_pairs=" << half.seed_pairs
             << " candidate_pairs=" << half.candidate_pairs << '\n';
    }
  } else {
    DecipherRun run = run_decipherment(
        source, target, lexicon, roman, config.params, universal,
        source_base ? &*source_base : nullptr,
        target_base ? &*target_base : nullptr);
    result = extract_pairs(run.table, run.source.net, run.target.net,
                           config.k);
    report << "mode=full\n";
    report << "source_nodes=" << run.source.net.node_count()
           << "\nsource_edges=" << run.source.net.edge_count()
           << "\nsource_docs=" << run.source.documents << '\n';
    report << "target_nodes=" << run.target.net.node_count()
           << "\ntarget_edges=" << run.target.net.edge_count()
           << "\ntarget_docs=" << run.target.documents << '\n';
    report << "seed_pairs=" << run.report.seed_pairs
           << "\ncandidate_pairs=" << run.report.candidate_pairs
           << "\nrounds=" << run.report.rounds_run << '\n';
    report << "iteration_deltas=";
    for (std::size_t i = 0; i < run.report.round_max_delta.size(); ++i) {
      if (i) report << ',';
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.9g", run.report.round_max_delta[i]);
      report << buf;
    }
    report << '\n';
  }

  write_pairs(result, pairs_path);
  write_word_translations(result, words_path);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report << "pairs=" << result.pairs.size()
         << "\nword_translations=" << result.word_translations.size() << '\n';
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  report << "wall_time_s=" << buf << '\n';

  std::cout << "pairs=" << result.pairs.size() << " wall_time_s=" << buf
            << '\n'
            << "wrote " << pairs_path.string() << ", " << words_path.string()
            << ", " << report_path.string() << '\n';
  return 0;
}

int cmd_generate(const PipelineConfig& config) {
  const SynthDataset data = generate_coordinated(config.synth);
  const fs::path dir = prepare_output_dir(config);
  write_corpus(data.source, (dir / "source_corpus.tsv").string());
  write_corpus(data.target, (dir / "target_corpus.tsv").string());
  write_lexicon(data.lexicon, (dir / "lexicon.tsv").string());
  write_romanization(data.romanization, (dir / "romanization.tsv").string());
  write_gold(data.gold, (dir / "gold.tsv").string());
  std::cout << "self-check passed: every non-seed pair has a seeded topic "
               "neighbor\n"
            << "documents=" << data.source.doc_count() << "+"
            << data.target.doc_count()
            << " lexicon_entries=" << data.lexicon.entry_count()
            << " gold_words=" << data.gold.size() << '\n'
            << "wrote dataset under " << dir.string() << '\n';
  return 0;
}

int cmd_eval(const std::string& result_path, const std::string& gold_path,
             std::vector<std::size_t> ks) {
  const AlignmentResult result = load_pairs(result_path);
  const GoldTable gold = load_gold(gold_path);
  if (ks.empty()) ks.push_back(result.pairs.size());
  std::sort(ks.begin(), ks.end());
  std::cout << "k\taccuracy\n";
  for (std::size_t k : ks) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", topk_accuracy(result, gold, k));
    std::cout << k << '\t' << buf << '\n';
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Burst information network construction and decipherment"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string corpus_flag, source_flag, target_flag, lexicon_flag, roman_flag,
      stopwords_flag, output_flag;
  std::optional<int> split_flag, iterations_flag;
  std::optional<std::size_t> k_flag;
  std::optional<std::uint64_t> rng_seed_flag;
  bool disable_sp = false, disable_st = false, disable_sn = false,
       disable_sb = false;

  auto add_io_flags = [&](CLI::App* cmd, bool two_streams) {
    add_common(cmd, &common);
    cmd->add_option("--output-dir", output_flag, "output directory");
    cmd->add_option("--stopwords", stopwords_flag, "stopword list file");
    if (two_streams) {
      cmd->add_option("--source-corpus", source_flag, "source corpus file");
      cmd->add_option("--target-corpus", target_flag, "target corpus file");
    } else {
      cmd->add_option("--corpus", corpus_flag, "corpus file");
    }
  };

  CLI::App* detect = app.add_subcommand(
      "detect-bursts", "Detect burst periods for every vocabulary word");
  add_io_flags(detect, false);

  CLI::App* build = app.add_subcommand(
      "build-binet", "Build and dump the burst information network");
  add_io_flags(build, false);

  CLI::App* decipher_cmd = app.add_subcommand(
      "decipher", "Align the source network onto the target network");
  add_io_flags(decipher_cmd, true);
  decipher_cmd->add_option("--lexicon", lexicon_flag, "seed lexicon TSV");
  decipher_cmd->add_option("--romanization", roman_flag, "romanization TSV");
  decipher_cmd->add_option("--k", k_flag, "emit at most k ranked pairs");
  decipher_cmd->add_option("--split-epoch", split_flag,
                           "split the streams here and decipher the halves "
                           "in parallel");
  decipher_cmd->add_option("--iterations", iterations_flag,
                           "propagation rounds");
  decipher_cmd->add_flag("--disable-sp", disable_sp,
                         "drop the pronunciation clue");
  decipher_cmd->add_flag("--disable-st", disable_st,
                         "drop the translation clue");
  decipher_cmd->add_flag("--disable-sn", disable_sn, "drop the neighbor clue");
  decipher_cmd->add_flag("--disable-sb", disable_sb, "drop the co-burst clue");

  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a synthetic coordinated dataset with gold labels");
  add_common(generate, &common);
  generate->add_option("--output-dir", output_flag, "output directory");
  generate->add_option("--rng-seed", rng_seed_flag, "generator seed");

  std::string eval_result, eval_gold;
  std::vector<std::size_t> eval_ks;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Top-K accuracy of ranked pairs vs gold");
  eval_cmd->add_option("--result", eval_result, "pairs.tsv from decipher")
      ->required();
  eval_cmd->add_option("--gold", eval_gold, "gold TSV")->required();
  eval_cmd->add_option("--k", eval_ks, "one or more K values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    PipelineConfig config = resolve_config(common);
    if (!output_flag.empty()) config.output_dir = output_flag;
    if (!stopwords_flag.empty()) config.stopwords = stopwords_flag;
    if (!corpus_flag.empty()) config.source_corpus = corpus_flag;
    if (!source_flag.empty()) config.source_corpus = source_flag;
    if (!target_flag.empty()) config.target_corpus = target_flag;
    if (!lexicon_flag.empty()) config.lexicon = lexicon_flag;
    if (!roman_flag.empty()) config.romanization = roman_flag;
    if (k_flag) config.k = *k_flag;
    if (split_flag) config.split_epoch = *split_flag;
    if (iterations_flag) config.params.score.iterations = *iterations_flag;
    if (rng_seed_flag) config.synth.rng_seed = *rng_seed_flag;
    if (disable_sp) config.params.score.eta = 0.0;
    if (disable_st) config.params.score.lambda = 0.0;
    if (disable_sn) config.params.score.gamma = 0.0;
    if (disable_sb) config.params.score.delta = 0.0;

    if (detect->parsed()) return cmd_detect_bursts(config);
    if (build->parsed()) return cmd_build_binet(config);
    if (decipher_cmd->parsed()) return cmd_decipher(config);
    if (generate->parsed()) return cmd_generate(config);
    if (eval_cmd->parsed()) return cmd_eval(eval_result, eval_gold, eval_ks);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace binet
