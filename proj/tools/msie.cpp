#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "msie/error.hpp"
#include "msie/stages.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string variant = "STP";
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::string labeled_corpus;
  std::string text_corpus;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_variant) {
  cmd->add_option("-c,--config", flags.config_path, "JSON config path");
  cmd->add_option("-o,--out-dir", flags.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", flags.seed, "global seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  if (with_variant)
    cmd->add_option("--variant", flags.variant, "feature variant: S, ST or STP")
        ->check(CLI::IsMember({"S", "ST", "STP"}));
}

msie::CliConfig effective_config(const CommonFlags& flags) {
  msie::CliConfig config;
  if (!flags.config_path.empty()) config = msie::load_config(flags.config_path);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.seed_set) config.seed = flags.seed;
  if (!flags.labeled_corpus.empty()) config.labeled_corpus = flags.labeled_corpus;
  if (!flags.text_corpus.empty()) config.text_corpus = flags.text_corpus;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"msie: multi-source information embedding pipeline"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  auto* ingest = app.add_subcommand("ingest", "parse, validate and split the input tables");
  auto* stats = app.add_subcommand("stats", "dataset summary statistics");
  auto* select = app.add_subcommand("select-features", "statistical feature selection");
  auto* train_text = app.add_subcommand("train-text", "train word vectors, embed texts");
  auto* sentiment = app.add_subcommand("sentiment", "review polarity scores per listing");
  auto* graphs = app.add_subcommand("build-graphs", "per-category listing-POI graphs");
  auto* embed = app.add_subcommand("embed-spatial", "graph autoencoder spatial features");
  auto* fuse = app.add_subcommand("fuse", "align and concatenate feature blocks");
  auto* train = app.add_subcommand("train", "train the price regressor");
  auto* evaluate = app.add_subcommand("evaluate", "metrics on the temporal test split");
  auto* ablate = app.add_subcommand("ablate", "S / ST / STP feature-set comparison");
  auto* predict = app.add_subcommand("predict", "predictions for the test split");
  auto* all = app.add_subcommand("all", "run the whole pipeline in order");

  for (auto* cmd : {synth, ingest, stats, select, sentiment, graphs, embed, fuse, ablate, all})
    add_common(cmd, flags, false);
  for (auto* cmd : {train, evaluate, predict}) add_common(cmd, flags, true);
  train_text->add_option("--corpus", flags.text_corpus,
                         "text file (one document per line) to train word vectors on");
  sentiment->add_option("--labeled-corpus", flags.labeled_corpus,
                        "CSV (label,text) replacing the builtin polarity lexicon");
  add_common(train_text, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    msie::StageContext ctx = msie::make_stage_context(effective_config(flags));
    msie::Variant variant = msie::variant_from_name(flags.variant);
    if (synth->parsed()) msie::stage_synth(ctx);
    else if (ingest->parsed()) msie::stage_ingest(ctx);
    else if (stats->parsed()) msie::stage_stats(ctx);
    else if (select->parsed()) msie::stage_select_features(ctx);
    else if (train_text->parsed()) msie::stage_train_text(ctx);
    else if (sentiment->parsed()) msie::stage_sentiment(ctx);
    else if (graphs->parsed()) msie::stage_build_graphs(ctx);
    else if (embed->parsed()) msie::stage_embed_spatial(ctx);
    else if (fuse->parsed()) msie::stage_fuse(ctx);
    else if (train->parsed()) msie::stage_train(ctx, variant);
    else if (evaluate->parsed()) msie::stage_evaluate(ctx, variant);
    else if (ablate->parsed()) msie::stage_ablate(ctx);
    else if (predict->parsed()) msie::stage_predict(ctx, variant);
    else if (all->parsed()) msie::stage_all(ctx);
  } catch (const msie::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const msie::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const msie::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
