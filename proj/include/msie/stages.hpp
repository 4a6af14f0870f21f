#pragma once

#include <filesystem>
#include <string>

#include "msie/config.hpp"
#include "msie/fusion.hpp"

namespace msie {

// One function per CLI subcommand. Every stage reads only its declared
// inputs, writes only into out_dir, and records itself in manifest.json.
struct StageContext {
  CliConfig config;
  std::filesystem::path out;
  std::string config_hash;
};

StageContext make_stage_context(const CliConfig& config);

void stage_synth(const StageContext& ctx);
void stage_ingest(const StageContext& ctx);
void stage_stats(const StageContext& ctx);
void stage_select_features(const StageContext& ctx);
void stage_train_text(const StageContext& ctx);
void stage_sentiment(const StageContext& ctx);
void stage_build_graphs(const StageContext& ctx);
void stage_embed_spatial(const StageContext& ctx);
void stage_fuse(const StageContext& ctx);
void stage_train(const StageContext& ctx, Variant variant);
void stage_evaluate(const StageContext& ctx, Variant variant);
void stage_ablate(const StageContext& ctx);
void stage_predict(const StageContext& ctx, Variant variant);
void stage_all(const StageContext& ctx);

}  // namespace msie
