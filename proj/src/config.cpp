#include "msie/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "msie/csv.hpp"
#include "msie/error.hpp"
#include "msie/sentiment.hpp"

namespace msie {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& prefix) {
  if (!j.is_object()) throw ConfigError("BadConfig", prefix.empty() ? "root must be an object" : prefix + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key))
      throw ConfigError("UnknownKey", prefix.empty() ? key : prefix + "." + key);
  }
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

CliConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("BadJson", e.what());
  }

  CliConfig c;
  reject_unknown(j, {"inputs", "out_dir", "seed", "split_ratio", "missing_threshold",
                     "selection", "lasso", "cbow", "nb", "sdne", "regressor", "ablation",
                     "synth"},
                 "");
  if (j.contains("inputs")) {
    const json& in = j.at("inputs");
    reject_unknown(in, {"listings", "reviews", "pois", "labeled_corpus", "text_corpus"},
                   "inputs");
    get_if(in, "listings", c.listings);
    get_if(in, "reviews", c.reviews);
    get_if(in, "pois", c.pois);
    get_if(in, "labeled_corpus", c.labeled_corpus);
    get_if(in, "text_corpus", c.text_corpus);
  }
  get_if(j, "out_dir", c.out_dir);
  get_if(j, "seed", c.seed);
  get_if(j, "split_ratio", c.split_ratio);
  get_if(j, "missing_threshold", c.missing_threshold);
  get_if(j, "selection", c.selection);

  if (j.contains("lasso")) {
    const json& l = j.at("lasso");
    reject_unknown(l, {"folds", "grid_size", "grid_decades", "tol", "max_sweeps",
                       "pvalue_top_k", "manual_columns"},
                   "lasso");
    get_if(l, "folds", c.lasso_folds);
    get_if(l, "grid_size", c.lasso_grid_size);
    get_if(l, "grid_decades", c.lasso_grid_decades);
    get_if(l, "tol", c.lasso_tol);
    get_if(l, "max_sweeps", c.lasso_max_sweeps);
    get_if(l, "pvalue_top_k", c.pvalue_top_k);
    get_if(l, "manual_columns", c.manual_columns);
  }
  if (j.contains("cbow")) {
    const json& t = j.at("cbow");
    reject_unknown(t, {"dim", "window", "negatives", "epochs", "learning_rate",
                       "min_learning_rate", "min_count"},
                   "cbow");
    get_if(t, "dim", c.cbow.dim);
    get_if(t, "window", c.cbow.window);
    get_if(t, "negatives", c.cbow.negatives);
    get_if(t, "epochs", c.cbow.epochs);
    get_if(t, "learning_rate", c.cbow.learning_rate);
    get_if(t, "min_learning_rate", c.cbow.min_learning_rate);
    get_if(t, "min_count", c.cbow.min_count);
  }
  if (j.contains("nb")) {
    reject_unknown(j.at("nb"), {"smoothing"}, "nb");
    get_if(j.at("nb"), "smoothing", c.nb_smoothing);
  }
  if (j.contains("sdne")) {
    const json& s = j.at("sdne");
    reject_unknown(s, {"radius_km", "embed_dim", "hidden_dim", "epochs", "learning_rate",
                       "alpha_first_order", "beta", "nu", "parallel"},
                   "sdne");
    get_if(s, "radius_km", c.spatial.radius_km);
    get_if(s, "embed_dim", c.spatial.sdne.embed_dim);
    get_if(s, "hidden_dim", c.spatial.sdne.hidden_dim);
    get_if(s, "epochs", c.spatial.sdne.epochs);
    get_if(s, "learning_rate", c.spatial.sdne.learning_rate);
    get_if(s, "alpha_first_order", c.spatial.sdne.alpha_first_order);
    get_if(s, "beta", c.spatial.sdne.beta);
    get_if(s, "nu", c.spatial.sdne.nu);
    get_if(s, "parallel", c.spatial.parallel_categories);
  }
  if (j.contains("regressor")) {
    const json& r = j.at("regressor");
    reject_unknown(r, {"epochs", "batch_size", "learning_rate", "hidden", "shuffle"},
                   "regressor");
    get_if(r, "epochs", c.regressor.epochs);
    get_if(r, "batch_size", c.regressor.batch_size);
    get_if(r, "learning_rate", c.regressor.learning_rate);
    get_if(r, "hidden", c.regressor.hidden);
    get_if(r, "shuffle", c.regressor.shuffle);
  }
  if (j.contains("ablation")) {
    reject_unknown(j.at("ablation"), {"variants"}, "ablation");
    get_if(j.at("ablation"), "variants", c.ablation_variants);
    for (const auto& v : c.ablation_variants) variant_from_name(v);  // validate early
  }
  if (j.contains("synth")) {
    const json& s = j.at("synth");
    reject_unknown(s, {"n_listings", "n_pois_per_category", "min_reviews", "max_reviews",
                       "stat_w", "text_w", "spatial_w", "noise_sd"},
                   "synth");
    get_if(s, "n_listings", c.synth.n_listings);
    get_if(s, "n_pois_per_category", c.synth.n_pois_per_category);
    get_if(s, "min_reviews", c.synth.min_reviews);
    get_if(s, "max_reviews", c.synth.max_reviews);
    get_if(s, "stat_w", c.synth.stat_w);
    get_if(s, "text_w", c.synth.text_w);
    get_if(s, "spatial_w", c.synth.spatial_w);
    get_if(s, "noise_sd", c.synth.noise_sd);
  }
  return c;
}

CliConfig load_config(const std::filesystem::path& path) {
  return parse_config_json(read_file(path));
}

// out_dir is deliberately absent: the fingerprint covers what is computed,
// not where it lands, so runs into different directories compare equal.
std::string config_canonical_json(const CliConfig& c) {
  json j{
      {"inputs",
       {{"listings", c.listings},
        {"reviews", c.reviews},
        {"pois", c.pois},
        {"labeled_corpus", c.labeled_corpus},
        {"text_corpus", c.text_corpus}}},
      {"seed", c.seed},
      {"split_ratio", c.split_ratio},
      {"missing_threshold", c.missing_threshold},
      {"selection", c.selection},
      {"lasso",
       {{"folds", c.lasso_folds},
        {"grid_size", c.lasso_grid_size},
        {"grid_decades", c.lasso_grid_decades},
        {"tol", c.lasso_tol},
        {"max_sweeps", c.lasso_max_sweeps},
        {"pvalue_top_k", c.pvalue_top_k},
        {"manual_columns", c.manual_columns}}},
      {"cbow",
       {{"dim", c.cbow.dim},
        {"window", c.cbow.window},
        {"negatives", c.cbow.negatives},
        {"epochs", c.cbow.epochs},
        {"learning_rate", c.cbow.learning_rate},
        {"min_learning_rate", c.cbow.min_learning_rate},
        {"min_count", c.cbow.min_count}}},
      {"nb", {{"smoothing", c.nb_smoothing}}},
      {"sdne",
       {{"radius_km", c.spatial.radius_km},
        {"embed_dim", c.spatial.sdne.embed_dim},
        {"hidden_dim", c.spatial.sdne.hidden_dim},
        {"epochs", c.spatial.sdne.epochs},
        {"learning_rate", c.spatial.sdne.learning_rate},
        {"alpha_first_order", c.spatial.sdne.alpha_first_order},
        {"beta", c.spatial.sdne.beta},
        {"nu", c.spatial.sdne.nu},
        {"parallel", c.spatial.parallel_categories}}},
      {"regressor",
       {{"epochs", c.regressor.epochs},
        {"batch_size", c.regressor.batch_size},
        {"learning_rate", c.regressor.learning_rate},
        {"hidden", c.regressor.hidden},
        {"shuffle", c.regressor.shuffle}}},
      {"ablation", {{"variants", c.ablation_variants}}},
      {"synth",
       {{"n_listings", c.synth.n_listings},
        {"n_pois_per_category", c.synth.n_pois_per_category},
        {"min_reviews", c.synth.min_reviews},
        {"max_reviews", c.synth.max_reviews},
        {"stat_w", c.synth.stat_w},
        {"text_w", c.synth.text_w},
        {"spatial_w", c.synth.spatial_w},
        {"noise_sd", c.synth.noise_sd}}}};
  return j.dump(2);
}

PipelineOptions to_pipeline_options(const CliConfig& c) {
  PipelineOptions o;
  o.split_ratio = c.split_ratio;
  o.missing_threshold = c.missing_threshold;
  o.selection = c.selection;
  o.lasso_folds = c.lasso_folds;
  o.lasso_grid_size = c.lasso_grid_size;
  o.lasso_grid_decades = c.lasso_grid_decades;
  o.lasso.tol = c.lasso_tol;
  o.lasso.max_sweeps = c.lasso_max_sweeps;
  o.pvalue_top_k = c.pvalue_top_k;
  o.manual_columns = c.manual_columns;
  o.cbow = c.cbow;
  o.nb_smoothing = c.nb_smoothing;
  if (!c.labeled_corpus.empty())
    o.labeled_corpus = load_labeled_corpus(resolve_input(c, c.labeled_corpus).string());
  if (!c.text_corpus.empty()) {
    std::string text = read_file(resolve_input(c, c.text_corpus));
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t pos = text.find('\n', start);
      if (pos == std::string::npos) pos = text.size();
      auto tokens = tokenize(std::string_view(text).substr(start, pos - start));
      if (!tokens.empty()) o.text_corpus.push_back(std::move(tokens));
      start = pos + 1;
    }
  }
  o.spatial = c.spatial;
  o.regressor = c.regressor;
  o.seed = c.seed;
  return o;
}

std::filesystem::path resolve_input(const CliConfig& config, const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  return std::filesystem::path(config.out_dir) / p;
}

}  // namespace msie
