#include "msie/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "msie/csv.hpp"
#include "msie/error.hpp"

namespace msie {

namespace {

std::vector<double> table_prices(const ListingTable& table) {
  std::vector<double> prices;
  prices.reserve(table.rows.size());
  for (const auto& r : table.rows) prices.push_back(r.price);
  return prices;
}

StatFeatureMatrix keep_named_columns(const StatFeatureMatrix& x,
                                     const std::vector<std::string>& names) {
  std::vector<std::size_t> keep;
  for (const auto& name : names) {
    auto it = std::find(x.column_names.begin(), x.column_names.end(), name);
    if (it == x.column_names.end())
      throw ConfigError("UnknownColumn", "selection names unknown column " + name);
    keep.push_back(static_cast<std::size_t>(it - x.column_names.begin()));
  }
  if (keep.empty()) throw DataError("EmptySelection", "no columns named");
  StatFeatureMatrix out;
  out.listing_ids = x.listing_ids;
  out.values = Matrix(x.values.rows, keep.size());
  for (std::size_t jj = 0; jj < keep.size(); ++jj) {
    out.column_names.push_back(x.column_names[keep[jj]]);
    for (std::size_t i = 0; i < x.values.rows; ++i)
      out.values(i, jj) = x.values(i, keep[jj]);
  }
  return out;
}

}  // namespace

PipelineFeatures build_features(const ListingTable& listings, const ReviewTable& reviews,
                                const PoiTable& pois, const PipelineOptions& opts) {
  PipelineFeatures f;
  std::tie(f.train, f.test) = temporal_split(listings, opts.split_ratio);
  f.target = fit_target_transform(table_prices(f.train));
  std::vector<double> y_train = apply_target_transform(f.target, table_prices(f.train));
  std::vector<double> y_test = apply_target_transform(f.target, table_prices(f.test));
  f.test_prices = table_prices(f.test);

  // --- statistical block: preprocess + standardize on train, then select
  f.prep = fit_stat_preprocess(f.train, opts.missing_threshold);
  StatFeatureMatrix raw_train = apply_stat_preprocess(f.prep, f.train);
  StatFeatureMatrix raw_test = apply_stat_preprocess(f.prep, f.test);
  f.stat_scaler = fit_standardizer(raw_train.values);
  StatFeatureMatrix std_train = raw_train;
  std_train.values = f.stat_scaler.transform(raw_train.values);
  StatFeatureMatrix std_test = raw_test;
  std_test.values = f.stat_scaler.transform(raw_test.values);

  if (opts.selection == "lasso") {
    std::vector<double> grid = default_alpha_grid(std_train.values, y_train,
                                                  opts.lasso_grid_size, opts.lasso_grid_decades);
    f.lasso = lasso_cv(std_train.values, y_train, grid, opts.lasso_folds, opts.lasso);
    try {
      f.stat_train = select_features(f.lasso->model, std_train);
      f.stat_test = select_features(f.lasso->model, std_test);
    } catch (const DataError& e) {
      if (std::string(e.kind()) != "EmptySelection") throw;
      f.empty_selection_fallback = true;  // fall back to the full column set
      f.stat_train = std_train;
      f.stat_test = std_test;
    }
  } else if (opts.selection == "pvalue") {
    f.pvalues = pvalue_rank(std_train, y_train, opts.pvalue_top_k);
    std::vector<std::string> names;
    for (const auto& e : f.pvalues) names.push_back(e.name);
    std::sort(names.begin(), names.end());  // keep original column order stable below
    std::vector<std::string> ordered;
    for (const auto& col : std_train.column_names)
      if (std::find(names.begin(), names.end(), col) != names.end()) ordered.push_back(col);
    f.stat_train = keep_named_columns(std_train, ordered);
    f.stat_test = keep_named_columns(std_test, ordered);
  } else if (opts.selection == "manual") {
    f.stat_train = keep_named_columns(std_train, opts.manual_columns);
    f.stat_test = keep_named_columns(std_test, opts.manual_columns);
  } else {
    throw ConfigError("BadSelection", opts.selection);
  }

  // --- text block: CBOW corpus is every description + host intro, train then
  // test order (deterministic for a fixed split); --corpus overrides
  std::vector<std::vector<std::string>> corpus = opts.text_corpus;
  if (corpus.empty()) {
    corpus.reserve(2 * (f.train.rows.size() + f.test.rows.size()));
    for (const ListingTable* part : {&f.train, &f.test}) {
      for (const auto& row : part->rows) {
        corpus.push_back(tokenize(row.description));
        corpus.push_back(tokenize(row.host_about));
      }
    }
  }
  f.vocab = build_vocab(corpus, opts.cbow.min_count);
  CbowOptions cbow = opts.cbow;
  cbow.seed = stage_seed(opts.seed, "train-text");
  f.word_vectors = train_cbow(corpus, f.vocab, cbow).vectors;
  f.text_train = embed_listing_texts(f.train, f.word_vectors, f.vocab);
  f.text_test = embed_listing_texts(f.test, f.word_vectors, f.vocab);

  // --- sentiment block
  std::vector<LabeledDoc> labeled = opts.labeled_corpus;
  if (labeled.empty()) {
    for (const auto& [text, positive] : builtin_labeled_corpus())
      labeled.push_back({tokenize(text), positive});
  }
  f.nb = train_nb(labeled, opts.nb_smoothing);
  f.sentiment_train = listing_sentiment(f.nb, f.train, reviews);
  f.sentiment_test = listing_sentiment(f.nb, f.test, reviews);

  // --- spatial block: transductive over all listings, then split rows back
  ListingTable combined;
  combined.stat_columns = listings.stat_columns;
  combined.rows = f.train.rows;
  combined.rows.insert(combined.rows.end(), f.test.rows.begin(), f.test.rows.end());
  SpatialConfig spatial = opts.spatial;
  spatial.seed = stage_seed(opts.seed, "embed-spatial");
  SpatialFeatures all_spatial = embed_spatial(combined, pois, spatial);
  const std::size_t n_train = f.train.rows.size();
  f.spatial_train.listing_ids.assign(all_spatial.listing_ids.begin(),
                                     all_spatial.listing_ids.begin() + static_cast<long>(n_train));
  f.spatial_test.listing_ids.assign(all_spatial.listing_ids.begin() + static_cast<long>(n_train),
                                    all_spatial.listing_ids.end());
  f.spatial_train.values = Matrix(n_train, all_spatial.values.cols);
  f.spatial_test.values = Matrix(f.test.rows.size(), all_spatial.values.cols);
  std::copy(all_spatial.values.row(0), all_spatial.values.row(0) + n_train * all_spatial.values.cols,
            f.spatial_train.values.data.begin());
  std::copy(all_spatial.values.row(n_train),
            all_spatial.values.row(n_train) + f.test.rows.size() * all_spatial.values.cols,
            f.spatial_test.values.data.begin());

  // --- fuse
  f.bundle_train = fuse(f.stat_train, f.text_train, f.sentiment_train, f.spatial_train,
                        f.stat_train.listing_ids, y_train);
  f.bundle_test = fuse(f.stat_test, f.text_test, f.sentiment_test, f.spatial_test,
                       f.stat_test.listing_ids, y_test);
  f.bundle_train.target = y_train;
  f.bundle_test.target = y_test;
  return f;
}

std::vector<AblationEntry> run_ablation(const PipelineFeatures& features,
                                        const std::vector<Variant>& variants,
                                        const PipelineOptions& opts) {
  std::vector<AblationEntry> entries;
  RegressorOptions reg = opts.regressor;
  reg.seed = stage_seed(opts.seed, "train");
  for (Variant v : variants) {
    AblationEntry entry;
    entry.report.variant = "MSIE-" + variant_name(v);
    try {
      FeatureBundle train = restrict_variant(features.bundle_train, v);
      FeatureBundle test = restrict_variant(features.bundle_test, v);
      PriceModel model = train_price_model(train, reg);
      model.target_transform = features.target;
      Predictions pred = predict(model, test);
      entry.report = evaluate_metrics(pred.transformed, test.target, entry.report.variant);
      entry.mae_currency = mae(pred.currency, features.test_prices);
      entry.loss_curve = model.loss_curve;
    } catch (const Error& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string metric_report_json(const MetricReport& report, double mae_currency) {
  nlohmann::json j{{"variant", report.variant}, {"mae", report.mae},
                   {"mse", report.mse},         {"rmse", report.rmse},
                   {"r2", report.r2},           {"n", report.n},
                   {"mae_currency", mae_currency}};
  return j.dump(2);
}

std::string ablation_report_json(const std::vector<AblationEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    if (!e.error.empty()) {
      arr.push_back({{"variant", e.report.variant}, {"error", e.error}});
      continue;
    }
    arr.push_back(nlohmann::json::parse(metric_report_json(e.report, e.mae_currency)));
  }
  return arr.dump(2);
}

std::string ablation_report_csv(const std::vector<AblationEntry>& entries) {
  std::string out = "variant,mae,mse,rmse,r2\n";
  for (const auto& e : entries) {
    if (!e.error.empty()) continue;
    out += e.report.variant + "," + format_double(e.report.mae) + "," +
           format_double(e.report.mse) + "," + format_double(e.report.rmse) + "," +
           format_double(e.report.r2) + "\n";
  }
  return out;
}

}  // namespace msie
