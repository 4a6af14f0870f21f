#include "msie/stages.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include <nlohmann/json.hpp>

#include "msie/csv.hpp"
#include "msie/error.hpp"
#include "msie/hash.hpp"
#include "msie/manifest.hpp"
#include "msie/metrics.hpp"
#include "msie/pipeline.hpp"
#include "msie/synth.hpp"

namespace msie {

namespace {

// Paths under out_dir are recorded relative to it, so equal runs into
// different directories produce byte-identical manifests.
std::string manifest_path(const StageContext& ctx, const std::filesystem::path& p) {
  auto rel = std::filesystem::relative(p, ctx.out);
  if (!rel.empty() && rel.native().rfind("..", 0) != 0) return rel.string();
  return p.string();
}

void finish_stage(const StageContext& ctx, const std::string& stage,
                  const std::vector<std::filesystem::path>& inputs, std::uint64_t seed,
                  const std::vector<std::string>& outputs) {
  Manifest manifest = Manifest::load(ctx.out);
  std::map<std::string, std::string> hashes;
  for (const auto& rel : outputs) hashes[rel] = file_hash(ctx.out / rel);
  std::vector<std::string> input_names;
  for (const auto& p : inputs) input_names.push_back(manifest_path(ctx, p));
  manifest.record_stage(stage, input_names, ctx.config_hash, seed, hashes);
  manifest.save(ctx.out);
}

std::filesystem::path in_listings(const StageContext& ctx) {
  return resolve_input(ctx.config, ctx.config.listings);
}
std::filesystem::path in_reviews(const StageContext& ctx) {
  return resolve_input(ctx.config, ctx.config.reviews);
}
std::filesystem::path in_pois(const StageContext& ctx) {
  return resolve_input(ctx.config, ctx.config.pois);
}

std::string category_file_name(int c) {
  std::string name = poi_category_names()[static_cast<std::size_t>(c)];
  std::replace(name.begin(), name.end(), ' ', '_');
  return "graph_" + name + ".tsv";
}

// ---- fused feature file: header "listing_id target S:...  L:... H:... R:r P:..."

void write_fused(const std::filesystem::path& path, const FeatureBundle& b) {
  std::string out = "listing_id\ttarget";
  for (const auto& name : b.stat_names) out += "\tS:" + name;
  for (std::size_t k = 0; k < b.description.cols; ++k) out += "\tL:l_" + std::to_string(k + 1);
  for (std::size_t k = 0; k < b.host_about.cols; ++k) out += "\tH:h_" + std::to_string(k + 1);
  for (std::size_t k = 0; k < b.sentiment.cols; ++k) out += "\tR:r";
  for (std::size_t k = 0; k < b.spatial.cols; ++k) out += "\tP:p_" + std::to_string(k + 1);
  out.push_back('\n');
  for (std::size_t i = 0; i < b.listing_ids.size(); ++i) {
    out += b.listing_ids[i];
    out.push_back('\t');
    out += format_double(b.target[i]);
    auto emit = [&](const Matrix& m) {
      for (std::size_t k = 0; k < m.cols; ++k) {
        out.push_back('\t');
        out += format_double(m(i, k));
      }
    };
    emit(b.stat);
    emit(b.description);
    emit(b.host_about);
    emit(b.sentiment);
    emit(b.spatial);
    out.push_back('\n');
  }
  write_file(path, out);
}

FeatureBundle read_fused(const std::filesystem::path& path) {
  std::string text = read_file(path);
  FeatureBundle b;
  std::vector<std::vector<double>> rows;
  std::vector<char> block_of_col;  // 'S','L','H','R','P'
  std::size_t start = 0;
  bool header = true;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    std::string line = text.substr(start, pos - start);
    start = pos + 1;
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::size_t s = 0;
    while (true) {
      std::size_t tab = line.find('\t', s);
      if (tab == std::string::npos) {
        parts.push_back(line.substr(s));
        break;
      }
      parts.push_back(line.substr(s, tab - s));
      s = tab + 1;
    }
    if (header) {
      if (parts.size() < 2 || parts[0] != "listing_id" || parts[1] != "target")
        throw DataError("BadHeader", path.string());
      for (std::size_t c = 2; c < parts.size(); ++c) {
        if (parts[c].size() < 2 || parts[c][1] != ':')
          throw DataError("BadHeader", parts[c]);
        block_of_col.push_back(parts[c][0]);
        if (parts[c][0] == 'S') b.stat_names.push_back(parts[c].substr(2));
      }
      header = false;
      continue;
    }
    if (parts.size() != block_of_col.size() + 2) throw DataError("BadRow", line);
    b.listing_ids.push_back(parts[0]);
    std::vector<double> vals(parts.size() - 1);
    for (std::size_t c = 1; c < parts.size(); ++c) {
      auto res = std::from_chars(parts[c].data(), parts[c].data() + parts[c].size(), vals[c - 1]);
      if (res.ec != std::errc()) throw DataError("BadNumber", parts[c]);
    }
    rows.push_back(std::move(vals));
  }

  const std::size_t n = rows.size();
  auto count_block = [&](char tag) {
    return static_cast<std::size_t>(std::count(block_of_col.begin(), block_of_col.end(), tag));
  };
  b.stat = Matrix(n, count_block('S'));
  b.description = Matrix(n, count_block('L'));
  b.host_about = Matrix(n, count_block('H'));
  b.sentiment = Matrix(n, count_block('R'));
  b.spatial = Matrix(n, count_block('P'));
  b.target.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.target[i] = rows[i][0];
    std::size_t js = 0, jl = 0, jh = 0, jr = 0, jp = 0;
    for (std::size_t c = 0; c < block_of_col.size(); ++c) {
      double v = rows[i][c + 1];
      switch (block_of_col[c]) {
        case 'S': b.stat(i, js++) = v; break;
        case 'L': b.description(i, jl++) = v; break;
        case 'H': b.host_about(i, jh++) = v; break;
        case 'R': b.sentiment(i, jr++) = v; break;
        case 'P': b.spatial(i, jp++) = v; break;
        default: throw DataError("BadHeader", std::string(1, block_of_col[c]));
      }
    }
  }
  return b;
}

nlohmann::json reject_json(const std::vector<RowReject>& rejects, std::size_t cap = 50) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(cap, rejects.size()); ++i) {
    arr.push_back({{"row", rejects[i].row},
                   {"field", rejects[i].field},
                   {"kind", rejects[i].kind},
                   {"message", rejects[i].message}});
  }
  return arr;
}

TargetTransform load_target_transform(const StageContext& ctx) {
  nlohmann::json j = nlohmann::json::parse(read_file(ctx.out / "layout.json"));
  TargetTransform t;
  t.mu = j.at("target_mu").get<double>();
  t.sigma = j.at("target_sigma").get<double>();
  return t;
}

}  // namespace

StageContext make_stage_context(const CliConfig& config) {
  StageContext ctx;
  ctx.config = config;
  ctx.out = config.out_dir;
  ctx.config_hash = content_hash(config_canonical_json(config));
  std::filesystem::create_directories(ctx.out);
  return ctx;
}

void stage_synth(const StageContext& ctx) {
  SynthConfig sc = ctx.config.synth;
  sc.seed = ctx.config.seed;
  synth_generate(sc, ctx.out);
  finish_stage(ctx, "synth", {}, stage_seed(ctx.config.seed, "synth"),
               {"listings.csv", "reviews.csv", "pois.csv", "latent_scores.csv"});
}

void stage_ingest(const StageContext& ctx) {
  ListingTable listings = parse_listings(in_listings(ctx));
  ReviewTable reviews = parse_reviews(in_reviews(ctx));
  PoiTable pois = parse_pois(in_pois(ctx));
  auto [train, test] = temporal_split(listings, ctx.config.split_ratio);

  write_listings(ctx.out / "listings_clean.csv", listings);
  write_reviews(ctx.out / "reviews_clean.csv", reviews);
  write_pois(ctx.out / "pois_clean.csv", pois);
  write_listings(ctx.out / "split_train.csv", train);
  write_listings(ctx.out / "split_test.csv", test);

  nlohmann::json report{{"n_listings", listings.rows.size()},
                        {"n_reviews", reviews.rows.size()},
                        {"n_pois", pois.rows.size()},
                        {"n_train", train.rows.size()},
                        {"n_test", test.rows.size()},
                        {"dropped_empty_reviews", reviews.dropped_empty},
                        {"rejected_listings", listings.rejects.size()},
                        {"rejected_reviews", reviews.rejects.size()},
                        {"rejected_pois", pois.rejects.size()},
                        {"listing_rejects", reject_json(listings.rejects)},
                        {"review_rejects", reject_json(reviews.rejects)},
                        {"poi_rejects", reject_json(pois.rejects)}};
  write_file(ctx.out / "ingest_report.json", report.dump(2));

  finish_stage(ctx, "ingest", {in_listings(ctx), in_reviews(ctx), in_pois(ctx)},
               stage_seed(ctx.config.seed, "ingest"),
               {"listings_clean.csv", "reviews_clean.csv", "pois_clean.csv", "split_train.csv",
                "split_test.csv", "ingest_report.json"});
}

void stage_stats(const StageContext& ctx) {
  ListingTable listings = parse_listings(ctx.out / "listings_clean.csv");
  ReviewTable reviews = parse_reviews(ctx.out / "reviews_clean.csv");
  PoiTable pois = parse_pois(ctx.out / "pois_clean.csv");
  DatasetSummary s = dataset_stats(listings, reviews, pois);

  nlohmann::json cats = nlohmann::json::object();
  for (int c = 0; c < kPoiCategoryCount; ++c)
    cats[poi_category_names()[static_cast<std::size_t>(c)]] =
        s.per_category_poi_counts[static_cast<std::size_t>(c)];
  nlohmann::json j{{"n_listings", s.n_listings},
                   {"n_reviews", s.n_reviews},
                   {"time_span_begin", s.span_begin ? format_date(*s.span_begin) : ""},
                   {"time_span_end", s.span_end ? format_date(*s.span_end) : ""},
                   {"per_category_poi_counts", cats}};
  write_file(ctx.out / "stats.json", j.dump(2));
  finish_stage(ctx, "stats",
               {(ctx.out / "listings_clean.csv").string(),
                (ctx.out / "reviews_clean.csv").string(), (ctx.out / "pois_clean.csv").string()},
               stage_seed(ctx.config.seed, "stats"), {"stats.json"});
}

void stage_select_features(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");
  PipelineOptions opts = to_pipeline_options(ctx.config);

  TargetTransform target = fit_target_transform([&] {
    std::vector<double> p;
    for (const auto& r : train.rows) p.push_back(r.price);
    return p;
  }());
  std::vector<double> y_train;
  for (const auto& r : train.rows) y_train.push_back(target.apply_price(r.price));

  StatPreprocess prep = fit_stat_preprocess(train, opts.missing_threshold);
  StatFeatureMatrix raw_train = apply_stat_preprocess(prep, train);
  StatFeatureMatrix raw_test = apply_stat_preprocess(prep, test);
  StandardScaler scaler = fit_standardizer(raw_train.values);
  StatFeatureMatrix std_train = raw_train;
  std_train.values = scaler.transform(raw_train.values);
  StatFeatureMatrix std_test = raw_test;
  std_test.values = scaler.transform(raw_test.values);

  nlohmann::json selection_report{{"method", opts.selection},
                                  {"dropped_columns", prep.dropped_columns}};
  StatFeatureMatrix sel_train, sel_test;
  LassoModel model;
  if (opts.selection == "lasso") {
    std::vector<double> grid = default_alpha_grid(std_train.values, y_train,
                                                  opts.lasso_grid_size, opts.lasso_grid_decades);
    LassoCvResult cv = lasso_cv(std_train.values, y_train, grid, opts.lasso_folds, opts.lasso);
    model = cv.model;
    selection_report["best_alpha"] = cv.best_alpha;
    selection_report["cv_alphas"] = cv.alphas;
    selection_report["cv_mean_mse"] = cv.mean_val_mse;
    try {
      sel_train = select_features(model, std_train);
      sel_test = select_features(model, std_test);
      selection_report["empty_selection_fallback"] = false;
    } catch (const DataError& e) {
      if (std::string(e.kind()) != "EmptySelection") throw;
      sel_train = std_train;
      sel_test = std_test;
      selection_report["empty_selection_fallback"] = true;
    }
  } else {
    // pvalue / manual arms share the pipeline implementation
    PipelineOptions sub = opts;
    std::vector<std::string> keep;
    if (opts.selection == "pvalue") {
      auto ranked = pvalue_rank(std_train, y_train, opts.pvalue_top_k);
      nlohmann::json pv = nlohmann::json::array();
      for (const auto& e : ranked)
        pv.push_back({{"name", e.name}, {"p_value", e.p_value}, {"t_stat", e.t_stat}});
      selection_report["pvalues"] = pv;
      for (const auto& col : std_train.column_names)
        for (const auto& e : ranked)
          if (e.name == col) keep.push_back(col);
    } else if (opts.selection == "manual") {
      keep = opts.manual_columns;
    } else {
      throw ConfigError("BadSelection", opts.selection);
    }
    model.weights.assign(std_train.column_names.size(), 0.0);
    model.selected_mask.assign(std_train.column_names.size(), false);
    for (std::size_t j = 0; j < std_train.column_names.size(); ++j)
      for (const auto& k : keep)
        if (std_train.column_names[j] == k) {
          model.selected_mask[j] = true;
          model.weights[j] = 1.0;  // marker only; selection mask is what matters
        }
    sel_train = select_features(model, std_train);
    sel_test = select_features(model, std_test);
    model.weights.assign(std_train.column_names.size(), 0.0);
  }
  selection_report["selected_columns"] = sel_train.column_names;

  write_file(ctx.out / "stat_model.json",
             stat_model_to_json(model, scaler, std_train.column_names, target));
  write_file(ctx.out / "selection_report.json", selection_report.dump(2));

  // one TSV over all listings, train rows first
  std::string out = "listing_id";
  for (const auto& name : sel_train.column_names) out += "\t" + name;
  out.push_back('\n');
  auto emit_rows = [&](const StatFeatureMatrix& m) {
    for (std::size_t i = 0; i < m.listing_ids.size(); ++i) {
      out += m.listing_ids[i];
      for (std::size_t k = 0; k < m.values.cols; ++k) {
        out.push_back('\t');
        out += format_double(m.values(i, k));
      }
      out.push_back('\n');
    }
  };
  emit_rows(sel_train);
  emit_rows(sel_test);
  write_file(ctx.out / "stat_features.tsv", out);

  finish_stage(ctx, "select-features",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string()},
               stage_seed(ctx.config.seed, "select-features"),
               {"stat_model.json", "selection_report.json", "stat_features.tsv"});
}

void stage_train_text(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");
  PipelineOptions opts = to_pipeline_options(ctx.config);

  std::vector<std::vector<std::string>> corpus = opts.text_corpus;
  if (corpus.empty()) {
    for (const ListingTable* part : {&train, &test}) {
      for (const auto& row : part->rows) {
        corpus.push_back(tokenize(row.description));
        corpus.push_back(tokenize(row.host_about));
      }
    }
  }
  Vocab vocab = build_vocab(corpus, opts.cbow.min_count);
  CbowOptions cbow = opts.cbow;
  cbow.seed = stage_seed(ctx.config.seed, "train-text");
  CbowTrainResult trained = train_cbow(corpus, vocab, cbow);
  write_word_vectors(ctx.out / "word_vectors.tsv", trained.vectors, vocab);

  ListingTable combined;
  combined.stat_columns = train.stat_columns;
  combined.rows = train.rows;
  combined.rows.insert(combined.rows.end(), test.rows.begin(), test.rows.end());
  TextFeatures tf = embed_listing_texts(combined, trained.vectors, vocab);
  write_text_features(ctx.out / "text_features.tsv", tf);

  std::size_t empty_desc = 0, empty_host = 0;
  for (std::size_t i = 0; i < tf.listing_ids.size(); ++i) {
    empty_desc += tf.empty_description[i];
    empty_host += tf.empty_host_about[i];
  }
  nlohmann::json report{{"vocab_size", vocab.size()},
                        {"dim", trained.vectors.dim},
                        {"epoch_objective", trained.epoch_objective},
                        {"empty_descriptions", empty_desc},
                        {"empty_host_abouts", empty_host}};
  write_file(ctx.out / "text_report.json", report.dump(2));

  finish_stage(ctx, "train-text",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string()},
               cbow.seed, {"word_vectors.tsv", "text_features.tsv", "text_report.json"});
}

void stage_sentiment(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");
  ReviewTable reviews = parse_reviews(ctx.out / "reviews_clean.csv");
  PipelineOptions opts = to_pipeline_options(ctx.config);

  std::vector<LabeledDoc> labeled = opts.labeled_corpus;
  if (labeled.empty()) {
    for (const auto& [text, positive] : builtin_labeled_corpus())
      labeled.push_back({tokenize(text), positive});
  }
  NbModel nb = train_nb(labeled, opts.nb_smoothing);

  ListingTable combined;
  combined.stat_columns = train.stat_columns;
  combined.rows = train.rows;
  combined.rows.insert(combined.rows.end(), test.rows.begin(), test.rows.end());
  SentimentVector sv = listing_sentiment(nb, combined, reviews);
  write_sentiment(ctx.out / "sentiment.csv", sv);

  finish_stage(ctx, "sentiment",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string(),
                (ctx.out / "reviews_clean.csv").string()},
               stage_seed(ctx.config.seed, "sentiment"), {"sentiment.csv"});
}

void stage_build_graphs(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");
  PoiTable pois = parse_pois(ctx.out / "pois_clean.csv");

  ListingTable combined;
  combined.stat_columns = train.stat_columns;
  combined.rows = train.rows;
  combined.rows.insert(combined.rows.end(), test.rows.begin(), test.rows.end());

  std::vector<std::string> outputs;
  for (int c = 0; c < kPoiCategoryCount; ++c) {
    SpatialGraph g = build_spatial_graph(combined, pois, static_cast<PoiCategory>(c),
                                         ctx.config.spatial.radius_km);
    write_graph(ctx.out / category_file_name(c), g);
    outputs.push_back(category_file_name(c));
  }
  finish_stage(ctx, "build-graphs",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string(),
                (ctx.out / "pois_clean.csv").string()},
               stage_seed(ctx.config.seed, "build-graphs"), outputs);
}

void stage_embed_spatial(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");
  PoiTable pois = parse_pois(ctx.out / "pois_clean.csv");

  ListingTable combined;
  combined.stat_columns = train.stat_columns;
  combined.rows = train.rows;
  combined.rows.insert(combined.rows.end(), test.rows.begin(), test.rows.end());

  SpatialConfig spatial = ctx.config.spatial;
  spatial.seed = stage_seed(ctx.config.seed, "embed-spatial");
  SpatialFeatures sf = embed_spatial(combined, pois, spatial);
  write_spatial_features(ctx.out / "spatial_features.tsv", sf);

  finish_stage(ctx, "embed-spatial",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string(),
                (ctx.out / "pois_clean.csv").string()},
               spatial.seed, {"spatial_features.tsv"});
}

void stage_fuse(const StageContext& ctx) {
  ListingTable train = parse_listings(ctx.out / "split_train.csv");
  ListingTable test = parse_listings(ctx.out / "split_test.csv");

  // stat_features.tsv: header of selected columns, then rows keyed by id
  StatFeatureMatrix stat_all;
  {
    std::string text = read_file(ctx.out / "stat_features.tsv");
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
      std::size_t pos = text.find('\n', start);
      if (pos == std::string::npos) pos = text.size();
      std::string line = text.substr(start, pos - start);
      start = pos + 1;
      if (line.empty()) continue;
      std::vector<std::string> parts;
      std::size_t s = 0;
      while (true) {
        std::size_t tab = line.find('\t', s);
        if (tab == std::string::npos) {
          parts.push_back(line.substr(s));
          break;
        }
        parts.push_back(line.substr(s, tab - s));
        s = tab + 1;
      }
      if (header) {
        stat_all.column_names.assign(parts.begin() + 1, parts.end());
        header = false;
        continue;
      }
      stat_all.listing_ids.push_back(parts[0]);
      for (std::size_t k = 1; k < parts.size(); ++k) {
        double v;
        auto res = std::from_chars(parts[k].data(), parts[k].data() + parts[k].size(), v);
        if (res.ec != std::errc()) throw DataError("BadNumber", parts[k]);
        stat_all.values.data.push_back(v);
      }
    }
    stat_all.values.rows = stat_all.listing_ids.size();
    stat_all.values.cols = stat_all.column_names.size();
  }
  TextFeatures text_all = read_text_features(ctx.out / "text_features.tsv");
  SentimentVector senti_all = read_sentiment(ctx.out / "sentiment.csv");
  SpatialFeatures spatial_all = read_spatial_features(ctx.out / "spatial_features.tsv");

  TargetTransform target = fit_target_transform([&] {
    std::vector<double> p;
    for (const auto& r : train.rows) p.push_back(r.price);
    return p;
  }());

  auto slice_stat = [&](const ListingTable& part) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < stat_all.listing_ids.size(); ++i)
      idx.emplace(stat_all.listing_ids[i], i);
    StatFeatureMatrix out;
    out.column_names = stat_all.column_names;
    out.values = Matrix(part.rows.size(), stat_all.values.cols);
    for (std::size_t i = 0; i < part.rows.size(); ++i) {
      auto it = idx.find(part.rows[i].listing_id);
      if (it == idx.end())
        throw DataError("AlignmentError", "stat:" + part.rows[i].listing_id);
      out.listing_ids.push_back(part.rows[i].listing_id);
      for (std::size_t k = 0; k < stat_all.values.cols; ++k)
        out.values(i, k) = stat_all.values(it->second, k);
    }
    return out;
  };

  auto bundle_for = [&](const ListingTable& part) {
    StatFeatureMatrix stat = slice_stat(part);
    std::vector<double> y;
    for (const auto& r : part.rows) y.push_back(target.apply_price(r.price));
    FeatureBundle b = fuse(stat, text_all, senti_all, spatial_all, stat.listing_ids, y);
    b.target = y;
    return b;
  };
  FeatureBundle train_bundle = bundle_for(train);
  FeatureBundle test_bundle = bundle_for(test);

  write_fused(ctx.out / "fused_train.tsv", train_bundle);
  write_fused(ctx.out / "fused_test.tsv", test_bundle);

  std::size_t zero_review = 0;
  for (bool f : senti_all.zero_review_flag) zero_review += f;
  std::size_t empty_desc = 0, empty_host = 0;
  for (std::size_t i = 0; i < text_all.listing_ids.size(); ++i) {
    empty_desc += text_all.empty_description[i];
    empty_host += text_all.empty_host_about[i];
  }
  nlohmann::json layout{{"layout_signature", train_bundle.layout_signature()},
                        {"target_mu", target.mu},
                        {"target_sigma", target.sigma},
                        {"stat_columns", stat_all.column_names}};
  write_file(ctx.out / "layout.json", layout.dump(2));
  nlohmann::json report{{"n_train", train_bundle.listing_ids.size()},
                        {"n_test", test_bundle.listing_ids.size()},
                        {"columns", train_bundle.fused().cols},
                        {"zero_review_listings", zero_review},
                        {"empty_descriptions", empty_desc},
                        {"empty_host_abouts", empty_host}};
  write_file(ctx.out / "fuse_report.json", report.dump(2));

  finish_stage(ctx, "fuse",
               {(ctx.out / "split_train.csv").string(), (ctx.out / "split_test.csv").string(),
                (ctx.out / "stat_features.tsv").string(),
                (ctx.out / "text_features.tsv").string(), (ctx.out / "sentiment.csv").string(),
                (ctx.out / "spatial_features.tsv").string()},
               stage_seed(ctx.config.seed, "fuse"),
               {"fused_train.tsv", "fused_test.tsv", "layout.json", "fuse_report.json"});
}

void stage_train(const StageContext& ctx, Variant variant) {
  FeatureBundle full = read_fused(ctx.out / "fused_train.tsv");
  FeatureBundle train = restrict_variant(full, variant);

  RegressorOptions reg = ctx.config.regressor;
  reg.seed = stage_seed(ctx.config.seed, "train");
  PriceModel model = train_price_model(train, reg);
  model.target_transform = load_target_transform(ctx);

  std::string tag = variant_name(variant);
  write_file(ctx.out / ("price_model_" + tag + ".json"), price_model_to_json(model));
  std::string curve = "epoch,loss\n";
  for (std::size_t e = 0; e < model.loss_curve.size(); ++e)
    curve += std::to_string(e + 1) + "," + format_double(model.loss_curve[e]) + "\n";
  write_file(ctx.out / "loss_curve.csv", curve);

  finish_stage(ctx, "train:" + tag,
               {(ctx.out / "fused_train.tsv").string(), (ctx.out / "layout.json").string()},
               reg.seed, {"price_model_" + tag + ".json", "loss_curve.csv"});
}

void stage_evaluate(const StageContext& ctx, Variant variant) {
  std::string tag = variant_name(variant);
  PriceModel model = price_model_from_json(read_file(ctx.out / ("price_model_" + tag + ".json")));
  FeatureBundle full = read_fused(ctx.out / "fused_test.tsv");
  FeatureBundle test = restrict_variant(full, variant);

  Predictions pred = predict(model, test);
  MetricReport report = evaluate_metrics(pred.transformed, test.target, "MSIE-" + tag);
  std::vector<double> actual_currency;
  for (double y : test.target) actual_currency.push_back(model.target_transform.invert(y));
  double mae_currency = mae(pred.currency, actual_currency);

  write_file(ctx.out / "metrics.json", metric_report_json(report, mae_currency));
  finish_stage(ctx, "evaluate:" + tag,
               {(ctx.out / ("price_model_" + tag + ".json")).string(),
                (ctx.out / "fused_test.tsv").string()},
               stage_seed(ctx.config.seed, "evaluate"), {"metrics.json"});
}

void stage_ablate(const StageContext& ctx) {
  ListingTable listings = parse_listings(in_listings(ctx));
  ReviewTable reviews = parse_reviews(in_reviews(ctx));
  PoiTable pois = parse_pois(in_pois(ctx));

  PipelineOptions opts = to_pipeline_options(ctx.config);
  PipelineFeatures features = build_features(listings, reviews, pois, opts);
  std::vector<Variant> variants;
  for (const auto& v : ctx.config.ablation_variants) variants.push_back(variant_from_name(v));
  std::vector<AblationEntry> entries = run_ablation(features, variants, opts);

  write_file(ctx.out / "ablation_report.csv", ablation_report_csv(entries));
  write_file(ctx.out / "ablation_report.json", ablation_report_json(entries));
  finish_stage(ctx, "ablate", {in_listings(ctx), in_reviews(ctx), in_pois(ctx)},
               stage_seed(ctx.config.seed, "train"),
               {"ablation_report.csv", "ablation_report.json"});
}

void stage_predict(const StageContext& ctx, Variant variant) {
  std::string tag = variant_name(variant);
  PriceModel model = price_model_from_json(read_file(ctx.out / ("price_model_" + tag + ".json")));
  FeatureBundle full = read_fused(ctx.out / "fused_test.tsv");
  FeatureBundle rows = restrict_variant(full, variant);
  Predictions pred = predict(model, rows);

  std::vector<std::vector<std::string>> records;
  for (std::size_t i = 0; i < rows.listing_ids.size(); ++i) {
    records.push_back({rows.listing_ids[i], format_double(pred.transformed[i]),
                       format_double(pred.currency[i])});
  }
  write_csv(ctx.out / "predictions.csv",
            {"listing_id", "predicted_transformed", "predicted_price"}, records);
  finish_stage(ctx, "predict:" + tag,
               {(ctx.out / ("price_model_" + tag + ".json")).string(),
                (ctx.out / "fused_test.tsv").string()},
               stage_seed(ctx.config.seed, "predict"), {"predictions.csv"});
}

void stage_all(const StageContext& ctx) {
  stage_ingest(ctx);
  stage_stats(ctx);
  stage_select_features(ctx);
  stage_train_text(ctx);
  stage_sentiment(ctx);
  stage_build_graphs(ctx);
  stage_embed_spatial(ctx);
  stage_fuse(ctx);
  stage_train(ctx, Variant::STP);
  stage_evaluate(ctx, Variant::STP);
}

}  // namespace msie
