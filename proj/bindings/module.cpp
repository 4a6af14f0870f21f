#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "msie/error.hpp"
#include "msie/fusion.hpp"
#include "msie/metrics.hpp"
#include "msie/pipeline.hpp"
#include "msie/sentiment.hpp"
#include "msie/spatial.hpp"
#include "msie/stat_features.hpp"
#include "msie/synth.hpp"
#include "msie/text_embedding.hpp"

namespace py = pybind11;
using namespace msie;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw DataError("DimensionMismatch", "ragged matrix");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i));
  }
  return m;
}

py::dict lasso_fit_py(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                      double alpha) {
  LassoModel model = lasso_fit(to_matrix(x), y, alpha);
  py::dict out;
  out["weights"] = model.weights;
  out["intercept"] = model.intercept;
  out["converged"] = model.converged;
  out["selected_mask"] = model.selected_mask;
  return out;
}

py::dict train_cbow_py(const std::vector<std::vector<std::string>>& corpus, int dim, int window,
                       int negatives, int epochs, int min_count, std::uint64_t seed) {
  Vocab vocab = build_vocab(corpus, min_count);
  CbowOptions opts;
  opts.dim = dim;
  opts.window = window;
  opts.negatives = negatives;
  opts.epochs = epochs;
  opts.seed = seed;
  CbowTrainResult res = train_cbow(corpus, vocab, opts);
  py::dict vectors;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const double* row = res.vectors.input.row(i);
    vectors[py::str(vocab.tokens[i])] =
        std::vector<double>(row, row + static_cast<std::size_t>(dim));
  }
  return vectors;
}

std::vector<py::dict> ablate_files_py(const std::string& listings, const std::string& reviews,
                                      const std::string& pois, std::uint64_t seed,
                                      std::size_t regressor_epochs, std::size_t sdne_epochs,
                                      int cbow_epochs) {
  PipelineOptions opts;
  opts.seed = seed;
  opts.regressor.epochs = regressor_epochs;
  opts.spatial.sdne.epochs = sdne_epochs;
  opts.cbow.epochs = cbow_epochs;
  PipelineFeatures features = build_features(parse_listings(listings), parse_reviews(reviews),
                                             parse_pois(pois), opts);
  auto entries = run_ablation(features, {Variant::S, Variant::ST, Variant::STP}, opts);
  std::vector<py::dict> out;
  for (const auto& e : entries) {
    py::dict d;
    d["variant"] = e.report.variant;
    if (!e.error.empty()) {
      d["error"] = e.error;
    } else {
      d["mae"] = e.report.mae;
      d["mse"] = e.report.mse;
      d["rmse"] = e.report.rmse;
      d["r2"] = e.report.r2;
      d["n"] = e.report.n;
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multi-source information embedding pipeline (C++ core)";

  py::register_exception<ConfigError>(m, "MsieConfigError");
  py::register_exception<DataError>(m, "MsieDataError");
  py::register_exception<NumericError>(m, "MsieNumericError");

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
  m.def(
      "haversine_km",
      [](double lat1, double lon1, double lat2, double lon2) {
        return haversine_km({lat1, lon1}, {lat2, lon2});
      },
      py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));

  m.def("mae", [](const std::vector<double>& a, const std::vector<double>& b) { return mae(a, b); });
  m.def("mse", [](const std::vector<double>& a, const std::vector<double>& b) { return mse(a, b); });
  m.def("rmse",
        [](const std::vector<double>& a, const std::vector<double>& b) { return rmse(a, b); });
  m.def("r2", [](const std::vector<double>& a, const std::vector<double>& b) { return r2(a, b); });

  m.def("lasso_fit", &lasso_fit_py, py::arg("x"), py::arg("y"), py::arg("alpha"));

  m.def("train_cbow", &train_cbow_py, py::arg("corpus"), py::arg("dim") = 100,
        py::arg("window") = 5, py::arg("negatives") = 5, py::arg("epochs") = 5,
        py::arg("min_count") = 2, py::arg("seed") = 42);

  py::class_<NbModel>(m, "NbModel")
      .def("score_tokens",
           [](const NbModel& model, const std::vector<std::string>& tokens) {
             return score_review(model, tokens);
           })
      .def("score", [](const NbModel& model, const std::string& text) {
        return score_review(model, tokenize(text));
      });
  m.def(
      "train_nb",
      [](const std::vector<std::pair<std::string, bool>>& docs, double smoothing) {
        std::vector<LabeledDoc> labeled;
        for (const auto& [text, positive] : docs) labeled.push_back({tokenize(text), positive});
        return train_nb(labeled, smoothing);
      },
      py::arg("docs"), py::arg("smoothing") = 1.0);

  m.def(
      "synth_generate",
      [](const std::string& out_dir, std::uint64_t seed, std::size_t n_listings,
         std::size_t n_pois_per_category, double stat_w, double text_w, double spatial_w,
         double noise_sd) {
        SynthConfig config;
        config.seed = seed;
        config.n_listings = n_listings;
        config.n_pois_per_category = n_pois_per_category;
        config.stat_w = stat_w;
        config.text_w = text_w;
        config.spatial_w = spatial_w;
        config.noise_sd = noise_sd;
        synth_generate(config, out_dir);
      },
      py::arg("out_dir"), py::arg("seed") = 42, py::arg("n_listings") = 2000,
      py::arg("n_pois_per_category") = 400, py::arg("stat_w") = SynthConfig{}.stat_w,
      py::arg("text_w") = SynthConfig{}.text_w, py::arg("spatial_w") = SynthConfig{}.spatial_w,
      py::arg("noise_sd") = SynthConfig{}.noise_sd);

  m.def("run_ablation", &ablate_files_py, py::arg("listings"), py::arg("reviews"),
        py::arg("pois"), py::arg("seed") = 42, py::arg("regressor_epochs") = 120,
        py::arg("sdne_epochs") = 50, py::arg("cbow_epochs") = 5);
}
