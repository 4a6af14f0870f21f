#include "msie/text_embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "msie/csv.hpp"
#include "msie/error.hpp"
#include "msie/neural.hpp"

namespace msie {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (c >= 0x80) {
      cur.push_back(ch);
    } else if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      if (!cur.empty()) {
        tokens.push_back(std::move(cur));
        cur.clear();
      }
    }
    // ASCII punctuation is dropped
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& doc : corpus)
    for (const auto& tok : doc) ++counts[tok];

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [tok, cnt] : counts)
    if (cnt >= min_count) kept.emplace_back(tok, cnt);
  if (kept.empty()) throw DataError("EmptyVocab", "no token reached min_count");

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab v;
  v.tokens.reserve(kept.size());
  v.counts.reserve(kept.size());
  double total = 0.0;
  for (auto& [tok, cnt] : kept) {
    v.index.emplace(tok, static_cast<int>(v.tokens.size()));
    v.tokens.push_back(tok);
    v.counts.push_back(cnt);
    total += std::pow(static_cast<double>(cnt), 0.75);
  }
  v.unigram.reserve(kept.size());
  v.unigram_cdf.reserve(kept.size());
  double acc = 0.0;
  for (auto cnt : v.counts) {
    double p = std::pow(static_cast<double>(cnt), 0.75) / total;
    v.unigram.push_back(p);
    acc += p;
    v.unigram_cdf.push_back(acc);
  }
  v.unigram_cdf.back() = 1.0;
  return v;
}

int sample_unigram(const Vocab& vocab, Rng& rng) {
  double u = rng.uniform();
  auto it = std::lower_bound(vocab.unigram_cdf.begin(), vocab.unigram_cdf.end(), u);
  if (it == vocab.unigram_cdf.end()) --it;
  return static_cast<int>(it - vocab.unigram_cdf.begin());
}

WordVectors init_word_vectors(const Vocab& vocab, int dim, Rng& rng) {
  WordVectors wv;
  wv.dim = dim;
  wv.input = Matrix(vocab.size(), static_cast<std::size_t>(dim));
  wv.output = Matrix(vocab.size(), static_cast<std::size_t>(dim));
  double half = 0.5 / static_cast<double>(dim);
  for (double& v : wv.input.data) v = rng.uniform(-half, half);
  return wv;
}

namespace {

std::vector<double> context_mean(const WordVectors& wv, const std::vector<int>& context) {
  std::vector<double> x(static_cast<std::size_t>(wv.dim), 0.0);
  for (int id : context) {
    const double* row = wv.input.row(static_cast<std::size_t>(id));
    for (int k = 0; k < wv.dim; ++k) x[static_cast<std::size_t>(k)] += row[k];
  }
  double inv = 1.0 / static_cast<double>(context.size());
  for (double& v : x) v *= inv;
  return x;
}

}  // namespace

double cbow_objective(const WordVectors& wv, const std::vector<int>& context, int center,
                      const std::vector<int>& negatives) {
  std::vector<double> x = context_mean(wv, context);
  auto dot_out = [&](int id) {
    const double* row = wv.output.row(static_cast<std::size_t>(id));
    double s = 0.0;
    for (int k = 0; k < wv.dim; ++k) s += x[static_cast<std::size_t>(k)] * row[k];
    return s;
  };
  double obj = log_sigmoid(dot_out(center));
  for (int u : negatives) obj += log_sigmoid(-dot_out(u));
  return obj;
}

CbowStepGrads cbow_gradients(const WordVectors& wv, const std::vector<int>& context, int center,
                             const std::vector<int>& negatives) {
  const int dim = wv.dim;
  std::vector<double> x = context_mean(wv, context);

  CbowStepGrads g;
  g.output_ids.reserve(1 + negatives.size());
  g.output_ids.push_back(center);
  for (int u : negatives) g.output_ids.push_back(u);
  g.d_output = Matrix(g.output_ids.size(), static_cast<std::size_t>(dim));

  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);  // dObj/dx
  for (std::size_t t = 0; t < g.output_ids.size(); ++t) {
    int id = g.output_ids[t];
    const double* theta = wv.output.row(static_cast<std::size_t>(id));
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += x[static_cast<std::size_t>(k)] * theta[k];
    double label = t == 0 ? 1.0 : 0.0;
    double coeff = label - sigmoid(s);
    g.objective += label == 1.0 ? log_sigmoid(s) : log_sigmoid(-s);
    double* out = g.d_output.row(t);
    for (int k = 0; k < dim; ++k) {
      out[k] += coeff * x[static_cast<std::size_t>(k)];
      e[static_cast<std::size_t>(k)] += coeff * theta[k];
    }
  }

  // x is the mean of the context rows, so each context vector sees e/|context|
  double inv = 1.0 / static_cast<double>(context.size());
  g.d_context = Matrix(context.size(), static_cast<std::size_t>(dim));
  for (std::size_t c = 0; c < context.size(); ++c) {
    double* row = g.d_context.row(c);
    for (int k = 0; k < dim; ++k) row[k] = e[static_cast<std::size_t>(k)] * inv;
  }
  return g;
}

CbowTrainResult train_cbow(const std::vector<std::vector<std::string>>& corpus,
                           const Vocab& vocab, const CbowOptions& opts) {
  if (opts.negatives < 1) throw ConfigError("BadNegatives", "need negatives >= 1");
  if (opts.dim < 1) throw ConfigError("BadDim", "need dim >= 1");

  Rng rng(opts.seed);
  CbowTrainResult result;
  result.vectors = init_word_vectors(vocab, opts.dim, rng);
  WordVectors& wv = result.vectors;

  // map documents to in-vocab id streams once
  std::vector<std::vector<int>> docs;
  docs.reserve(corpus.size());
  std::size_t positions = 0;
  for (const auto& doc : corpus) {
    std::vector<int> ids;
    ids.reserve(doc.size());
    for (const auto& tok : doc) {
      int id = vocab.lookup(tok);
      if (id >= 0) ids.push_back(id);
    }
    if (ids.size() >= 2) positions += ids.size();
    docs.push_back(std::move(ids));
  }

  const double total_steps =
      std::max(1.0, static_cast<double>(positions) * static_cast<double>(opts.epochs));
  std::size_t processed = 0;
  std::vector<int> context, negatives;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    double obj_sum = 0.0;
    std::size_t obj_n = 0;
    for (const auto& ids : docs) {
      if (ids.size() < 2) continue;
      for (std::size_t t = 0; t < ids.size(); ++t) {
        double lr = std::max(opts.min_learning_rate,
                             opts.learning_rate *
                                 (1.0 - static_cast<double>(processed) / total_steps));
        ++processed;
        context.clear();
        std::size_t lo = t >= static_cast<std::size_t>(opts.window)
                             ? t - static_cast<std::size_t>(opts.window)
                             : 0;
        std::size_t hi = std::min(ids.size() - 1, t + static_cast<std::size_t>(opts.window));
        for (std::size_t c = lo; c <= hi; ++c)
          if (c != t) context.push_back(ids[c]);
        if (context.empty()) continue;

        int center = ids[t];
        negatives.clear();
        for (int k = 0; k < opts.negatives; ++k) {
          int u = sample_unigram(vocab, rng);
          for (int tries = 0; u == center && tries < 100; ++tries) u = sample_unigram(vocab, rng);
          if (u == center) u = (center + 1) % static_cast<int>(vocab.size());
          negatives.push_back(u);
        }

        CbowStepGrads g = cbow_gradients(wv, context, center, negatives);
        if (!std::isfinite(g.objective))
          throw NumericError("NonFinite", "cbow objective diverged; lower the learning rate");
        obj_sum += g.objective;
        ++obj_n;

        for (std::size_t c = 0; c < context.size(); ++c) {
          double* row = wv.input.row(static_cast<std::size_t>(context[c]));
          const double* d = g.d_context.row(c);
          for (int k = 0; k < opts.dim; ++k) row[k] += lr * d[k];
        }
        for (std::size_t o = 0; o < g.output_ids.size(); ++o) {
          double* row = wv.output.row(static_cast<std::size_t>(g.output_ids[o]));
          const double* d = g.d_output.row(o);
          for (int k = 0; k < opts.dim; ++k) row[k] += lr * d[k];
        }
      }
    }
    result.epoch_objective.push_back(obj_n ? obj_sum / static_cast<double>(obj_n) : 0.0);
  }
  return result;
}

DocumentVector embed_document(const std::vector<std::string>& tokens, const WordVectors& wv,
                              const Vocab& vocab) {
  DocumentVector dv;
  dv.values.assign(static_cast<std::size_t>(wv.dim), 0.0);
  for (const auto& tok : tokens) {
    int id = vocab.lookup(tok);
    if (id < 0) continue;
    const double* row = wv.input.row(static_cast<std::size_t>(id));
    for (int k = 0; k < wv.dim; ++k) dv.values[static_cast<std::size_t>(k)] += row[k];
    ++dv.in_vocab_tokens;
  }
  if (dv.in_vocab_tokens > 0) {
    double inv = 1.0 / static_cast<double>(dv.in_vocab_tokens);
    for (double& v : dv.values) v *= inv;
  }
  return dv;
}

TextFeatures embed_listing_texts(const ListingTable& listings, const WordVectors& wv,
                                 const Vocab& vocab) {
  TextFeatures tf;
  const std::size_t n = listings.rows.size();
  tf.listing_ids.reserve(n);
  tf.description_vectors = Matrix(n, static_cast<std::size_t>(wv.dim));
  tf.host_about_vectors = Matrix(n, static_cast<std::size_t>(wv.dim));
  tf.empty_description.resize(n);
  tf.empty_host_about.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = listings.rows[i];
    tf.listing_ids.push_back(row.listing_id);
    DocumentVector l = embed_document(tokenize(row.description), wv, vocab);
    DocumentVector h = embed_document(tokenize(row.host_about), wv, vocab);
    std::copy(l.values.begin(), l.values.end(), tf.description_vectors.row(i));
    std::copy(h.values.begin(), h.values.end(), tf.host_about_vectors.row(i));
    tf.empty_description[i] = l.in_vocab_tokens == 0;
    tf.empty_host_about[i] = h.in_vocab_tokens == 0;
  }
  return tf;
}

void write_word_vectors(const std::filesystem::path& path, const WordVectors& wv,
                        const Vocab& vocab) {
  std::string out = std::to_string(vocab.size()) + " " + std::to_string(wv.dim) + "\n";
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out += vocab.tokens[i];
    const double* row = wv.input.row(i);
    for (int k = 0; k < wv.dim; ++k) {
      out.push_back('\t');
      out += format_double(row[k]);
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      break;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

double parse_double_or_throw(const std::string& s) {
  double v;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DataError("BadNumber", s);
  return v;
}

}  // namespace

std::pair<WordVectors, Vocab> read_word_vectors(const std::filesystem::path& path) {
  auto lines = split_lines(read_file(path));
  if (lines.empty()) throw DataError("EmptyTable", path.string());
  std::size_t vsize;
  int dim;
  if (std::sscanf(lines[0].c_str(), "%zu %d", &vsize, &dim) != 2)
    throw DataError("BadHeader", lines[0]);
  if (lines.size() < vsize + 1) throw DataError("Truncated", path.string());

  Vocab vocab;
  WordVectors wv;
  wv.dim = dim;
  wv.input = Matrix(vsize, static_cast<std::size_t>(dim));
  wv.output = Matrix(vsize, static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < vsize; ++i) {
    auto parts = split_tabs(lines[i + 1]);
    if (parts.size() != static_cast<std::size_t>(dim) + 1)
      throw DataError("BadRow", lines[i + 1]);
    vocab.index.emplace(parts[0], static_cast<int>(i));
    vocab.tokens.push_back(parts[0]);
    vocab.counts.push_back(1);
    for (int k = 0; k < dim; ++k)
      wv.input(i, static_cast<std::size_t>(k)) = parse_double_or_throw(parts[static_cast<std::size_t>(k) + 1]);
  }
  return {std::move(wv), std::move(vocab)};
}

void write_text_features(const std::filesystem::path& path, const TextFeatures& tf) {
  const std::size_t dim = tf.description_vectors.cols;
  std::string out = "listing_id";
  for (std::size_t k = 0; k < dim; ++k) out += "\tl_" + std::to_string(k + 1);
  for (std::size_t k = 0; k < dim; ++k) out += "\th_" + std::to_string(k + 1);
  out += "\tempty_description\tempty_host_about\n";
  for (std::size_t i = 0; i < tf.listing_ids.size(); ++i) {
    out += tf.listing_ids[i];
    for (std::size_t k = 0; k < dim; ++k) {
      out.push_back('\t');
      out += format_double(tf.description_vectors(i, k));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      out.push_back('\t');
      out += format_double(tf.host_about_vectors(i, k));
    }
    out += tf.empty_description[i] ? "\t1" : "\t0";
    out += tf.empty_host_about[i] ? "\t1\n" : "\t0\n";
  }
  write_file(path, out);
}

TextFeatures read_text_features(const std::filesystem::path& path) {
  auto lines = split_lines(read_file(path));
  if (lines.empty()) throw DataError("EmptyTable", path.string());
  auto header = split_tabs(lines[0]);
  if (header.size() < 3 || (header.size() - 3) % 2 != 0)
    throw DataError("BadHeader", path.string());
  const std::size_t dim = (header.size() - 3) / 2;

  TextFeatures tf;
  const std::size_t n = lines.size() - 1;
  tf.description_vectors = Matrix(n, dim);
  tf.host_about_vectors = Matrix(n, dim);
  tf.empty_description.resize(n);
  tf.empty_host_about.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto parts = split_tabs(lines[i + 1]);
    if (parts.size() != header.size()) throw DataError("BadRow", lines[i + 1]);
    tf.listing_ids.push_back(parts[0]);
    for (std::size_t k = 0; k < dim; ++k) {
      tf.description_vectors(i, k) = parse_double_or_throw(parts[1 + k]);
      tf.host_about_vectors(i, k) = parse_double_or_throw(parts[1 + dim + k]);
    }
    tf.empty_description[i] = parts[1 + 2 * dim] == "1";
    tf.empty_host_about[i] = parts[2 + 2 * dim] == "1";
  }
  return tf;
}

}  // namespace msie
