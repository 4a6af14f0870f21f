#include "msie/sentiment.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "msie/csv.hpp"
#include "msie/error.hpp"
#include "msie/neural.hpp"
#include "msie/text_embedding.hpp"

namespace msie {

NbModel train_nb(const std::vector<LabeledDoc>& docs, double smoothing) {
  if (smoothing <= 0.0) throw ConfigError("BadSmoothing", "smoothing must be > 0");
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& d : docs) (d.positive ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw DataError("SingleClass", "need both positive and negative documents");

  NbModel m;
  m.smoothing = smoothing;
  std::vector<std::int64_t> count_pos, count_neg;
  for (const auto& d : docs) {
    for (const auto& tok : d.tokens) {
      auto [it, inserted] = m.vocab_index.emplace(tok, static_cast<int>(m.vocab_tokens.size()));
      if (inserted) {
        m.vocab_tokens.push_back(tok);
        count_pos.push_back(0);
        count_neg.push_back(0);
      }
      auto idx = static_cast<std::size_t>(it->second);
      (d.positive ? count_pos[idx] : count_neg[idx])++;
    }
  }
  std::int64_t tokens_pos = 0, tokens_neg = 0;
  for (std::size_t i = 0; i < m.vocab_tokens.size(); ++i) {
    tokens_pos += count_pos[i];
    tokens_neg += count_neg[i];
  }
  const double v = static_cast<double>(m.vocab_tokens.size());
  m.log_cond_pos.resize(m.vocab_tokens.size());
  m.log_cond_neg.resize(m.vocab_tokens.size());
  for (std::size_t i = 0; i < m.vocab_tokens.size(); ++i) {
    m.log_cond_pos[i] = std::log((static_cast<double>(count_pos[i]) + smoothing) /
                                 (static_cast<double>(tokens_pos) + smoothing * v));
    m.log_cond_neg[i] = std::log((static_cast<double>(count_neg[i]) + smoothing) /
                                 (static_cast<double>(tokens_neg) + smoothing * v));
  }
  const double total = static_cast<double>(n_pos + n_neg);
  m.log_prior_pos = std::log(static_cast<double>(n_pos) / total);
  m.log_prior_neg = std::log(static_cast<double>(n_neg) / total);
  return m;
}

double score_review(const NbModel& model, const std::vector<std::string>& tokens) {
  double log_pos = model.log_prior_pos;
  double log_neg = model.log_prior_neg;
  for (const auto& tok : tokens) {
    auto it = model.vocab_index.find(tok);
    if (it == model.vocab_index.end()) continue;
    auto idx = static_cast<std::size_t>(it->second);
    log_pos += model.log_cond_pos[idx];
    log_neg += model.log_cond_neg[idx];
  }
  // P(pos|c) = 1/(1+gamma), gamma = exp(log_neg - log_pos)
  return sigmoid(log_pos - log_neg);
}

SentimentVector listing_sentiment(const NbModel& model, const ListingTable& listings,
                                  const ReviewTable& reviews) {
  std::unordered_map<std::string, std::pair<double, std::size_t>> sums;
  sums.reserve(listings.rows.size());
  for (const auto& l : listings.rows) sums.emplace(l.listing_id, std::make_pair(0.0, 0));
  for (const auto& r : reviews.rows) {
    auto it = sums.find(r.listing_id);
    if (it == sums.end()) continue;  // review for an unknown listing; ignored here
    it->second.first += score_review(model, tokenize(r.text));
    it->second.second += 1;
  }

  SentimentVector sv;
  sv.listing_ids.reserve(listings.rows.size());
  for (const auto& l : listings.rows) {
    const auto& [sum, q] = sums.at(l.listing_id);
    sv.listing_ids.push_back(l.listing_id);
    sv.review_counts.push_back(q);
    sv.zero_review_flag.push_back(q == 0);
    sv.scores.push_back(q == 0 ? 0.5 : sum / static_cast<double>(q));
  }
  return sv;
}

std::vector<LabeledDoc> load_labeled_corpus(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path);
  if (csv.header.size() < 2 || csv.header[0] != "label" || csv.header[1] != "text")
    throw DataError("MissingColumn", "labeled corpus needs label,text");
  std::vector<LabeledDoc> docs;
  for (const auto& rec : csv.records) {
    if (rec.size() != 2) continue;
    bool pos;
    if (rec[0] == "pos") pos = true;
    else if (rec[0] == "neg") pos = false;
    else throw DataError("BadLabel", rec[0]);
    docs.push_back({tokenize(rec[1]), pos});
  }
  if (docs.empty()) throw DataError("EmptyTable", path.string());
  return docs;
}

void write_sentiment(const std::filesystem::path& path, const SentimentVector& sv) {
  std::vector<std::vector<std::string>> records;
  records.reserve(sv.listing_ids.size());
  for (std::size_t i = 0; i < sv.listing_ids.size(); ++i) {
    records.push_back({sv.listing_ids[i], format_double(sv.scores[i]),
                       std::to_string(sv.review_counts[i]),
                       sv.zero_review_flag[i] ? "1" : "0"});
  }
  write_csv(path, {"listing_id", "r", "q", "zero_review_flag"}, records);
}

SentimentVector read_sentiment(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path);
  if (csv.header != std::vector<std::string>{"listing_id", "r", "q", "zero_review_flag"})
    throw DataError("BadHeader", path.string());
  SentimentVector sv;
  for (const auto& rec : csv.records) {
    if (rec.size() != 4) throw DataError("BadRow", path.string());
    sv.listing_ids.push_back(rec[0]);
    double r;
    auto res = std::from_chars(rec[1].data(), rec[1].data() + rec[1].size(), r);
    if (res.ec != std::errc()) throw DataError("BadNumber", rec[1]);
    sv.scores.push_back(r);
    sv.review_counts.push_back(std::stoull(rec[2]));
    sv.zero_review_flag.push_back(rec[3] == "1");
  }
  return sv;
}

}  // namespace msie
