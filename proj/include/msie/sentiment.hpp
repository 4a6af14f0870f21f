#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "msie/corpus_io.hpp"

namespace msie {

struct LabeledDoc {
  std::vector<std::string> tokens;
  bool positive = false;
};

struct NbModel {
  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  std::unordered_map<std::string, int> vocab_index;
  std::vector<std::string> vocab_tokens;
  std::vector<double> log_cond_pos;  // log P(token | pos) with Laplace smoothing
  std::vector<double> log_cond_neg;
  double smoothing = 1.0;
};

// Multinomial NB with Laplace smoothing; throws SingleClass when only one
// label is present.
NbModel train_nb(const std::vector<LabeledDoc>& docs, double smoothing = 1.0);

// P(pos | tokens) computed in log space; OOV tokens are skipped and an empty
// or all-OOV document falls back to the prior-only score.
double score_review(const NbModel& model, const std::vector<std::string>& tokens);

struct SentimentVector {
  std::vector<std::string> listing_ids;
  std::vector<double> scores;       // r in [0,1]
  std::vector<std::size_t> review_counts;
  std::vector<bool> zero_review_flag;
};

// Per-listing mean review score, aligned to the listing table order.
// Listings with no reviews get the neutral 0.5 plus a flag.
SentimentVector listing_sentiment(const NbModel& model, const ListingTable& listings,
                                  const ReviewTable& reviews);

// ~200 short labeled review templates used as the default training corpus.
const std::vector<std::pair<std::string, bool>>& builtin_labeled_corpus();

// One labeled doc per CSV row: label ("pos"/"neg"), text.
std::vector<LabeledDoc> load_labeled_corpus(const std::filesystem::path& path);

void write_sentiment(const std::filesystem::path& path, const SentimentVector& sv);
SentimentVector read_sentiment(const std::filesystem::path& path);

}  // namespace msie
