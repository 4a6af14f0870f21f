#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "msie/corpus_io.hpp"
#include "msie/matrix.hpp"
#include "msie/rng.hpp"

namespace msie {

// Lowercased, punctuation-stripped, whitespace-split. Bytes >= 0x80 pass
// through so UTF-8 words survive; ASCII punctuation is deleted in place.
std::vector<std::string> tokenize(std::string_view text);

struct Vocab {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> tokens;       // index -> token
  std::vector<std::int64_t> counts;
  std::vector<double> unigram;           // counts^0.75, normalized
  std::vector<double> unigram_cdf;

  std::size_t size() const { return tokens.size(); }
  int lookup(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? -1 : it->second;
  }
};

// Tokens below min_count are excluded; indices ordered by count desc, then
// token asc. Throws EmptyVocab when nothing survives.
Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count);

// Draw from the count^0.75 unigram distribution.
int sample_unigram(const Vocab& vocab, Rng& rng);

struct WordVectors {
  int dim = 0;
  Matrix input;   // v(c~), V x D
  Matrix output;  // theta, V x D

  bool operator==(const WordVectors& o) const {
    return dim == o.dim && input == o.input && output == o.output;
  }
};

// Input vectors uniform(-0.5/D, 0.5/D), output vectors zero.
WordVectors init_word_vectors(const Vocab& vocab, int dim, Rng& rng);

struct CbowOptions {
  int dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  int min_count = 2;  // consumed by vocab construction
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  std::uint64_t seed = 42;
};

// One training example: gradients of the negative-sampling objective
//   log sigmoid(x.theta_c) + sum_u log sigmoid(-x.theta_u)
// where x is the MEAN of the context input vectors. Gradients are exact
// (context updates carry the 1/|context| factor), ascent direction.
struct CbowStepGrads {
  double objective = 0.0;
  Matrix d_context;               // |context| x D rows, aligned to context ids
  std::vector<int> output_ids;    // center followed by negatives
  Matrix d_output;                // |output_ids| x D
};

double cbow_objective(const WordVectors& wv, const std::vector<int>& context, int center,
                      const std::vector<int>& negatives);
CbowStepGrads cbow_gradients(const WordVectors& wv, const std::vector<int>& context, int center,
                             const std::vector<int>& negatives);

struct CbowTrainResult {
  WordVectors vectors;
  std::vector<double> epoch_objective;  // mean pre-update step objective per epoch
};

CbowTrainResult train_cbow(const std::vector<std::vector<std::string>>& corpus,
                           const Vocab& vocab, const CbowOptions& opts);

struct DocumentVector {
  std::vector<double> values;
  std::size_t in_vocab_tokens = 0;  // 0 flags an all-OOV or empty document
};

DocumentVector embed_document(const std::vector<std::string>& tokens, const WordVectors& wv,
                              const Vocab& vocab);

struct TextFeatures {
  std::vector<std::string> listing_ids;
  Matrix description_vectors;  // L, n x D
  Matrix host_about_vectors;   // H, n x D
  std::vector<bool> empty_description;
  std::vector<bool> empty_host_about;
};

TextFeatures embed_listing_texts(const ListingTable& listings, const WordVectors& wv,
                                 const Vocab& vocab);

// "V D" header, then "token\tv1\t...\tvD" (input vectors).
void write_word_vectors(const std::filesystem::path& path, const WordVectors& wv,
                        const Vocab& vocab);
std::pair<WordVectors, Vocab> read_word_vectors(const std::filesystem::path& path);

void write_text_features(const std::filesystem::path& path, const TextFeatures& tf);
TextFeatures read_text_features(const std::filesystem::path& path);

}  // namespace msie
