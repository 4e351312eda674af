#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/comparative/candidates.hpp"
#include "scistory/text/tagger.hpp"

namespace scistory::comparative {

struct ClassSequentialFeature {
  seqmine::ItemSeq pattern;
  double support_ratio = 0.0;
  double confidence = 0.0;  // max over classes of P(class | pattern)
  Label majority_class = Label::non_comparative;

  bool operator==(const ClassSequentialFeature&) const = default;
};

inline constexpr double kDefaultMinSupport = 0.1;
inline constexpr double kDefaultMinConfidence = 0.6;

/// Frequent patterns over labeled candidates that pass both thresholds.
/// Support is the fraction of candidates containing the pattern; ties in the
/// class vote go to non_comparative. Patterns are capped at `max_itemsets`.
/// Throws Error{training_data} for an empty or unlabeled candidate set.
std::vector<ClassSequentialFeature> mine_features(const std::vector<CandidateSequence>& labeled,
                                                  double min_sup = kDefaultMinSupport,
                                                  double min_conf = kDefaultMinConfidence,
                                                  std::size_t max_itemsets = 2 * kDefaultRadius + 1);

// Bit j is set iff some candidate contains features[j].pattern.
std::vector<std::uint8_t> featurize(const std::vector<CandidateSequence>& candidates,
                                    const std::vector<ClassSequentialFeature>& features);

struct LabeledSentence {
  std::vector<text::Token> tokens;
  Label label = Label::non_comparative;
  std::string text;
};

// `label<TAB>sentence` lines with label comp or noncomp; sentences are
// annotated with `tagger`. Throws Error{parse} naming the bad line.
std::vector<LabeledSentence> parse_corpus(std::string_view tsv, const text::PosTagger& tagger);
std::vector<LabeledSentence> parse_corpus(std::string_view tsv);
const std::vector<LabeledSentence>& bundled_corpus();

struct TrainOptions {
  int radius = kDefaultRadius;
  double min_sup = kDefaultMinSupport;
  double min_conf = kDefaultMinConfidence;
  double smoothing = 1.0;  // additive pseudo-count for priors and feature probabilities
};

struct Prediction {
  Label label = Label::non_comparative;
  double confidence = 0.0;  // P(comparative | x)

  bool operator==(const Prediction&) const = default;
};

/// Bernoulli naive Bayes over mined sequence features, Laplace alpha = 1.
/// Immutable after training and safe to share between threads.
class BayesModel {
 public:
  static constexpr std::size_t kComp = 0;
  static constexpr std::size_t kNonComp = 1;

  BayesModel() = default;

  const std::vector<ClassSequentialFeature>& features() const noexcept { return features_; }
  const KeywordLexicon& lexicon() const noexcept { return lexicon_; }
  int radius() const noexcept { return radius_; }
  // Indexed by kComp / kNonComp.
  const std::array<double, 2>& log_priors() const noexcept { return log_priors_; }
  // [feature][class][value]
  const std::vector<std::array<std::array<double, 2>, 2>>& log_likelihoods() const noexcept { return log_lik_; }

  // Posterior of the comparative class for a feature vector.
  double posterior(const std::vector<std::uint8_t>& x) const;

  nlohmann::json to_json() const;
  static BayesModel from_json(const nlohmann::json& j);  // Error{schema} on bad shape
  static BayesModel load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const BayesModel&) const = default;

 private:
  friend BayesModel train(const std::vector<LabeledSentence>&, const KeywordLexicon&, const TrainOptions&);

  std::vector<ClassSequentialFeature> features_;
  KeywordLexicon lexicon_;
  int radius_ = kDefaultRadius;
  std::array<double, 2> log_priors_{};
  std::vector<std::array<std::array<double, 2>, 2>> log_lik_;
};

/// Mines features from every sentence's candidates and fits class priors
/// (n_c + 1) / (N + 2) and likelihoods (count + 1) / (N_c + 2) over all
/// sentences, keyword-free ones included. Throws Error{training_data} when
/// either class is absent or no candidate is found.
BayesModel train(const std::vector<LabeledSentence>& corpus, const KeywordLexicon& lexicon,
                 const TrainOptions& options = {});

// Keyword-free sentences are non_comparative with confidence 0. Otherwise
// the label is comparative iff the posterior exceeds 0.5.
Prediction predict(const BayesModel& model, const std::vector<text::Token>& tokens);

struct CrossValidation {
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation
  std::vector<double> per_fold;
};

// Stratified fold assignment from a seeded shuffle: each class is shuffled
// and dealt round-robin, continuing the deal across classes.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<Label>& labels, int folds,
                                                       std::uint64_t seed);

/// Features are re-mined on each training split. Throws Error{parameter}
/// when folds < 2 or the corpus has fewer items than folds.
CrossValidation cross_validate(const std::vector<LabeledSentence>& corpus, const KeywordLexicon& lexicon,
                               int folds = 5, std::uint64_t seed = 42, const TrainOptions& options = {});

}  // namespace scistory::comparative
