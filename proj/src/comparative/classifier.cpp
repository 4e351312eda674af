#include "scistory/comparative/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "scistory/error.hpp"
#include "scistory/resources.hpp"
#include "scistory/seqmine/prefixspan.hpp"
#include "scistory/text/annotate.hpp"

namespace scistory::comparative {
namespace {

using nlohmann::json;

constexpr double kConfidenceSlack = 1e-12;

std::size_t class_index(Label l) { return l == Label::comparative ? BayesModel::kComp : BayesModel::kNonComp; }

json pattern_to_json(const seqmine::ItemSeq& p) {
  json arr = json::array();
  for (const auto& set : p) arr.push_back(set.symbols());
  return arr;
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::schema, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected number");
  return j.get<double>();
}

seqmine::ItemSeq pattern_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected array of itemsets");
  seqmine::ItemSeq out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto ipath = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) schema_error(ipath, "expected non-empty array of strings");
    std::vector<std::string> syms;
    for (const auto& s : j[i]) {
      if (!s.is_string()) schema_error(ipath, "expected string symbols");
      syms.push_back(s.get<std::string>());
    }
    out.emplace_back(std::move(syms));
  }
  return out;
}

std::array<double, 2> value_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [log P(0), log P(1)]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

}  // namespace

std::vector<ClassSequentialFeature> mine_features(const std::vector<CandidateSequence>& labeled, double min_sup,
                                                  double min_conf, std::size_t max_itemsets) {
  if (labeled.empty()) throw Error(ErrorCode::training_data, "no candidate sequences to mine");
  if (!(min_conf >= 0.0 && min_conf <= 1.0)) throw Error(ErrorCode::parameter, "min_conf must be in [0, 1]");
  std::vector<seqmine::ItemSeq> db;
  db.reserve(labeled.size());
  for (const auto& c : labeled) {
    if (!c.label) throw Error(ErrorCode::training_data, "candidate sequence without a label");
    db.push_back(c.items);
  }
  const auto frequent = seqmine::prefixspan(db, seqmine::MiningOptions{min_sup, max_itemsets});

  std::vector<ClassSequentialFeature> out;
  for (const auto& fp : frequent) {
    std::array<std::size_t, 2> per_class{};
    for (const auto& c : labeled)
      if (seqmine::contains(c.items, fp.pattern)) ++per_class[class_index(*c.label)];
    const std::size_t total = per_class[0] + per_class[1];
    const bool comp_wins = per_class[BayesModel::kComp] > per_class[BayesModel::kNonComp];
    const Label majority = comp_wins ? Label::comparative : Label::non_comparative;
    const double conf = static_cast<double>(per_class[class_index(majority)]) / static_cast<double>(total);
    if (conf + kConfidenceSlack < min_conf) continue;
    out.push_back({fp.pattern, fp.support_ratio, conf, majority});
  }
  return out;
}

std::vector<std::uint8_t> featurize(const std::vector<CandidateSequence>& candidates,
                                    const std::vector<ClassSequentialFeature>& features) {
  std::vector<std::uint8_t> x(features.size(), 0);
  for (std::size_t j = 0; j < features.size(); ++j)
    for (const auto& c : candidates)
      if (seqmine::contains(c.items, features[j].pattern)) {
        x[j] = 1;
        break;
      }
  return x;
}

std::vector<LabeledSentence> parse_corpus(std::string_view tsv, const text::PosTagger& tagger) {
  std::vector<LabeledSentence> out;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::parse, "corpus line " + std::to_string(line_no) + ": expected label<TAB>sentence");
    const auto label = line.substr(0, tab);
    if (label != "comp" && label != "noncomp")
      throw Error(ErrorCode::parse, "corpus line " + std::to_string(line_no) + ": label must be comp or noncomp");
    LabeledSentence s;
    s.label = label_from_string(label);
    s.text = line.substr(tab + 1);
    s.tokens = text::annotate(s.text, tagger);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSentence> parse_corpus(std::string_view tsv) {
  return parse_corpus(tsv, text::LexiconTagger::bundled());
}

const std::vector<LabeledSentence>& bundled_corpus() {
  static const std::vector<LabeledSentence> corpus = parse_corpus(resources::comparative_corpus());
  return corpus;
}

double BayesModel::posterior(const std::vector<std::uint8_t>& x) const {
  if (x.size() != features_.size()) throw Error(ErrorCode::parameter, "feature vector has the wrong length");
  std::array<double, 2> score = log_priors_;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t c = 0; c < 2; ++c) score[c] += log_lik_[j][c][x[j] ? 1 : 0];
  // Logistic form of score_comp / (score_comp + score_noncomp).
  return 1.0 / (1.0 + std::exp(score[kNonComp] - score[kComp]));
}

BayesModel train(const std::vector<LabeledSentence>& corpus, const KeywordLexicon& lexicon,
                 const TrainOptions& options) {
  std::array<std::size_t, 2> class_counts{};
  for (const auto& s : corpus) ++class_counts[class_index(s.label)];
  if (class_counts[0] == 0 || class_counts[1] == 0)
    throw Error(ErrorCode::training_data, "training corpus must contain both classes");
  if (options.radius < 0) throw Error(ErrorCode::parameter, "radius must be non-negative");

  std::vector<std::vector<CandidateSequence>> per_sentence;
  std::vector<CandidateSequence> all;
  per_sentence.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto cands = extract_candidates(corpus[i].tokens, lexicon, options.radius);
    for (auto& c : cands) {
      c.sentence_index = i;
      c.label = corpus[i].label;
      all.push_back(c);
    }
    per_sentence.push_back(std::move(cands));
  }

  if (!(options.smoothing > 0.0)) throw Error(ErrorCode::parameter, "smoothing must be positive");
  BayesModel m;
  m.lexicon_ = lexicon;
  m.radius_ = options.radius;
  m.features_ = mine_features(all, options.min_sup, options.min_conf,
                              2 * static_cast<std::size_t>(options.radius) + 1);

  const double n = static_cast<double>(corpus.size());
  const double a = options.smoothing;
  for (std::size_t c = 0; c < 2; ++c) m.log_priors_[c] = std::log((class_counts[c] + a) / (n + 2.0 * a));

  std::vector<std::array<std::size_t, 2>> ones(m.features_.size(), {0, 0});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto x = featurize(per_sentence[i], m.features_);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j]) ++ones[j][class_index(corpus[i].label)];
  }
  m.log_lik_.resize(m.features_.size());
  for (std::size_t j = 0; j < m.features_.size(); ++j) {
    for (std::size_t c = 0; c < 2; ++c) {
      const double p1 = (ones[j][c] + a) / (class_counts[c] + 2.0 * a);
      m.log_lik_[j][c] = {std::log(1.0 - p1), std::log(p1)};
    }
  }
  return m;
}

Prediction predict(const BayesModel& model, const std::vector<text::Token>& tokens) {
  const auto candidates = extract_candidates(tokens, model.lexicon(), model.radius());
  if (candidates.empty()) return {Label::non_comparative, 0.0};
  const double p = model.posterior(featurize(candidates, model.features()));
  return {p > 0.5 ? Label::comparative : Label::non_comparative, p};
}

json BayesModel::to_json() const {
  json features = json::array();
  for (const auto& f : features_)
    features.push_back({{"pattern", pattern_to_json(f.pattern)},
                        {"support_ratio", f.support_ratio},
                        {"confidence", f.confidence},
                        {"majority_class", to_string(f.majority_class)}});
  json lik = json::array();
  for (const auto& per_class : log_lik_)
    lik.push_back({{"comparative", per_class[kComp]}, {"non_comparative", per_class[kNonComp]}});
  json lexicon = json::array();
  for (const auto& e : lexicon_.entries()) lexicon.push_back({{"category", to_string(e.category)}, {"form", e.form}});
  return {{"version", 1},
          {"radius", radius_},
          {"lexicon", lexicon},
          {"features", features},
          {"log_priors", {{"comparative", log_priors_[kComp]}, {"non_comparative", log_priors_[kNonComp]}}},
          {"log_likelihoods", lik}};
}

BayesModel BayesModel::from_json(const json& j) {
  BayesModel m;
  const auto& radius = field(j, "radius", "$");
  if (!radius.is_number_integer() || radius.get<int>() < 0) schema_error("$.radius", "expected non-negative integer");
  m.radius_ = radius.get<int>();

  const auto& lex = field(j, "lexicon", "$");
  if (!lex.is_array()) schema_error("$.lexicon", "expected array");
  std::vector<KeywordEntry> entries;
  for (std::size_t i = 0; i < lex.size(); ++i) {
    const auto path = "$.lexicon[" + std::to_string(i) + "]";
    const auto& cat = field(lex[i], "category", path);
    const auto& form = field(lex[i], "form", path);
    if (!cat.is_string() || !form.is_string()) schema_error(path, "expected string category and form");
    try {
      entries.push_back({keyword_category_from_string(cat.get<std::string>()), form.get<std::string>()});
    } catch (const Error& e) {
      schema_error(path, e.what());
    }
  }
  try {
    m.lexicon_ = KeywordLexicon::from_entries(std::move(entries));
  } catch (const Error& e) {
    schema_error("$.lexicon", e.what());
  }

  const auto& feats = field(j, "features", "$");
  if (!feats.is_array()) schema_error("$.features", "expected array");
  for (std::size_t i = 0; i < feats.size(); ++i) {
    const auto path = "$.features[" + std::to_string(i) + "]";
    ClassSequentialFeature f;
    f.pattern = pattern_from_json(field(feats[i], "pattern", path), path + ".pattern");
    f.support_ratio = number(field(feats[i], "support_ratio", path), path + ".support_ratio");
    f.confidence = number(field(feats[i], "confidence", path), path + ".confidence");
    const auto& maj = field(feats[i], "majority_class", path);
    if (!maj.is_string()) schema_error(path + ".majority_class", "expected string");
    try {
      f.majority_class = label_from_string(maj.get<std::string>());
    } catch (const Error& e) {
      schema_error(path + ".majority_class", e.what());
    }
    m.features_.push_back(std::move(f));
  }

  const auto& priors = field(j, "log_priors", "$");
  m.log_priors_[kComp] = number(field(priors, "comparative", "$.log_priors"), "$.log_priors.comparative");
  m.log_priors_[kNonComp] = number(field(priors, "non_comparative", "$.log_priors"), "$.log_priors.non_comparative");

  const auto& lik = field(j, "log_likelihoods", "$");
  if (!lik.is_array() || lik.size() != m.features_.size())
    schema_error("$.log_likelihoods", "expected one entry per feature");
  m.log_lik_.resize(lik.size());
  for (std::size_t i = 0; i < lik.size(); ++i) {
    const auto path = "$.log_likelihoods[" + std::to_string(i) + "]";
    m.log_lik_[i][kComp] = value_pair(field(lik[i], "comparative", path), path + ".comparative");
    m.log_lik_[i][kNonComp] = value_pair(field(lik[i], "non_comparative", path), path + ".non_comparative");
  }
  return m;
}

BayesModel BayesModel::load(const std::string& path) {
  json j;
  try {
    j = json::parse(resources::read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, "model file '" + path + "': " + e.what());
  }
  return from_json(j);
}

void BayesModel::save(const std::string& path) const { resources::write_file_atomic(path, to_json().dump(2) + "\n"); }

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<Label>& labels, int folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::parameter, "folds must be at least 2");
  if (labels.size() < static_cast<std::size_t>(folds))
    throw Error(ErrorCode::parameter, "corpus has fewer items than folds");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  std::size_t deal = 0;
  for (Label cls : {Label::comparative, Label::non_comparative}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t idx : members) out[deal++ % out.size()].push_back(idx);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

CrossValidation cross_validate(const std::vector<LabeledSentence>& corpus, const KeywordLexicon& lexicon, int folds,
                               std::uint64_t seed, const TrainOptions& options) {
  std::vector<Label> labels;
  for (const auto& s : corpus) labels.push_back(s.label);
  const auto assignment = stratified_folds(labels, folds, seed);

  CrossValidation cv;
  for (std::size_t f = 0; f < assignment.size(); ++f) {
    std::vector<bool> held(corpus.size(), false);
    for (std::size_t i : assignment[f]) held[i] = true;
    std::vector<LabeledSentence> train_split;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (!held[i]) train_split.push_back(corpus[i]);
    const auto model = train(train_split, lexicon, options);
    std::size_t correct = 0;
    for (std::size_t i : assignment[f])
      if (predict(model, corpus[i].tokens).label == corpus[i].label) ++correct;
    cv.per_fold.push_back(static_cast<double>(correct) / static_cast<double>(assignment[f].size()));
  }
  const double k = static_cast<double>(cv.per_fold.size());
  cv.mean_accuracy = std::accumulate(cv.per_fold.begin(), cv.per_fold.end(), 0.0) / k;
  double ss = 0.0;
  for (double a : cv.per_fold) ss += (a - cv.mean_accuracy) * (a - cv.mean_accuracy);
  cv.std_accuracy = std::sqrt(ss / (k - 1.0));
  return cv;
}

}  // namespace scistory::comparative
