#include "scistory/service/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <unistd.h>

#include "scistory/entities/recognize.hpp"
#include "scistory/entities/remote.hpp"
#include "scistory/error.hpp"
#include "scistory/resources.hpp"

namespace scistory::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::configuration, what); }

void require_readable(const std::string& path, const char* what) {
  if (::access(path.c_str(), R_OK) != 0) config_error(std::string(what) + " '" + path + "' is not readable");
}

// Runs `fn`, relabelling any library error with the stage it came from.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// 64-bit FNV-1a; only used to tell configurations apart.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<entities::EntityMention> link_remote(const text::Document& doc, const std::string& url,
                                                 std::size_t block_max, const entities::Gazetteer& gaz,
                                                 entities::Gazetteer& extended) {
  const auto scheme = url.find("://");
  const auto slash = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  const std::string base = slash == std::string::npos ? url : url.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : url.substr(slash);
  entities::HttpRemoteLinker linker(base, path);
  auto result = entities::recognize_remote(doc, linker, gaz, block_max);
  extended = std::move(result.gazetteer);
  return std::move(result.mentions);
}

}  // namespace

void validate(const PipelineConfig& config) {
  if (config.model_path.empty()) config_error("model_path is required");
  require_readable(config.model_path, "model");
  if (!config.lexicon_path.empty()) require_readable(config.lexicon_path, "keyword lexicon");
  if (!config.gazetteer_path.empty()) require_readable(config.gazetteer_path, "gazetteer");
  if (config.radius == 0) config_error("radius must be at least 1");
  if (!(config.min_sup > 0.0 && config.min_sup <= 1.0)) config_error("min_sup must be in (0, 1]");
  if (!(config.min_conf >= 0.0 && config.min_conf <= 1.0)) config_error("min_conf must be in [0, 1]");
  if (config.block_max == 0) config_error("block_max must be positive");
  if (config.top_k_entities == 0) config_error("top_k_entities must be positive");
  if (!config.linker_url.empty() && config.linker_url.rfind("http://", 0) != 0 &&
      config.linker_url.rfind("https://", 0) != 0) {
    config_error("linker_url must start with http:// or https://");
  }
}

Pipeline::Pipeline(PipelineConfig config, fs::path data_dir)
    : config_((validate(config), std::move(config))), gazetteer_store_(data_dir / "gazetteer.json"), repo_(data_dir) {
  try {
    model_ = comparative::BayesModel::load(config_.model_path);
  } catch (const Error& e) {
    config_error("cannot load model '" + config_.model_path + "': " + e.what());
  }
  try {
    if (fs::exists(gazetteer_store_)) {
      gazetteer_ = std::make_shared<const entities::Gazetteer>(entities::Gazetteer::from_file(gazetteer_store_.string()));
    } else if (!config_.gazetteer_path.empty()) {
      gazetteer_ = std::make_shared<const entities::Gazetteer>(entities::Gazetteer::from_file(config_.gazetteer_path));
    } else {
      gazetteer_ = std::make_shared<const entities::Gazetteer>(entities::Gazetteer::bundled());
    }
  } catch (const Error& e) {
    config_error(std::string("cannot load gazetteer: ") + e.what());
  }
}

std::shared_ptr<const entities::Gazetteer> Pipeline::gazetteer() const {
  std::lock_guard lock(gazetteer_mutex_);
  return gazetteer_;
}

std::string Pipeline::fingerprint() const {
  const json parts = {config_.radius, config_.min_sup,    config_.min_conf,       config_.block_max,
                      config_.linker_url, model_.to_json(), gazetteer()->to_json()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(parts.dump())));
  return buf;
}

repository::AnalysisRecord Pipeline::analyze(std::string_view raw, text::InputFormat format,
                                             const text::DocumentMeta& meta) const {
  if (raw.size() > kMaxUploadBytes) {
    throw StageError("upload", Error(ErrorCode::too_large, "upload is " + std::to_string(raw.size()) +
                                                               " bytes, limit " + std::to_string(kMaxUploadBytes)));
  }
  const auto gaz = gazetteer();
  repository::AnalysisRecord r;
  r.document = stage("parse", [&] { return text::parse_document(raw, format, meta); });
  r.predictions = stage("classify", [&] {
    std::vector<comparative::Prediction> out;
    for (const auto* s : r.document.sentences()) out.push_back(comparative::predict(model_, s->tokens));
    return out;
  });
  stage("recognize", [&] {
    entities::Gazetteer extended;
    const entities::Gazetteer* used = gaz.get();
    if (config_.linker_url.empty()) {
      r.mentions = entities::recognize(r.document, *gaz);
    } else {
      r.mentions = link_remote(r.document, config_.linker_url, config_.block_max, *gaz, extended);
      used = &extended;
    }
    r.entity_table = entities::consolidate(r.mentions, *used);
  });
  stage("analytics", [&] {
    r.sentence_graph = analytics::cooccurrence(r.mentions, analytics::Level::sentence);
    r.paragraph_graph = analytics::cooccurrence(r.mentions, analytics::Level::paragraph);
  });
  r.config_fingerprint = fingerprint();
  r.created_at = utc_now();
  return r;
}

repository::AnalysisRecord Pipeline::analyze_document(std::string_view raw, text::InputFormat format,
                                                      const text::DocumentMeta& meta) {
  auto r = analyze(raw, format, meta);
  r.document.id = stage("persist", [&] { return repo_.save(r); });
  return r;
}

storyline::StorylineLayout Pipeline::get_storyline(std::string_view doc_id, storyline::Granularity granularity,
                                                   const std::vector<std::string>& entities,
                                                   const storyline::LayoutConfig& layout) const {
  const auto r = repo_.load(doc_id);
  storyline::StorylineRequest request;
  request.granularity = granularity;
  request.entities = entities;
  request.entity_cap = config_.top_k_entities;
  request.config = layout;
  return storyline::build_storyline(r.document, r.entity_table, r.predictions, request);
}

CollectionViews Pipeline::get_collection_views() const {
  CollectionViews views;
  views.documents = repo_.list();
  if (views.documents.empty()) throw Error(ErrorCode::empty_collection, "the collection has no documents");
  std::vector<analytics::DocEntities> docs;
  for (const auto& row : views.documents) {
    const auto r = repo_.load(row.doc_id);
    docs.push_back(analytics::doc_entities(row.doc_id, r.document.pub_date, r.entity_table));
    for (const auto& e : r.entity_table.entities) views.labels.emplace(e.id, e.canonical);
  }
  views.evolution = analytics::evolution(docs);
  views.graph = analytics::cooccurrence(docs, analytics::Level::sentence);
  if (!views.graph.nodes().empty()) views.partition = analytics::louvain(views.graph);
  return views;
}

json Pipeline::text_view(std::string_view doc_id) const {
  const auto r = repo_.load(doc_id);
  std::map<std::size_t, std::vector<const entities::EntityMention*>> by_sentence;
  for (const auto& m : r.mentions) by_sentence[m.sentence_index].push_back(&m);

  json sections = json::array();
  for (const auto& s : r.document.sections) {
    sections.push_back({{"title", s.title},
                        {"kind", text::to_string(s.kind)},
                        {"first_paragraph", s.first_paragraph},
                        {"end_paragraph", s.end_paragraph}});
  }
  json paragraphs = json::array();
  for (const auto& p : r.document.paragraphs) {
    json sentences = json::array();
    for (const auto& s : p.sentences) {
      json mentions = json::array();
      for (const auto* m : by_sentence[s.sentence_index]) {
        mentions.push_back({{"entity", m->entity_id}, {"start", m->char_start}, {"end", m->char_end},
                            {"surface", m->surface}});
      }
      const auto& pred = r.predictions[s.sentence_index];
      sentences.push_back({{"index", s.sentence_index},
                           {"text", s.text},
                           {"label", comparative::to_string(pred.label)},
                           {"confidence", pred.confidence},
                           {"mentions", std::move(mentions)}});
    }
    paragraphs.push_back({{"index", p.index}, {"sentences", std::move(sentences)}});
  }
  return {{"doc_id", r.document.id},
          {"title", r.document.title},
          {"pub_date", r.document.pub_date},
          {"sections", std::move(sections)},
          {"paragraphs", std::move(paragraphs)}};
}

json Pipeline::entity_ranking(std::string_view doc_id) const {
  return analytics::to_json(analytics::frequency_ranking(repo_.load(doc_id).entity_table));
}

json Pipeline::cooccurrence_view(std::string_view doc_id, analytics::Level level) const {
  const auto r = repo_.load(doc_id);
  const auto& g = level == analytics::Level::sentence ? r.sentence_graph : r.paragraph_graph;
  std::unordered_map<std::string, std::string> labels;
  for (const auto& e : r.entity_table.entities) labels.emplace(e.id, e.canonical);
  return analytics::graph_to_json(g, g.nodes().empty() ? analytics::Partition{} : analytics::louvain(g), labels);
}

entities::GazetteerEntry Pipeline::update_gazetteer(entities::GazetteerEntry entry) {
  if (entry.canonical.empty()) throw Error(ErrorCode::validation, "canonical name is required");
  const std::string key = entities::normalize_alias(entry.canonical);
  if (key.empty()) throw Error(ErrorCode::validation, "canonical name has no words");

  std::lock_guard lock(gazetteer_mutex_);
  if (entry.id.empty()) {
    if (const std::string* known = gazetteer_->lookup(key)) {
      entry.id = *known;
    } else {
      entry.id = key;
      std::replace(entry.id.begin(), entry.id.end(), ' ', '_');
    }
  }
  if (const auto* old = gazetteer_->find(entry.id)) {
    for (const auto& a : old->aliases) {
      if (std::find(entry.aliases.begin(), entry.aliases.end(), a) == entry.aliases.end()) entry.aliases.push_back(a);
    }
  }
  auto next = std::make_shared<const entities::Gazetteer>(gazetteer_->merged({entry}));
  resources::write_file_atomic(gazetteer_store_.string(), next->to_json().dump(2));
  gazetteer_ = std::move(next);
  return *gazetteer_->find(entry.id);
}

json evolution_json(const CollectionViews& views) {
  json out = analytics::to_json(views.evolution);
  out["documents"] = repository::to_json(views.documents);
  return out;
}

json communities_json(const CollectionViews& views) {
  return analytics::graph_to_json(views.graph, views.partition, views.labels);
}

}  // namespace scistory::service
