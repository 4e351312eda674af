#include "scistory/repository/record.hpp"

#include <map>

#include "scistory/error.hpp"

namespace scistory::repository {

using nlohmann::json;

void check_consistency(const AnalysisRecord& record) {
  const auto& doc = record.document;
  if (record.predictions.size() != doc.sentence_count()) {
    throw Error(ErrorCode::consistency, "record has " + std::to_string(record.predictions.size()) +
                                            " predictions for " + std::to_string(doc.sentence_count()) + " sentences");
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& m : record.mentions) {
    const text::Sentence* s = doc.find_sentence(m.sentence_index);
    if (s == nullptr || s->paragraph_index != m.paragraph_index) {
      throw Error(ErrorCode::consistency, "mention of '" + m.entity_id + "' points at missing sentence " +
                                              std::to_string(m.sentence_index));
    }
    ++counts[m.entity_id];
  }
  std::size_t covered = 0;
  for (const auto& e : record.entity_table.entities) {
    const auto it = counts.find(e.id);
    if (it == counts.end() || it->second != e.mention_count || e.mentions.size() != e.mention_count) {
      throw Error(ErrorCode::consistency, "entity table row '" + e.id + "' disagrees with the mention list");
    }
    ++covered;
  }
  if (covered != counts.size()) throw Error(ErrorCode::consistency, "mentions name entities missing from the table");
}

json to_json(const text::Document& doc) {
  json sections = json::array();
  for (const auto& s : doc.sections) {
    sections.push_back({{"title", s.title},
                        {"kind", text::to_string(s.kind)},
                        {"first_paragraph", s.first_paragraph},
                        {"end_paragraph", s.end_paragraph}});
  }
  json paragraphs = json::array();
  for (const auto& p : doc.paragraphs) {
    json sentences = json::array();
    for (const auto& s : p.sentences) {
      json tokens = json::array();
      for (const auto& t : s.tokens) tokens.push_back({t.surface, t.pos, t.stem, t.char_start, t.char_end});
      sentences.push_back({{"sentence_index", s.sentence_index},
                           {"char_start", s.char_start},
                           {"char_end", s.char_end},
                           {"text", s.text},
                           {"tokens", std::move(tokens)}});
    }
    paragraphs.push_back({{"index", p.index}, {"offset", p.offset}, {"text", p.text}, {"sentences", std::move(sentences)}});
  }
  return {{"id", doc.id},
          {"title", doc.title},
          {"pub_date", doc.pub_date},
          {"raw_text", doc.raw_text},
          {"sections", std::move(sections)},
          {"paragraphs", std::move(paragraphs)}};
}

text::Document document_from_json(const json& j) {
  try {
    text::Document doc;
    doc.id = j.at("id").get<std::string>();
    doc.title = j.at("title").get<std::string>();
    doc.pub_date = j.at("pub_date").get<std::string>();
    doc.raw_text = j.at("raw_text").get<std::string>();
    for (const auto& s : j.at("sections")) {
      doc.sections.push_back({s.at("title").get<std::string>(),
                              text::section_kind_from_string(s.at("kind").get<std::string>()),
                              s.at("first_paragraph").get<std::size_t>(), s.at("end_paragraph").get<std::size_t>()});
    }
    for (const auto& p : j.at("paragraphs")) {
      text::Paragraph para;
      para.index = p.at("index").get<std::size_t>();
      para.offset = p.at("offset").get<std::size_t>();
      para.text = p.at("text").get<std::string>();
      for (const auto& s : p.at("sentences")) {
        text::Sentence sent;
        sent.paragraph_index = para.index;
        sent.sentence_index = s.at("sentence_index").get<std::size_t>();
        sent.char_start = s.at("char_start").get<std::size_t>();
        sent.char_end = s.at("char_end").get<std::size_t>();
        sent.text = s.at("text").get<std::string>();
        for (const auto& t : s.at("tokens")) {
          if (!t.is_array() || t.size() != 5) throw Error(ErrorCode::schema, "document: token must be a 5-array");
          sent.tokens.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>(),
                                 t[3].get<std::size_t>(), t[4].get<std::size_t>()});
        }
        para.sentences.push_back(std::move(sent));
      }
      doc.paragraphs.push_back(std::move(para));
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, std::string("document: ") + e.what());
  }
}

json to_json(const analytics::CoocGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes()) nodes.push_back({{"id", n.id}, {"weight", n.weight}});
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"a", g.nodes()[e.a].id}, {"b", g.nodes()[e.b].id}, {"weight", e.weight}});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"level", analytics::to_string(g.level())}};
}

analytics::CoocGraph graph_from_json(const json& j) {
  try {
    std::vector<analytics::GraphNode> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back({n.at("id").get<std::string>(), n.at("weight").get<double>()});
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("weight").get<double>());
    return analytics::CoocGraph(std::move(nodes), edges, analytics::level_from_string(j.at("level").get<std::string>()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, std::string("graph: ") + e.what());
  }
}

json to_json(const AnalysisRecord& record) {
  json mentions = json::array();
  for (const auto& m : record.mentions) mentions.push_back(entities::to_json(m));
  json predictions = json::array();
  for (const auto& p : record.predictions)
    predictions.push_back({{"label", comparative::to_string(p.label)}, {"confidence", p.confidence}});
  return {{"document", to_json(record.document)},
          {"entities", entities::to_json(record.entity_table)},
          {"mentions", std::move(mentions)},
          {"predictions", std::move(predictions)},
          {"graphs", {{"sentence", to_json(record.sentence_graph)}, {"paragraph", to_json(record.paragraph_graph)}}},
          {"config_fingerprint", record.config_fingerprint},
          {"created_at", record.created_at}};
}

AnalysisRecord record_from_json(const json& j) {
  AnalysisRecord r;
  try {
    r.document = document_from_json(j.at("document"));
    for (const auto& m : j.at("mentions")) r.mentions.push_back(entities::mention_from_json(m));
    for (const auto& p : j.at("predictions")) {
      r.predictions.push_back(
          {comparative::label_from_string(p.at("label").get<std::string>()), p.at("confidence").get<double>()});
    }
    std::map<std::string, std::vector<entities::EntityMention>> by_entity;
    for (const auto& m : r.mentions) by_entity[m.entity_id].push_back(m);
    for (const auto& e : j.at("entities")) {
      entities::EntityStats row;
      row.id = e.at("id").get<std::string>();
      row.canonical = e.at("canonical").get<std::string>();
      row.mention_count = e.at("mention_count").get<std::size_t>();
      row.first_sentence_index = e.at("first_sentence_index").get<std::size_t>();
      row.mentions = by_entity[row.id];
      r.entity_table.entities.push_back(std::move(row));
    }
    r.sentence_graph = graph_from_json(j.at("graphs").at("sentence"));
    r.paragraph_graph = graph_from_json(j.at("graphs").at("paragraph"));
    r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    r.created_at = j.at("created_at").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, std::string("record: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw Error(ErrorCode::schema, std::string("record: ") + e.what());
    throw;
  }
  check_consistency(r);
  return r;
}

}  // namespace scistory::repository
