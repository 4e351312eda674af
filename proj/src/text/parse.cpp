#include "scistory/text/parse.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <regex>

#include <nlohmann/json.hpp>

#include "scistory/error.hpp"
#include "scistory/text/annotate.hpp"
#include "scistory/text/segmenter.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::text {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 9> kKindNames = {
    "abstract",   "introduction", "related_work", "method", "experiment",
    "discussion", "conclusion",   "references",   "other"};

// Exact heading names (lowercase) recognised even inside multi-line blocks.
constexpr std::array<std::string_view, 52> kKnownTitles = {
    "abstract",           "introduction",        "background",
    "related work",       "related works",       "related research",
    "prior work",         "previous work",       "literature review",
    "method",             "methods",             "methodology",
    "approach",           "our approach",        "proposed method",
    "proposed approach",  "model",               "the model",
    "system design",      "framework",           "experiment",
    "experiments",        "experimental results", "experimental setup",
    "experimental evaluation", "evaluation",     "results",
    "results and discussion", "discussion",      "conclusion",
    "conclusions",        "conclusion and future work", "conclusions and future work",
    "summary",            "references",          "bibliography",
    "acknowledgments",    "acknowledgements",    "acknowledgment",
    "appendix",           "case study",          "preliminaries",
    "problem definition", "problem statement",   "data",
    "dataset",            "datasets",            "implementation",
    "analysis",           "future work",         "limitations",
    "overview"};

struct KindRule {
  std::string_view needle;
  SectionKind kind;
};

constexpr std::array<KindRule, 23> kKindRules = {{
    {"abstract", SectionKind::abstract},
    {"introduction", SectionKind::introduction},
    {"related", SectionKind::related_work},
    {"background", SectionKind::related_work},
    {"literature", SectionKind::related_work},
    {"prior work", SectionKind::related_work},
    {"previous work", SectionKind::related_work},
    {"conclu", SectionKind::conclusion},
    {"summary", SectionKind::conclusion},
    {"future work", SectionKind::conclusion},
    {"reference", SectionKind::references},
    {"bibliograph", SectionKind::references},
    {"discussion", SectionKind::discussion},
    {"experiment", SectionKind::experiment},
    {"evaluation", SectionKind::experiment},
    {"result", SectionKind::experiment},
    {"empirical", SectionKind::experiment},
    {"case study", SectionKind::experiment},
    {"method", SectionKind::method},
    {"approach", SectionKind::method},
    {"model", SectionKind::method},
    {"algorithm", SectionKind::method},
    {"design", SectionKind::method},
}};

constexpr std::array<std::string_view, 14> kMinorWords = {
    "a", "an", "the", "of", "for", "and", "or", "in", "on", "to", "with", "via", "by", "at"};

const std::regex& numbering_re() {
  static const std::regex re(R"(^(\d+(\.\d+)*\.?|[IVXLC]+\.|[A-Z]\.)\s+)");
  return re;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_known_title(std::string_view lower) {
  return std::find(kKnownTitles.begin(), kKnownTitles.end(), lower) != kKnownTitles.end();
}

// Title-Case: every word longer than a minor word starts with an uppercase
// letter or a non-letter.
bool is_title_case(const std::vector<std::string>& words) {
  if (words.empty()) return false;
  bool any_letter = false;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto cps = utf8::decode(words[k]);
    if (cps.empty()) continue;
    const bool letter = utf8::is_alpha(cps.front());
    any_letter = any_letter || letter;
    const auto lower = utf8::to_lower(words[k]);
    const bool minor = std::find(kMinorWords.begin(), kMinorWords.end(), lower) != kMinorWords.end();
    if (k > 0 && minor) continue;
    if (letter && !utf8::is_upper(cps.front())) return false;
  }
  return any_letter;
}

std::optional<SectionKind> classify(std::string_view line, bool allow_title_case) {
  std::string s = normalize_whitespace(line);
  while (!s.empty() && s.back() == ':') s.pop_back();
  if (s.empty() || utf8::length(s) > 100) return std::nullopt;

  std::smatch m;
  std::string rest = s;
  bool numbered = false;
  if (std::regex_search(s, m, numbering_re())) {
    rest = m.suffix().str();
    numbered = true;
  }
  if (rest.empty()) return std::nullopt;
  const auto lower = utf8::to_lower(rest);
  const auto words = split_words(rest);
  if (words.size() >= 8) return std::nullopt;
  const char last = rest.back();
  if (last == '.' || last == '!' || last == '?' || last == ',' || last == ';') {
    return std::nullopt;
  }
  if (is_known_title(lower)) return section_kind_for_title(lower);
  if (numbered) {
    for (auto known : kKnownTitles) {
      if (lower.rfind(std::string(known) + " ", 0) == 0) return section_kind_for_title(lower);
    }
  }
  if (allow_title_case && is_title_case(words)) return section_kind_for_title(lower);
  return std::nullopt;
}

std::vector<std::string> split_lines(std::string_view raw) {
  std::vector<std::string> lines;
  std::string cur;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\r') {
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  lines.push_back(std::move(cur));
  return lines;
}

bool is_blank(std::string_view line) { return normalize_whitespace(line).empty(); }

// Incrementally assembles a Document keeping raw_text and offsets in step.
class DocumentBuilder {
 public:
  DocumentBuilder(const PosTagger& tagger) : tagger_(tagger) {}

  void heading(std::string title, SectionKind kind) {
    close_section();
    if (!title.empty()) append_block(title);
    doc_.sections.push_back({std::move(title), kind, doc_.paragraphs.size(), doc_.paragraphs.size()});
    open_ = true;
  }

  void paragraph(std::string_view raw_text) {
    auto text = normalize_whitespace(raw_text);
    if (text.empty()) return;
    if (!open_) {
      doc_.sections.push_back({"", SectionKind::other, doc_.paragraphs.size(), doc_.paragraphs.size()});
      open_ = true;
    }
    Paragraph p;
    p.index = doc_.paragraphs.size();
    p.offset = append_block(text);
    const auto cps = utf8::decode(text);
    for (const auto& span : segmenter_.segment(std::u32string_view(cps))) {
      Sentence s;
      s.paragraph_index = p.index;
      s.sentence_index = next_sentence_++;
      s.char_start = span.start;
      s.char_end = span.end;
      s.text = utf8::encode(std::u32string_view(cps).substr(span.start, span.end - span.start));
      s.tokens = annotate(s.text, tagger_);
      p.sentences.push_back(std::move(s));
    }
    p.text = std::move(text);
    doc_.paragraphs.push_back(std::move(p));
    doc_.sections.back().end_paragraph = doc_.paragraphs.size();
  }

  Document finish(std::string title, std::string pub_date) {
    close_section();
    if (doc_.paragraphs.empty()) {
      throw Error(ErrorCode::empty_document, "document contains no paragraph text");
    }
    doc_.title = std::move(title);
    doc_.pub_date = std::move(pub_date);
    return std::move(doc_);
  }

 private:
  std::size_t append_block(std::string_view text) {
    if (!doc_.raw_text.empty()) {
      doc_.raw_text += "\n\n";
      raw_len_ += 2;
    }
    const std::size_t offset = raw_len_;
    doc_.raw_text += text;
    raw_len_ += utf8::length(text);
    return offset;
  }

  void close_section() {
    if (open_) doc_.sections.back().end_paragraph = doc_.paragraphs.size();
  }

  const PosTagger& tagger_;
  SentenceSegmenter segmenter_;
  Document doc_;
  std::size_t raw_len_ = 0;
  std::size_t next_sentence_ = 0;
  bool open_ = false;
};

Document parse_plain(std::string_view raw, const DocumentMeta& meta, const PosTagger& tagger) {
  DocumentBuilder builder(tagger);
  const auto lines = split_lines(raw);
  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < lines.size() && !is_blank(lines[j])) ++j;
    const bool single_line = j == i + 1;
    std::size_t body = i;
    if (auto kind = classify(lines[i], single_line)) {
      auto title = normalize_whitespace(lines[i]);
      while (!title.empty() && title.back() == ':') title.pop_back();
      builder.heading(std::move(title), *kind);
      body = i + 1;
    }
    std::string text;
    for (std::size_t k = body; k < j; ++k) {
      if (!text.empty()) text.push_back(' ');
      text += lines[k];
    }
    builder.paragraph(text);
    i = j;
  }
  return builder.finish(meta.title, meta.pub_date);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::schema, path + "." + key + ": missing required field");
  }
  return *it;
}

std::string optional_string(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw Error(ErrorCode::schema, path + "." + key + ": expected string");
  return it->get<std::string>();
}

Document parse_structured(std::string_view raw, const DocumentMeta& meta,
                          const PosTagger& tagger) {
  json root;
  try {
    root = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("$: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::schema, "$: expected object");
  const auto title = optional_string(root, "title", "$");
  const auto date = optional_string(root, "pub_date", "$");
  const auto& sections = require(root, "sections", "$");
  if (!sections.is_array()) throw Error(ErrorCode::schema, "$.sections: expected array");

  DocumentBuilder builder(tagger);
  for (std::size_t s = 0; s < sections.size(); ++s) {
    const std::string path = "$.sections[" + std::to_string(s) + "]";
    const auto& sec = sections[s];
    if (!sec.is_object()) throw Error(ErrorCode::schema, path + ": expected object");
    const auto sec_title = optional_string(sec, "title", path);
    const auto& paras = require(sec, "paragraphs", path);
    if (!paras.is_array()) throw Error(ErrorCode::schema, path + ".paragraphs: expected array");
    const auto norm_title = normalize_whitespace(sec_title);
    builder.heading(norm_title, section_kind_for_title(norm_title));
    for (std::size_t p = 0; p < paras.size(); ++p) {
      if (!paras[p].is_string()) {
        throw Error(ErrorCode::schema,
                    path + ".paragraphs[" + std::to_string(p) + "]: expected string");
      }
      builder.paragraph(paras[p].get_ref<const std::string&>());
    }
  }
  return builder.finish(meta.title.empty() ? title : meta.title,
                        meta.pub_date.empty() ? date : meta.pub_date);
}

}  // namespace

std::string_view to_string(SectionKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

SectionKind section_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<SectionKind>(i);
  }
  throw Error(ErrorCode::parse, "unknown section kind '" + std::string(name) + "'");
}

InputFormat input_format_from_string(std::string_view name) {
  if (name == "plain") return InputFormat::plain;
  if (name == "structured") return InputFormat::structured;
  throw Error(ErrorCode::parameter, "unknown input format '" + std::string(name) + "'");
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_space(cp)) {
      pending_space = true;
      continue;
    }
    if (utf8::is_control(cp)) continue;
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    utf8::append(out, cp);
  }
  return out;
}

std::optional<SectionKind> classify_heading(std::string_view line) { return classify(line, true); }

SectionKind section_kind_for_title(std::string_view title) {
  const auto lower = utf8::to_lower(title);
  for (const auto& rule : kKindRules) {
    if (lower.find(rule.needle) != std::string::npos) return rule.kind;
  }
  return SectionKind::other;
}

bool is_valid_date(std::string_view d) {
  if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (d[i] < '0' || d[i] > '9') return false;
  }
  const int y = std::stoi(std::string(d.substr(0, 4)));
  const unsigned mo = static_cast<unsigned>(std::stoi(std::string(d.substr(5, 2))));
  const unsigned da = static_cast<unsigned>(std::stoi(std::string(d.substr(8, 2))));
  return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{mo},
                                     std::chrono::day{da}}
      .ok();
}

Document parse_document(std::string_view raw, InputFormat format, const DocumentMeta& meta,
                        const PosTagger& tagger) {
  Document doc = format == InputFormat::plain ? parse_plain(raw, meta, tagger)
                                              : parse_structured(raw, meta, tagger);
  if (!doc.pub_date.empty() && !is_valid_date(doc.pub_date)) {
    throw Error(ErrorCode::metadata, "pub_date '" + doc.pub_date + "' is not a YYYY-MM-DD date");
  }
  return doc;
}

Document parse_document(std::string_view raw, InputFormat format, const DocumentMeta& meta) {
  return parse_document(raw, format, meta, LexiconTagger::bundled());
}

}  // namespace scistory::text
