#include "scistory/text/tagger.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "scistory/error.hpp"
#include "scistory/resources.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::text {

namespace {

constexpr std::array<std::string_view, 45> kPennTags = {
    "CC",  "CD",  "DT",  "EX",  "FW",   "IN",  "JJ",  "JJR", "JJS", "LS", "MD",  "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM",
    "TO",  "UH",  "VB",  "VBD", "VBG",  "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB",
    "$",   "#",   "``",  "''",  "(",    ")",   ",",   ".",   ":"};

const std::unordered_set<std::string_view> kClosedClass = {
    "DT", "IN", "CC", "PRP", "PRP$", "MD", "TO", "WDT", "WP", "WP$", "WRB", "EX", "PDT"};

const std::unordered_set<std::string_view> kAuxiliaries = {
    "be",  "is",  "are", "was",  "were", "been", "being", "am",
    "has", "have", "had", "having", "'s", "'re", "'ve"};

bool ends_with(std::string_view w, std::string_view s) {
  return w.size() >= s.size() && w.substr(w.size() - s.size()) == s;
}

bool has(const std::vector<std::string>& opts, std::string_view tag) {
  return std::find(opts.begin(), opts.end(), tag) != opts.end();
}

bool is_noun_tag(std::string_view t) {
  return t == "NN" || t == "NNS" || t == "NNP" || t == "NNPS";
}

std::string punctuation_tag(std::string_view w, int& double_quotes) {
  if (w == "." || w == "!" || w == "?" || w == "...") return ".";
  if (w == ",") return ",";
  if (w == ":" || w == ";" || w == "-" || w == "--" || w == "–" || w == "—" ||
      ends_with(w, "..")) {
    return ":";
  }
  if (w == "(" || w == "[" || w == "{") return "(";
  if (w == ")" || w == "]" || w == "}") return ")";
  if (w == "“" || w == "`" || w == "‘") return "``";
  if (w == "”" || w == "’" || w == "'") return "''";
  if (w == "\"") return (double_quotes++ % 2 == 0) ? "``" : "''";
  if (w == "$") return "$";
  if (w == "#") return "#";
  if (w == "%") return "NN";
  if (w == "&") return "CC";
  return "SYM";
}

bool is_number(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != '-') {
      return false;
    }
  }
  return digit;
}

}  // namespace

bool is_penn_tag(std::string_view tag) {
  return std::find(kPennTags.begin(), kPennTags.end(), tag) != kPennTags.end();
}

LexiconTagger::LexiconTagger(std::string_view lexicon_tsv) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < lexicon_tsv.size()) {
    auto nl = lexicon_tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = lexicon_tsv.size();
    auto line = lexicon_tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::parse, "POS lexicon line " + std::to_string(line_no) +
                                        ": expected word<TAB>tag");
    }
    std::string word(line.substr(0, tab));
    std::string tag(line.substr(tab + 1));
    if (!is_penn_tag(tag)) {
      throw Error(ErrorCode::parse, "POS lexicon line " + std::to_string(line_no) +
                                        ": unknown tag '" + tag + "'");
    }
    auto& opts = lexicon_[word];
    if (!has(opts, tag)) opts.push_back(std::move(tag));
  }
}

LexiconTagger LexiconTagger::from_file(const std::string& path) {
  return LexiconTagger(resources::read_file(path));
}

const LexiconTagger& LexiconTagger::bundled() {
  static const LexiconTagger tagger(resources::pos_lexicon());
  return tagger;
}

const std::vector<std::string>* LexiconTagger::lookup(std::string_view word) const {
  if (auto it = lexicon_.find(std::string(word)); it != lexicon_.end()) return &it->second;
  if (auto it = lexicon_.find(utf8::to_lower(word)); it != lexicon_.end()) return &it->second;
  return nullptr;
}

bool LexiconTagger::is_known_adjective(const std::string& lower) const {
  auto it = lexicon_.find(lower);
  return it != lexicon_.end() && has(it->second, "JJ");
}

// "smaller" -> JJR, "smallest" -> JJS when the base is a known adjective.
std::string LexiconTagger::comparative_form(const std::string& w) const {
  const auto try_base = [&](std::string_view suffix) -> bool {
    if (!ends_with(w, suffix) || w.size() < suffix.size() + 2) return false;
    std::string base = w.substr(0, w.size() - suffix.size());
    if (is_known_adjective(base)) return true;                 // small-er
    if (is_known_adjective(base + "e")) return true;           // fine-r
    if (base.back() == 'i') {                                  // easi-er
      std::string y = base.substr(0, base.size() - 1) + "y";
      if (is_known_adjective(y)) return true;
    }
    if (base.size() >= 2 && base[base.size() - 1] == base[base.size() - 2]) {  // bigg-er
      if (is_known_adjective(base.substr(0, base.size() - 1))) return true;
    }
    return false;
  };
  if (try_base("er")) return "JJR";
  if (try_base("est")) return "JJS";
  return {};
}

std::string LexiconTagger::guess(const std::string& word, bool sentence_initial) const {
  if (is_number(word)) return "CD";
  const auto cps = utf8::decode(word);
  bool any_alpha = false;
  bool any_digit = false;
  std::size_t uppers = 0;
  for (char32_t c : cps) {
    any_alpha = any_alpha || utf8::is_alpha(c);
    any_digit = any_digit || utf8::is_digit(c);
    if (utf8::is_upper(c)) ++uppers;
  }
  if (!any_alpha && !any_digit) {
    int quotes = 0;
    return punctuation_tag(word, quotes);
  }
  const std::string lower = utf8::to_lower(word);
  if (any_digit) {
    if (ends_with(lower, "st") || ends_with(lower, "nd") || ends_with(lower, "rd") ||
        ends_with(lower, "th")) {
      if (utf8::is_digit(cps.front())) return "JJ";
    }
    return uppers > 0 ? "NNP" : "NN";
  }
  const bool first_upper = utf8::is_upper(cps.front());
  if (cps.size() == 1 && first_upper) return "NNP";
  // Acronyms and mixed case: LSI, pLSI, hLDA, LSIs.
  if (uppers >= 2 || (uppers == 1 && !first_upper)) {
    if (cps.back() == U's' && uppers + 1 == cps.size()) return "NNPS";
    return "NNP";
  }
  if (first_upper && !sentence_initial) return "NNP";

  if (const auto dash = lower.rfind('-'); dash != std::string::npos && dash + 1 < lower.size()) {
    const std::string last = lower.substr(dash + 1);
    std::string t;
    if (const auto* opts = lookup(last)) {
      t = opts->front();
    } else {
      t = guess(last, false);
    }
    if (t == "NN" || t == "NNS" || t == "JJR" || t == "JJS") return t;
    return "JJ";
  }

  const auto& w = lower;
  if (auto cmp = comparative_form(w); !cmp.empty()) return cmp;
  if (w.size() > 4 && ends_with(w, "ly")) return "RB";
  if (w.size() > 4 && ends_with(w, "ing")) return "VBG";
  if (w.size() > 3 && ends_with(w, "ed")) return "VBN";
  for (std::string_view s : {"ness", "ment", "tion", "sion", "ity", "ism", "ance", "ence",
                             "ship", "hood", "ist", "ure", "age", "ogy", "ics", "er", "or"}) {
    if (w.size() > s.size() + 2 && ends_with(w, s)) return "NN";
  }
  for (std::string_view s : {"tions", "sions", "ments", "nesses", "ities", "isms", "ances",
                             "ences", "ists", "ers", "ors"}) {
    if (w.size() > s.size() + 2 && ends_with(w, s)) return "NNS";
  }
  for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ary",
                             "ant", "ent", "ian", "oid"}) {
    if (w.size() > s.size() + 2 && ends_with(w, s)) return "JJ";
  }
  for (std::string_view s : {"izes", "ises", "ifies", "ates"}) {
    if (w.size() > s.size() + 2 && ends_with(w, s)) return "VBZ";
  }
  for (std::string_view s : {"ize", "ise", "ify", "ate"}) {
    if (w.size() > s.size() + 2 && ends_with(w, s)) return "VB";
  }
  if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return "NNS";
  }
  return "NN";
}

std::vector<std::string> LexiconTagger::tag(const std::vector<std::string>& words) const {
  const std::size_t n = words.size();
  std::vector<std::string> tags(n);
  std::vector<std::vector<std::string>> options(n);
  int double_quotes = 0;

  // Pass 1: lexicon defaults and suffix guesses.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = words[i];
    const auto cps = utf8::decode(w);
    const bool alnum = std::any_of(cps.begin(), cps.end(), [](char32_t c) {
      return utf8::is_alpha(c) || utf8::is_digit(c);
    });
    if (!alnum) {
      tags[i] = punctuation_tag(w, double_quotes);
      continue;
    }
    const bool initial = i == 0 || (i == 1 && (tags[0] == "``" || tags[0] == "("));
    const bool capitalized = !cps.empty() && utf8::is_upper(cps.front());
    const std::vector<std::string>* opts = nullptr;
    if (auto it = lexicon_.find(w); it != lexicon_.end()) {
      opts = &it->second;
    } else if (capitalized) {
      auto it_lower = lexicon_.find(utf8::to_lower(w));
      if (it_lower != lexicon_.end()) {
        const bool single_letter = cps.size() == 1;
        if (initial || (!single_letter && kClosedClass.count(it_lower->second.front()) > 0)) {
          opts = &it_lower->second;
        }
      }
    }
    if (opts != nullptr) {
      options[i] = *opts;
      tags[i] = opts->front();
      continue;
    }
    tags[i] = guess(w, initial);
    if (tags[i] == "VBN") {
      options[i] = {"VBN", "VBD"};
    } else if (tags[i] == "NNS") {
      options[i] = {"NNS", "VBZ"};
    }
  }

  // Pass 2: contextual disambiguation for words with several candidate tags.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& opts = options[i];
    if (opts.size() < 2 && utf8::to_lower(words[i]) != "more" &&
        utf8::to_lower(words[i]) != "less") {
      continue;
    }
    const std::string prev = i > 0 ? tags[i - 1] : std::string();
    const std::string next = i + 1 < n ? tags[i + 1] : std::string();
    // Nearest preceding non-adverb word, for "has been", "is not used".
    std::string aux;
    for (std::size_t k = i; k-- > 0;) {
      if (tags[k] == "RB") continue;
      aux = utf8::to_lower(words[k]);
      break;
    }
    const bool after_aux = kAuxiliaries.count(aux) > 0;
    const std::string lower = utf8::to_lower(words[i]);

    if ((lower == "more" || lower == "less") &&
        (next == "JJ" || next == "RB" || next == "VBN")) {
      tags[i] = "RBR";
      continue;
    }
    if (opts.size() < 2) continue;

    if ((prev == "TO" || prev == "MD") && has(opts, "VB")) {
      tags[i] = "VB";
    } else if (opts.front() == "NN" &&
               (prev == "DT" || prev == "JJ" || prev == "PRP$" || prev == "NN" || prev == "POS")) {
      tags[i] = "NN";
    } else if (after_aux && has(opts, "VBN")) {
      tags[i] = "VBN";
    } else if (has(opts, "VBD") && has(opts, "VBN")) {
      tags[i] = (is_noun_tag(prev) || prev == "PRP" || prev == "WDT") ? "VBD" : "VBN";
      if (tags[i] == "VBN" && (prev == "DT" || prev == "PRP$") && has(opts, "JJ")) tags[i] = "JJ";
    } else if (has(opts, "VBZ") && has(opts, "NNS")) {
      const bool subject = prev == "NN" || prev == "NNP" || prev == "NNPS" || prev == "PRP" ||
                           prev == "WDT" || prev == "CD";
      const bool object = next == "DT" || next == "JJ" || next == "JJR" || next == "JJS" ||
                          next == "NN" || next == "NNS" || next == "NNP" || next == "PRP$" ||
                          next == "CD" || next == "RB" || next == "IN" || next == "TO" ||
                          next == "RBR" || next == "PRP" || next == "VBN";
      tags[i] = subject && object ? "VBZ" : "NNS";
    } else if (has(opts, "NN") && (has(opts, "VB") || has(opts, "VBP"))) {
      if (prev == "DT" || prev == "JJ" || prev == "JJR" || prev == "JJS" || prev == "PRP$" ||
          prev == "POS" || prev == "CD" || prev == "NN" || prev == "VBG") {
        tags[i] = "NN";
      } else if ((prev == "PRP" || prev == "NNS" || prev == "WDT" || prev == "NNPS") &&
                 has(opts, "VBP")) {
        tags[i] = "VBP";
      }
    } else if (has(opts, "VB") && has(opts, "VBP")) {
      if (prev == "PRP" || prev == "NNS" || prev == "NNPS" || prev == "WDT" || prev == "NNP") {
        tags[i] = "VBP";
      }
    } else if (has(opts, "JJR") && has(opts, "RBR")) {
      tags[i] = (next == "JJ" || next == "RB" || next == "VBN") ? "RBR" : "JJR";
    } else if (has(opts, "JJS") && has(opts, "RBS")) {
      tags[i] = (next == "JJ" || next == "RB" || next == "VBN") ? "RBS" : "JJS";
    }
  }
  return tags;
}

}  // namespace scistory::text
