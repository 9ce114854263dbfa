#include "kpbench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kpbench {

using nlohmann::json;

namespace {

const std::map<std::string, SectionKind, std::less<>>& kind_names() {
  static const std::map<std::string, SectionKind, std::less<>> names = {
      {"title", SectionKind::Title},
      {"header", SectionKind::Header},
      {"abstract", SectionKind::Abstract},
      {"introduction", SectionKind::Introduction},
      {"related_work", SectionKind::RelatedWork},
      {"background", SectionKind::Background},
      {"body", SectionKind::Body},
      {"conclusion", SectionKind::Conclusion},
      {"table", SectionKind::Table},
      {"figure", SectionKind::Figure},
      {"caption", SectionKind::Caption},
      {"equation", SectionKind::Equation},
      {"note", SectionKind::Note},
      {"copyright", SectionKind::Copyright},
      {"references", SectionKind::References},
      {"other", SectionKind::Other},
  };
  return names;
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> whitespace_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

SectionKind section_kind_from_string(std::string_view kind) {
  auto it = kind_names().find(kind);
  return it == kind_names().end() ? SectionKind::Other : it->second;
}

std::string_view to_string(SectionKind kind) {
  for (const auto& [name, k] : kind_names())
    if (k == kind) return name;
  return "other";
}

std::size_t AnnotatedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& sec : sections)
    for (const auto& sent : sec.sentences) n += sent.tokens.size();
  return n;
}

std::size_t AnnotatedDocument::sentence_count() const {
  std::size_t n = 0;
  for (const auto& sec : sections) n += sec.sentences.size();
  return n;
}

std::vector<const Sentence*> AnnotatedDocument::sentences() const {
  std::vector<const Sentence*> out;
  out.reserve(sentence_count());
  for (const auto& sec : sections)
    for (const auto& sent : sec.sentences) out.push_back(&sent);
  return out;
}

void AnnotatedDocument::recompute_offsets() {
  std::size_t offset = 0;
  for (auto& sec : sections)
    for (auto& sent : sec.sentences) {
      sent.doc_offset = offset;
      offset += sent.tokens.size();
    }
}

AnnotatedDocument parse_document_json(const std::string& text,
                                      const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail(origin, "top level is not an object");
  if (!root.contains("id") || !root["id"].is_string())
    fail(origin, "missing string field 'id'");
  if (!root.contains("sections") || !root["sections"].is_array())
    fail(origin, "missing array field 'sections'");

  AnnotatedDocument doc;
  doc.id = root["id"].get<std::string>();
  int n_title = 0, n_abstract = 0;
  for (std::size_t si = 0; si < root["sections"].size(); ++si) {
    const json& jsec = root["sections"][si];
    std::string where = origin + ": sections[" + std::to_string(si) + "]";
    if (!jsec.is_object() || !jsec.contains("kind") ||
        !jsec["kind"].is_string())
      throw std::runtime_error(where + ": missing string field 'kind'");
    if (!jsec.contains("sentences") || !jsec["sentences"].is_array())
      throw std::runtime_error(where + ": missing array field 'sentences'");
    Section sec;
    sec.kind = section_kind_from_string(jsec["kind"].get<std::string>());
    if (sec.kind == SectionKind::Title) ++n_title;
    if (sec.kind == SectionKind::Abstract) ++n_abstract;
    for (std::size_t ti = 0; ti < jsec["sentences"].size(); ++ti) {
      const json& jsent = jsec["sentences"][ti];
      if (!jsent.is_array())
        throw std::runtime_error(where + ".sentences[" + std::to_string(ti) +
                                 "]: not an array");
      Sentence sent;
      for (const json& jtok : jsent) {
        if (!jtok.is_object() || !jtok.contains("surface") ||
            !jtok["surface"].is_string() || !jtok.contains("pos") ||
            !jtok["pos"].is_string())
          throw std::runtime_error(where + ".sentences[" +
                                   std::to_string(ti) +
                                   "]: token needs string fields "
                                   "'surface' and 'pos'");
        sent.tokens.emplace_back(jtok["surface"].get<std::string>(),
                                 jtok["pos"].get<std::string>());
      }
      sec.sentences.push_back(std::move(sent));
    }
    doc.sections.push_back(std::move(sec));
  }
  if (n_title > 1) fail(origin, "more than one title section");
  if (n_abstract > 1) fail(origin, "more than one abstract section");
  if (doc.token_count() == 0) fail(origin, "no tokens");
  doc.recompute_offsets();
  return doc;
}

AnnotatedDocument load_document(const std::string& path) {
  return parse_document_json(read_file(path), path);
}

std::string document_to_json(const AnnotatedDocument& doc) {
  json root;
  root["id"] = doc.id;
  root["sections"] = json::array();
  for (const auto& sec : doc.sections) {
    json jsec;
    jsec["kind"] = std::string(to_string(sec.kind));
    jsec["sentences"] = json::array();
    for (const auto& sent : sec.sentences) {
      json jsent = json::array();
      for (const auto& tok : sent.tokens)
        jsent.push_back({{"surface", tok.surface}, {"pos", tok.pos}});
      jsec["sentences"].push_back(std::move(jsent));
    }
    root["sections"].push_back(std::move(jsec));
  }
  return root.dump(2) + "\n";
}

void save_document(const AnnotatedDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << document_to_json(doc);
}

const std::vector<GoldKeyphrase>& ReferenceSet::gold(
    const std::string& doc_id) const {
  auto it = by_doc.find(doc_id);
  if (it == by_doc.end())
    throw std::runtime_error("document missing from references: " + doc_id);
  return it->second;
}

std::vector<GoldKeyphrase> make_gold(
    const std::vector<std::vector<std::string>>& phrases) {
  std::vector<GoldKeyphrase> gold;
  for (const auto& group : phrases) {
    if (group.empty()) throw std::invalid_argument("empty keyphrase group");
    std::set<std::string> alts;
    for (const std::string& alt : group) {
      auto words = whitespace_words(trim(alt));
      if (words.empty())
        throw std::invalid_argument("empty alternative form");
      alts.insert(stem_phrase(words));
    }
    gold.push_back(GoldKeyphrase{{alts.begin(), alts.end()}});
  }

  // Merge keyphrases whose stemmed alternative sets overlap, so that
  // alternative sets of distinct keyphrases stay disjoint.
  std::vector<GoldKeyphrase> merged;
  for (auto& kp : gold) {
    std::set<std::string> alts(kp.alternatives.begin(),
                               kp.alternatives.end());
    for (auto it = merged.begin(); it != merged.end();) {
      bool overlaps =
          std::any_of(it->alternatives.begin(), it->alternatives.end(),
                      [&](const std::string& a) { return alts.count(a); });
      if (overlaps) {
        alts.insert(it->alternatives.begin(), it->alternatives.end());
        it = merged.erase(it);
      } else {
        ++it;
      }
    }
    merged.push_back(GoldKeyphrase{{alts.begin(), alts.end()}});
  }
  return merged;
}

ReferenceSet load_references(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file: " + path);
  ReferenceSet refs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::string where = path + ":" + std::to_string(lineno);
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error(where + ": expected '<docid> : <phrases>'");
    std::string doc_id = trim(line.substr(0, colon));
    if (doc_id.empty()) throw std::runtime_error(where + ": empty doc id");
    if (refs.by_doc.count(doc_id))
      throw std::runtime_error(where + ": duplicate doc id '" + doc_id + "'");

    std::vector<std::vector<std::string>> phrases;
    for (const std::string& raw_phrase :
         split_on(line.substr(colon + 1), ',')) {
      std::string phrase = trim(raw_phrase);
      if (phrase.empty()) throw std::runtime_error(where + ": empty phrase");
      phrases.push_back(split_on(phrase, '+'));
    }
    if (phrases.empty())
      throw std::runtime_error(where + ": no phrases for doc '" + doc_id +
                               "'");
    try {
      refs.by_doc.emplace(std::move(doc_id), make_gold(phrases));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
  return refs;
}

std::size_t DfTable::lookup(const std::string& stem_form) const {
  auto it = df.find(stem_form);
  return it == df.end() ? 0 : it->second;
}

DfTable compute_df(std::span<const AnnotatedDocument> train_docs, int max_n) {
  if (train_docs.empty()) throw std::invalid_argument("empty corpus");
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  DfTable table;
  table.n_docs = train_docs.size();
  for (const auto& doc : train_docs) {
    std::set<std::string> seen;
    for (const Sentence* sent : doc.sentences()) {
      const auto& toks = sent->tokens;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        std::string gram;
        for (std::size_t n = 0; n < static_cast<std::size_t>(max_n) &&
                                i + n < toks.size();
             ++n) {
          if (n > 0) gram += ' ';
          gram += stem_word(toks[i + n].surface);
          seen.insert(gram);
        }
      }
    }
    for (const auto& gram : seen) ++table.df[gram];
  }
  return table;
}

double idf(const DfTable& table, const std::string& stem_form) {
  return std::log2(static_cast<double>(table.n_docs + 1) /
                   static_cast<double>(table.lookup(stem_form) + 1));
}

void save_df(const DfTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "#docs\t" << table.n_docs << "\n";
  for (const auto& [stem, count] : table.df)
    out << stem << "\t" << count << "\n";
}

DfTable load_df(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open df table: " + path);
  DfTable table;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty df table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto tab = line.find('\t');
  if (line.rfind("#docs", 0) != 0 || tab == std::string::npos)
    throw std::runtime_error(path + ": expected '#docs<TAB><N>' header");
  table.n_docs = std::stoull(line.substr(tab + 1));
  if (table.n_docs == 0) throw std::runtime_error(path + ": n_docs is zero");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected '<stem><TAB><df>'");
    std::size_t count = std::stoull(line.substr(tab + 1));
    if (count < 1 || count > table.n_docs)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": df out of range");
    table.df[line.substr(0, tab)] = count;
  }
  return table;
}

Split load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open split file: " + path);
  Split split;
  std::string line;
  bool saw_train = false, saw_test = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::string where = path + ":" + std::to_string(lineno);
    std::set<std::string>* target = nullptr;
    std::string rest;
    if (line.rfind("train:", 0) == 0) {
      target = &split.train;
      saw_train = true;
      rest = line.substr(6);
    } else if (line.rfind("test:", 0) == 0) {
      target = &split.test;
      saw_test = true;
      rest = line.substr(5);
    } else {
      throw std::runtime_error(where + ": expected 'train:' or 'test:' line");
    }
    for (const auto& id : split_on(rest, ',')) {
      std::string t = trim(id);
      if (!t.empty()) target->insert(t);
    }
  }
  if (!saw_train || !saw_test)
    throw std::runtime_error(path + ": split needs train: and test: lines");
  for (const auto& id : split.train)
    if (split.test.count(id))
      throw std::runtime_error(path + ": id in both train and test: " + id);
  return split;
}

std::vector<AnnotatedDocument> load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<AnnotatedDocument> docs;
  std::set<std::string> ids;
  for (const auto& p : paths) {
    docs.push_back(load_document(p));
    if (!ids.insert(docs.back().id).second)
      throw std::runtime_error("duplicate document id '" + docs.back().id +
                               "' in " + p);
  }
  return docs;
}

}  // namespace kpbench
