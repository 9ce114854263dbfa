#ifndef KPBENCH_CORPUS_HPP
#define KPBENCH_CORPUS_HPP

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpbench/textcore.hpp"

namespace kpbench {

enum class SectionKind {
  Title,
  Header,
  Abstract,
  Introduction,
  RelatedWork,
  Background,
  Body,
  Conclusion,
  Table,
  Figure,
  Caption,
  Equation,
  Note,
  Copyright,
  References,
  Other,
};

/// Unknown kinds map to SectionKind::Other.
SectionKind section_kind_from_string(std::string_view kind);
std::string_view to_string(SectionKind kind);

struct Section {
  SectionKind kind = SectionKind::Other;
  std::vector<Sentence> sentences;
};

struct AnnotatedDocument {
  std::string id;
  std::vector<Section> sections;
  int level = 1;

  std::size_t token_count() const;
  std::size_t sentence_count() const;

  /// Sentences of all sections in document order.
  std::vector<const Sentence*> sentences() const;

  /// Reassigns Sentence::doc_offset as cumulative token counts.
  void recompute_offsets();
};

/// Parses the document JSON format:
///   {"id": str, "sections": [{"kind": str, "sentences":
///     [[{"surface": str, "pos": str}, ...], ...]}]}
/// Stems are computed on load, never stored. `origin` names the source in
/// error messages.
AnnotatedDocument parse_document_json(const std::string& text,
                                      const std::string& origin);
AnnotatedDocument load_document(const std::string& path);
std::string document_to_json(const AnnotatedDocument& doc);
void save_document(const AnnotatedDocument& doc, const std::string& path);

/// One gold keyphrase: a set of interchangeable stemmed forms.
struct GoldKeyphrase {
  std::vector<std::string> alternatives;  // sorted, unique, stemmed
};

struct ReferenceSet {
  std::map<std::string, std::vector<GoldKeyphrase>> by_doc;

  bool has(const std::string& doc_id) const { return by_doc.count(doc_id); }
  const std::vector<GoldKeyphrase>& gold(const std::string& doc_id) const;
};

/// Builds one document's gold keyphrases from groups of alternative forms
/// (raw or stemmed). Every form is stemmed; groups whose stemmed
/// alternatives overlap are merged so that distinct keyphrases stay
/// disjoint. Throws on an empty group or an empty form.
std::vector<GoldKeyphrase> make_gold(
    const std::vector<std::vector<std::string>>& phrases);

/// Loads a reference file with one line per document:
///   <docid> : <phrase>(,<phrase>)*
/// where alternative forms inside one phrase are joined by '+'. All phrases
/// are (re)stemmed on load. Keyphrases whose alternative sets overlap after
/// stemming are merged.
ReferenceSet load_references(const std::string& path);

struct DfTable {
  std::size_t n_docs = 0;
  std::map<std::string, std::size_t> df;

  std::size_t lookup(const std::string& stem_form) const;
};

/// Document frequencies of all within-sentence stemmed 1..max_n-grams,
/// counted once per containing document.
DfTable compute_df(std::span<const AnnotatedDocument> train_docs,
                   int max_n = 3);

/// log2((n_docs + 1) / (df + 1)); the +1 terms count the current document.
double idf(const DfTable& table, const std::string& stem_form);

/// TSV: first line `#docs<TAB><N>`, then `stem-phrase<TAB>df` lines in
/// lexicographic order.
void save_df(const DfTable& table, const std::string& path);
DfTable load_df(const std::string& path);

struct Split {
  std::set<std::string> train;
  std::set<std::string> test;
};

/// Two lines: `train:<TAB>id,id,...` and `test:<TAB>id,id,...`.
Split load_split(const std::string& path);

/// All *.json documents of a directory, sorted by file name.
std::vector<AnnotatedDocument> load_corpus_dir(const std::string& dir);

}  // namespace kpbench

#endif  // KPBENCH_CORPUS_HPP
