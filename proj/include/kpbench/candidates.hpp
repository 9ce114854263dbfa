#ifndef KPBENCH_CANDIDATES_HPP
#define KPBENCH_CANDIDATES_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kpbench/corpus.hpp"

namespace kpbench {

struct Candidate {
  std::string stem_form;                   // space-joined word stems
  std::vector<std::string> surface_forms;  // one per occurrence
  std::vector<std::size_t> positions;      // first-token offsets, increasing
  std::size_t tf = 0;
  std::size_t length_words = 0;
  double first_pos_rel = 0.0;  // positions.front() / document token count
};

struct CandidateSet {
  std::string doc_id;
  std::map<std::string, Candidate> by_stem;
};

/// Drops candidates whose surface form is shorter than 3 characters, or that
/// contain an all-punctuation word or a 1-character word.
CandidateSet shared_filter(CandidateSet set);

/// TF*IDF candidates: all within-sentence 1..max_n-grams.
CandidateSet select_ngrams(const AnnotatedDocument& doc, int max_n = 3);

/// Kea candidates: n-grams that neither begin nor end with a stopword.
CandidateSet select_ngrams_kea(const AnnotatedDocument& doc,
                               const Stopwords& stopwords, int max_n = 3);

/// TopicRank candidates: longest within-sentence runs of nouns and
/// adjectives.
CandidateSet select_noun_adj_sequences(const AnnotatedDocument& doc);

/// KP-Miner candidates: maximal within-sentence blocks between stopwords and
/// punctuation tokens; blocks seen fewer than `lasf` times are dropped.
CandidateSet select_stopword_blocks(const AnnotatedDocument& doc,
                                    const Stopwords& stopwords,
                                    std::size_t lasf = 2);

/// WINGNUS candidates: simplex noun phrases (JJ* NN+, at most 4 words,
/// maximal and non-overlapping) plus "<NP> of <NP>" combinations.
CandidateSet select_np_rules(const AnnotatedDocument& doc);

/// Fraction of the document's gold keyphrases whose alternatives include at
/// least one candidate stem form.
double max_recall(const CandidateSet& set, const ReferenceSet& refs);

enum class Model { TfIdf, Kea, TopicRank, KpMiner, Wingnus };

Model model_from_string(std::string_view name);
std::string_view to_string(Model model);
bool is_supervised(Model model);

/// The candidate strategy paired with each model.
CandidateSet select_for_model(const AnnotatedDocument& doc, Model model,
                              const Stopwords& stopwords,
                              std::size_t lasf = 2);

}  // namespace kpbench

#endif  // KPBENCH_CANDIDATES_HPP
