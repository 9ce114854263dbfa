#ifndef KPBENCH_EVALUATE_HPP
#define KPBENCH_EVALUATE_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "kpbench/corpus.hpp"
#include "kpbench/rankers.hpp"

namespace kpbench {

struct DocScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct EvalReport {
  std::map<std::string, DocScore> per_doc;
  DocScore micro;
  int n = 10;
  std::size_t total_matches = 0;
  std::size_t total_extracted = 0;
  std::size_t total_gold = 0;
};

/// SemEval-style micro-averaged P/R/F at the top n keyphrases. Ranked lists
/// are redundancy-filtered before truncation; a gold keyphrase is matched
/// when any of its alternatives equals an extracted stem.
EvalReport f_at_n(const std::map<std::string, RankedList>& ranked,
                  const ReferenceSet& refs, int n = 10);

/// Sample standard deviation (n-1 denominator). Throws on fewer than two
/// values.
double sample_stddev(std::span<const double> values);

/// Two-tailed paired Student's t-test over per-document scores with matching
/// keys. Throws on mismatched keys, fewer than two pairs, or zero variance
/// of the differences.
double paired_ttest(const std::map<std::string, double>& a,
                    const std::map<std::string, double>& b);

/// Fraction of gold keyphrases found by every model at the top n.
double all_models_overlap(
    const std::map<std::string, std::map<std::string, RankedList>>& by_model,
    const ReferenceSet& refs, int n = 10);

struct CorpusStats {
  double avg_sentences = 0.0;
  double avg_words = 0.0;
  double max_recall = 0.0;  // gold alternatives present as contiguous
                            // stemmed word runs in their document
};

CorpusStats corpus_stats(std::span<const AnnotatedDocument> docs,
                         const ReferenceSet& refs);

}  // namespace kpbench

#endif  // KPBENCH_EVALUATE_HPP
