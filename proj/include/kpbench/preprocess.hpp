#ifndef KPBENCH_PREPROCESS_HPP
#define KPBENCH_PREPROCESS_HPP

#include <cstddef>
#include <vector>

#include "kpbench/corpus.hpp"

namespace kpbench {

struct LevelConfig {
  int level = 1;
  double reduction_ratio = 0.865;  // level 4: fraction of non-protected
                                   // sentences kept per document
  double damping = 0.85;

  void validate() const;  // throws std::invalid_argument on bad values
};

/// Level 2: keep title, header, abstract, introduction, related_work, body
/// and conclusion sections; drop everything else.
/// Throws if the result has no tokens.
AnnotatedDocument filter_level2(const AnnotatedDocument& doc);

/// Level 3: keep title, header, abstract, introduction, related_work,
/// background and conclusion sections; body is dropped at this level.
AnnotatedDocument filter_level3(const AnnotatedDocument& doc);

struct SentenceScore {
  std::size_t index;  // sentence index in document order
  double score;       // PageRank score divided by sentence length in words
};

/// Ranks sentences with TextRank: an undirected graph over sentences whose
/// edge weights count the distinct content-word stems (nouns, adjectives,
/// verbs) two sentences share, ranked by weighted PageRank. Returns all
/// sentences, best first; equal scores order by document position.
std::vector<SentenceScore> textrank_sentences(const AnnotatedDocument& doc,
                                              double damping = 0.85);

/// Level 4: keeps title and abstract sentences, plus the
/// ceil(reduction_ratio * count) best remaining sentences by normalized
/// TextRank score. Kept sentences stay in document order.
AnnotatedDocument reduce_level4(const AnnotatedDocument& doc,
                                const LevelConfig& cfg = {});

/// Applies the transform chain for cfg.level: level 1 is the identity,
/// level 3 is filter_level3(filter_level2(doc)), level 4 additionally
/// applies reduce_level4.
AnnotatedDocument apply_level(const AnnotatedDocument& doc,
                              const LevelConfig& cfg);

}  // namespace kpbench

#endif  // KPBENCH_PREPROCESS_HPP
