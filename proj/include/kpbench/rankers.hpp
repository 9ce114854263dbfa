#ifndef KPBENCH_RANKERS_HPP
#define KPBENCH_RANKERS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kpbench/candidates.hpp"
#include "kpbench/corpus.hpp"

namespace kpbench {

struct RankedItem {
  std::string stem;
  std::string surface;  // first-occurring surface form
  double score = 0.0;
};

struct RankedList {
  std::string doc_id;
  std::vector<RankedItem> items;  // scores non-increasing, stems distinct
};

struct TrainingRow {
  std::vector<double> features;  // non-negative
  bool label = false;
};

/// Multinomial naive Bayes with Laplace smoothing; class index 0 is the
/// negative class, 1 the positive class.
struct NbModel {
  double alpha = 1.0;
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> feature_log_prob;
  std::vector<std::string> feature_names;  // order-significant

  std::size_t n_features() const { return feature_names.size(); }
};

/// Trains the classifier treating feature values as fractional counts:
///   P(f|c) = (sum_c x_f + alpha) / (sum_c sum_g x_g + alpha * n_features).
/// Throws on a single-class training set.
NbModel nb_train(std::span<const TrainingRow> rows,
                 std::vector<std::string> feature_names = {});

/// Posterior probability of the positive class.
double nb_score(const NbModel& model, std::span<const double> features);

/// Model file: JSON with alpha, class log priors, per-class feature log
/// probabilities and the ordered feature-name list.
void save_model(const NbModel& model, const std::string& path);
NbModel load_model(const std::string& path);

// Deterministic tie-breaking shared by all rankers: score desc, first
// position asc, length asc, lexicographic stem.

RankedList rank_tfidf(const CandidateSet& set, const DfTable& df);

/// Kea: NB posterior over (tf*idf, first_pos_rel).
RankedList rank_kea(const CandidateSet& set, const DfTable& df,
                    const NbModel& model);

/// WINGNUS: NB posterior over (tf*idf, first_pos_rel, length_words).
RankedList rank_wingnus(const CandidateSet& set, const DfTable& df,
                        const NbModel& model);

struct KpMinerParams {
  double alpha = 2.3;
  double sigma = 3.0;
};

/// KP-Miner: tf*idf with a document-length boost for multi-word candidates:
/// B = min(N_d / (P_d * alpha), sigma), N_d/P_d counting all / multi-word
/// candidate occurrences.
RankedList rank_kpminer(const CandidateSet& set, const DfTable& df,
                        const KpMinerParams& params = {});

struct Topic {
  std::vector<std::string> members;  // stem forms, sorted
  double score = 0.0;
};

/// Hierarchical agglomerative clustering (average linkage) of candidates
/// viewed as stem sets, with similarity |A n B| / min(|A|,|B|); clusters
/// merge while the linkage similarity is >= threshold.
std::vector<Topic> cluster_topics(const CandidateSet& set,
                                  double threshold = 0.25);

/// TopicRank: complete topic graph weighted by reciprocal occurrence
/// distances, ranked by weighted PageRank; one keyphrase per topic (its
/// first-occurring member).
RankedList rank_topicrank(const CandidateSet& set, double damping = 0.85);

/// Drops items whose stem occurs as a contiguous word subsequence of a
/// higher-ranked kept item.
RankedList redundancy_filter(RankedList list);

/// One row per candidate per document; label = the candidate stem matches a
/// gold alternative. Only supervised models (kea, wingnus) are valid.
std::vector<TrainingRow> build_training_rows(
    std::span<const AnnotatedDocument> docs, const ReferenceSet& refs,
    Model model, const DfTable& df, const Stopwords& stopwords,
    std::size_t lasf = 2);

std::vector<std::string> model_feature_names(Model model);

/// extract-side pipeline: select, rank, redundancy-filter, truncate.
RankedList run_model(const AnnotatedDocument& doc, Model model,
                     const DfTable& df, const NbModel* nb,
                     const Stopwords& stopwords, int top_n,
                     std::size_t lasf = 2, const KpMinerParams& kp = {},
                     double damping = 0.85);

}  // namespace kpbench

#endif  // KPBENCH_RANKERS_HPP
