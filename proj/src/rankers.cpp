#include "kpbench/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kpbench/graphrank.hpp"

namespace kpbench {

using nlohmann::json;

namespace {

struct Scored {
  const Candidate* cand;
  double score;
};

bool ranks_before(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.cand->positions.front() != b.cand->positions.front())
    return a.cand->positions.front() < b.cand->positions.front();
  if (a.cand->length_words != b.cand->length_words)
    return a.cand->length_words < b.cand->length_words;
  return a.cand->stem_form < b.cand->stem_form;
}

RankedList to_ranked_list(const CandidateSet& set, std::vector<Scored> scored) {
  std::sort(scored.begin(), scored.end(), ranks_before);
  RankedList list;
  list.doc_id = set.doc_id;
  list.items.reserve(scored.size());
  for (const auto& s : scored)
    list.items.push_back(
        {s.cand->stem_form, s.cand->surface_forms.front(), s.score});
  return list;
}

std::vector<std::string> split_words(std::string_view phrase) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : phrase) {
    if (c == ' ') {
      words.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  words.push_back(cur);
  return words;
}

bool contains_word_run(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
  if (needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size(); ++k)
      if (haystack[i + k] != needle[k]) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

NbModel nb_train(std::span<const TrainingRow> rows,
                 std::vector<std::string> feature_names) {
  if (rows.empty()) throw std::invalid_argument("no training rows");
  const std::size_t n_features =
      feature_names.empty() ? rows.front().features.size()
                            : feature_names.size();
  if (n_features == 0) throw std::invalid_argument("no features");
  if (feature_names.empty())
    for (std::size_t f = 0; f < n_features; ++f)
      feature_names.push_back("f" + std::to_string(f));

  std::array<std::size_t, 2> counts{0, 0};
  std::array<std::vector<double>, 2> sums{
      std::vector<double>(n_features, 0.0),
      std::vector<double>(n_features, 0.0)};
  for (const auto& row : rows) {
    if (row.features.size() != n_features)
      throw std::invalid_argument("inconsistent feature dimensions");
    const std::size_t c = row.label ? 1 : 0;
    ++counts[c];
    for (std::size_t f = 0; f < n_features; ++f) {
      if (row.features[f] < 0.0)
        throw std::invalid_argument("negative feature value");
      sums[c][f] += row.features[f];
    }
  }
  if (counts[0] == 0 || counts[1] == 0)
    throw std::runtime_error("degenerate training set");

  NbModel model;
  model.feature_names = std::move(feature_names);
  for (std::size_t c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(counts[c]) /
                                  static_cast<double>(rows.size()));
    double total = 0.0;
    for (double s : sums[c]) total += s;
    model.feature_log_prob[c].resize(n_features);
    for (std::size_t f = 0; f < n_features; ++f)
      model.feature_log_prob[c][f] =
          std::log((sums[c][f] + model.alpha) /
                   (total + model.alpha * static_cast<double>(n_features)));
  }
  return model;
}

double nb_score(const NbModel& model, std::span<const double> features) {
  if (features.size() != model.n_features())
    throw std::invalid_argument("feature dimension mismatch");
  std::array<double, 2> joint = model.log_prior;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t f = 0; f < features.size(); ++f)
      joint[c] += features[f] * model.feature_log_prob[c][f];
  double hi = std::max(joint[0], joint[1]);
  double z0 = std::exp(joint[0] - hi), z1 = std::exp(joint[1] - hi);
  return z1 / (z0 + z1);
}

void save_model(const NbModel& model, const std::string& path) {
  json root;
  root["alpha"] = model.alpha;
  root["log_prior"] = {{"negative", model.log_prior[0]},
                       {"positive", model.log_prior[1]}};
  root["feature_log_prob"] = {{"negative", model.feature_log_prob[0]},
                              {"positive", model.feature_log_prob[1]}};
  root["features"] = model.feature_names;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << root.dump(2) << "\n";
}

NbModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": malformed model file: " + e.what());
  }
  NbModel model;
  try {
    model.alpha = root.at("alpha").get<double>();
    model.log_prior[0] = root.at("log_prior").at("negative").get<double>();
    model.log_prior[1] = root.at("log_prior").at("positive").get<double>();
    model.feature_log_prob[0] =
        root.at("feature_log_prob").at("negative").get<std::vector<double>>();
    model.feature_log_prob[1] =
        root.at("feature_log_prob").at("positive").get<std::vector<double>>();
    model.feature_names =
        root.at("features").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": malformed model file: " + e.what());
  }
  if (model.feature_log_prob[0].size() != model.feature_names.size() ||
      model.feature_log_prob[1].size() != model.feature_names.size())
    throw std::runtime_error(path + ": inconsistent feature dimensions");
  return model;
}

RankedList rank_tfidf(const CandidateSet& set, const DfTable& df) {
  std::vector<Scored> scored;
  scored.reserve(set.by_stem.size());
  for (const auto& [stem, cand] : set.by_stem)
    scored.push_back(
        {&cand, static_cast<double>(cand.tf) * idf(df, cand.stem_form)});
  return to_ranked_list(set, std::move(scored));
}

namespace {

RankedList rank_supervised(const CandidateSet& set, const DfTable& df,
                           const NbModel& model, bool with_length) {
  const std::size_t want = with_length ? 3 : 2;
  if (model.n_features() != want)
    throw std::invalid_argument("model has wrong feature count");
  std::vector<Scored> scored;
  scored.reserve(set.by_stem.size());
  for (const auto& [stem, cand] : set.by_stem) {
    std::vector<double> features = {
        static_cast<double>(cand.tf) * idf(df, cand.stem_form),
        cand.first_pos_rel};
    if (with_length)
      features.push_back(static_cast<double>(cand.length_words));
    scored.push_back({&cand, nb_score(model, features)});
  }
  return to_ranked_list(set, std::move(scored));
}

}  // namespace

RankedList rank_kea(const CandidateSet& set, const DfTable& df,
                    const NbModel& model) {
  return rank_supervised(set, df, model, false);
}

RankedList rank_wingnus(const CandidateSet& set, const DfTable& df,
                        const NbModel& model) {
  return rank_supervised(set, df, model, true);
}

RankedList rank_kpminer(const CandidateSet& set, const DfTable& df,
                        const KpMinerParams& params) {
  if (params.alpha <= 0.0 || params.sigma <= 0.0)
    throw std::invalid_argument("kpminer parameters must be positive");
  double n_all = 0.0, n_multi = 0.0;
  for (const auto& [stem, cand] : set.by_stem) {
    n_all += static_cast<double>(cand.tf);
    if (cand.length_words > 1) n_multi += static_cast<double>(cand.tf);
  }
  const double boost =
      n_multi > 0.0 ? std::min(n_all / (n_multi * params.alpha), params.sigma)
                    : params.sigma;
  std::vector<Scored> scored;
  scored.reserve(set.by_stem.size());
  for (const auto& [stem, cand] : set.by_stem) {
    double score = static_cast<double>(cand.tf) * idf(df, cand.stem_form);
    if (cand.length_words > 1) score *= boost;
    scored.push_back({&cand, score});
  }
  return to_ranked_list(set, std::move(scored));
}

std::vector<Topic> cluster_topics(const CandidateSet& set, double threshold) {
  std::vector<const Candidate*> cands;
  cands.reserve(set.by_stem.size());
  for (const auto& [stem, cand] : set.by_stem) cands.push_back(&cand);
  const std::size_t n = cands.size();

  std::vector<std::set<std::string>> stem_sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto words = split_words(cands[i]->stem_form);
    stem_sets[i].insert(words.begin(), words.end());
  }

  // Average-linkage HAC over the pairwise similarity matrix, maintained with
  // the Lance-Williams update. Clusters are identified by their smallest
  // member index, which is also the lexicographically smallest stem.
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t shared = 0;
      for (const auto& s : stem_sets[i])
        if (stem_sets[j].count(s)) ++shared;
      double denom =
          static_cast<double>(std::min(stem_sets[i].size(), stem_sets[j].size()));
      sim[i][j] = sim[j][i] = denom > 0.0 ? shared / denom : 0.0;
    }

  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  while (true) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (sim[i][j] > best) {
          best = sim[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    if (best < threshold || best < 0.0) break;
    // Merge bj into bi (bi keeps the smaller index).
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      double merged = (static_cast<double>(size[bi]) * sim[bi][k] +
                       static_cast<double>(size[bj]) * sim[bj][k]) /
                      static_cast<double>(size[bi] + size[bj]);
      sim[bi][k] = sim[k][bi] = merged;
    }
    size[bi] += size[bj];
    members[bi].insert(members[bi].end(), members[bj].begin(),
                       members[bj].end());
    active[bj] = false;
  }

  std::vector<Topic> topics;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    Topic topic;
    for (std::size_t m : members[i])
      topic.members.push_back(cands[m]->stem_form);
    std::sort(topic.members.begin(), topic.members.end());
    topics.push_back(std::move(topic));
  }
  return topics;
}

RankedList rank_topicrank(const CandidateSet& set, double damping) {
  auto topics = cluster_topics(set);
  const std::size_t n = topics.size();
  RankedList list;
  list.doc_id = set.doc_id;
  if (n == 0) return list;

  std::vector<std::vector<std::size_t>> positions(n);
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& stem : topics[t].members) {
      const auto& cand = set.by_stem.at(stem);
      positions[t].insert(positions[t].end(), cand.positions.begin(),
                          cand.positions.end());
    }

  std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = 0.0;
      for (std::size_t p : positions[i])
        for (std::size_t q : positions[j]) {
          if (p == q) continue;
          w += 1.0 / std::fabs(static_cast<double>(p) -
                               static_cast<double>(q));
        }
      weights[i][j] = weights[j][i] = w;
    }

  auto scores = pagerank(weights, damping);
  for (std::size_t t = 0; t < n; ++t) topics[t].score = scores[t];

  // Representative: the first-occurring member; ties prefer the shorter,
  // then lexicographically smaller stem.
  std::vector<Scored> scored;
  scored.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Candidate* rep = nullptr;
    for (const auto& stem : topics[t].members) {
      const Candidate& cand = set.by_stem.at(stem);
      if (rep == nullptr) {
        rep = &cand;
        continue;
      }
      if (cand.positions.front() != rep->positions.front()) {
        if (cand.positions.front() < rep->positions.front()) rep = &cand;
      } else if (cand.length_words != rep->length_words) {
        if (cand.length_words < rep->length_words) rep = &cand;
      } else if (cand.stem_form < rep->stem_form) {
        rep = &cand;
      }
    }
    scored.push_back({rep, topics[t].score});
  }
  return to_ranked_list(set, std::move(scored));
}

RankedList redundancy_filter(RankedList list) {
  std::vector<std::vector<std::string>> kept_words;
  std::vector<RankedItem> kept;
  for (auto& item : list.items) {
    auto words = split_words(item.stem);
    bool redundant = false;
    for (const auto& hay : kept_words)
      if (contains_word_run(hay, words)) {
        redundant = true;
        break;
      }
    if (!redundant) {
      kept_words.push_back(std::move(words));
      kept.push_back(std::move(item));
    }
  }
  list.items = std::move(kept);
  return list;
}

std::vector<std::string> model_feature_names(Model model) {
  switch (model) {
    case Model::Kea: return {"tfidf", "first_pos_rel"};
    case Model::Wingnus: return {"tfidf", "first_pos_rel", "length_words"};
    default:
      throw std::invalid_argument(std::string("model requires no training: ") +
                                  std::string(to_string(model)));
  }
}

std::vector<TrainingRow> build_training_rows(
    std::span<const AnnotatedDocument> docs, const ReferenceSet& refs,
    Model model, const DfTable& df, const Stopwords& stopwords,
    std::size_t lasf) {
  const bool with_length = model == Model::Wingnus;
  model_feature_names(model);  // validates the model is supervised
  std::vector<TrainingRow> rows;
  bool any_positive = false;
  for (const auto& doc : docs) {
    const auto& gold = refs.gold(doc.id);
    std::set<std::string> gold_alts;
    for (const auto& kp : gold)
      gold_alts.insert(kp.alternatives.begin(), kp.alternatives.end());
    CandidateSet set = select_for_model(doc, model, stopwords, lasf);
    for (const auto& [stem, cand] : set.by_stem) {
      TrainingRow row;
      row.features = {static_cast<double>(cand.tf) * idf(df, cand.stem_form),
                      cand.first_pos_rel};
      if (with_length)
        row.features.push_back(static_cast<double>(cand.length_words));
      row.label = gold_alts.count(stem) > 0;
      any_positive = any_positive || row.label;
      rows.push_back(std::move(row));
    }
  }
  if (!any_positive)
    throw std::runtime_error("no positive training rows in the corpus");
  return rows;
}

RankedList run_model(const AnnotatedDocument& doc, Model model,
                     const DfTable& df, const NbModel* nb,
                     const Stopwords& stopwords, int top_n, std::size_t lasf,
                     const KpMinerParams& kp, double damping) {
  if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
  CandidateSet set = select_for_model(doc, model, stopwords, lasf);
  RankedList list;
  switch (model) {
    case Model::TfIdf: list = rank_tfidf(set, df); break;
    case Model::Kea:
      if (nb == nullptr) throw std::invalid_argument("kea needs a model");
      list = rank_kea(set, df, *nb);
      break;
    case Model::Wingnus:
      if (nb == nullptr) throw std::invalid_argument("wingnus needs a model");
      list = rank_wingnus(set, df, *nb);
      break;
    case Model::KpMiner: list = rank_kpminer(set, df, kp); break;
    case Model::TopicRank: list = rank_topicrank(set, damping); break;
  }
  list = redundancy_filter(std::move(list));
  if (list.items.size() > static_cast<std::size_t>(top_n))
    list.items.resize(static_cast<std::size_t>(top_n));
  return list;
}

}  // namespace kpbench
