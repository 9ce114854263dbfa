#include "kpbench/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace kpbench {
namespace {

// Continued-fraction evaluation of the regularized incomplete beta function
// (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr double kFpMin = 1e-300;
  constexpr double kEps = 1e-14;
  constexpr int kMaxIter = 500;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta did not converge");
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// Two-tailed p-value of a t statistic with dof degrees of freedom:
// p = I_{dof/(dof+t^2)}(dof/2, 1/2).
double t_two_tailed_p(double t, double dof) {
  return regularized_incomplete_beta(dof / 2.0, 0.5,
                                     dof / (dof + t * t));
}

// Gold keyphrase indices matched by the top-n extraction of one list.
std::set<std::size_t> matched_gold(const RankedList& list,
                                   const std::vector<GoldKeyphrase>& gold,
                                   int n, std::size_t* extracted_out) {
  RankedList filtered = redundancy_filter(list);
  const std::size_t take =
      std::min(filtered.items.size(), static_cast<std::size_t>(n));
  std::set<std::string> extracted;
  for (std::size_t i = 0; i < take; ++i)
    extracted.insert(filtered.items[i].stem);
  if (extracted_out != nullptr) *extracted_out = take;
  std::set<std::size_t> matched;
  for (std::size_t g = 0; g < gold.size(); ++g)
    for (const auto& alt : gold[g].alternatives)
      if (extracted.count(alt)) {
        matched.insert(g);
        break;
      }
  return matched;
}

DocScore make_score(std::size_t matches, std::size_t extracted,
                    std::size_t gold) {
  DocScore s;
  s.precision = extracted > 0
                    ? static_cast<double>(matches) / static_cast<double>(extracted)
                    : 0.0;
  s.recall = gold > 0
                 ? static_cast<double>(matches) / static_cast<double>(gold)
                 : 0.0;
  s.f = (s.precision + s.recall) > 0.0
            ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
            : 0.0;
  return s;
}

}  // namespace

EvalReport f_at_n(const std::map<std::string, RankedList>& ranked,
                  const ReferenceSet& refs, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  EvalReport report;
  report.n = n;
  for (const auto& [doc_id, list] : ranked) {
    const auto& gold = refs.gold(doc_id);
    std::size_t extracted = 0;
    auto matched = matched_gold(list, gold, n, &extracted);
    report.per_doc[doc_id] = make_score(matched.size(), extracted, gold.size());
    report.total_matches += matched.size();
    report.total_extracted += extracted;
    report.total_gold += gold.size();
  }
  report.micro = make_score(report.total_matches, report.total_extracted,
                            report.total_gold);
  return report;
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2)
    throw std::invalid_argument("sample_stddev needs at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double paired_ttest(const std::map<std::string, double>& a,
                    const std::map<std::string, double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired_ttest: mismatched document sets");
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (const auto& [doc_id, va] : a) {
    auto it = b.find(doc_id);
    if (it == b.end())
      throw std::invalid_argument("paired_ttest: mismatched document sets");
    diffs.push_back(va - it->second);
  }
  const std::size_t n = diffs.size();
  if (n < 2) throw std::invalid_argument("paired_ttest needs at least 2 docs");
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(n);
  double sd = sample_stddev(diffs);
  if (sd == 0.0)
    throw std::runtime_error("zero variance of differences");
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  return t_two_tailed_p(t, static_cast<double>(n - 1));
}

double all_models_overlap(
    const std::map<std::string, std::map<std::string, RankedList>>& by_model,
    const ReferenceSet& refs, int n) {
  if (by_model.empty())
    throw std::invalid_argument("all_models_overlap: no models");
  const auto& first = by_model.begin()->second;
  std::set<std::string> doc_ids;
  for (const auto& [doc_id, list] : first) doc_ids.insert(doc_id);
  for (const auto& [model, ranked] : by_model) {
    std::set<std::string> ids;
    for (const auto& [doc_id, list] : ranked) ids.insert(doc_id);
    if (ids != doc_ids)
      throw std::invalid_argument(
          "all_models_overlap: document sets differ across models");
  }

  std::size_t total_gold = 0, total_common = 0;
  for (const auto& doc_id : doc_ids) {
    const auto& gold = refs.gold(doc_id);
    total_gold += gold.size();
    bool first_model = true;
    std::set<std::size_t> common;
    for (const auto& [model, ranked] : by_model) {
      auto matched = matched_gold(ranked.at(doc_id), gold, n, nullptr);
      if (first_model) {
        common = std::move(matched);
        first_model = false;
      } else {
        std::set<std::size_t> inter;
        std::set_intersection(common.begin(), common.end(), matched.begin(),
                              matched.end(),
                              std::inserter(inter, inter.begin()));
        common = std::move(inter);
      }
    }
    total_common += common.size();
  }
  if (total_gold == 0) return 0.0;
  return static_cast<double>(total_common) / static_cast<double>(total_gold);
}

CorpusStats corpus_stats(std::span<const AnnotatedDocument> docs,
                         const ReferenceSet& refs) {
  if (docs.empty()) throw std::invalid_argument("empty corpus");
  CorpusStats stats;
  std::size_t total_gold = 0, total_matched = 0;
  for (const auto& doc : docs) {
    stats.avg_sentences += static_cast<double>(doc.sentence_count());
    stats.avg_words += static_cast<double>(doc.token_count());

    std::vector<std::vector<std::string>> sentence_stems;
    for (const Sentence* sent : doc.sentences()) {
      std::vector<std::string> stems;
      stems.reserve(sent->tokens.size());
      for (const auto& tok : sent->tokens)
        stems.push_back(stem_word(tok.surface));
      sentence_stems.push_back(std::move(stems));
    }

    const auto& gold = refs.gold(doc.id);
    total_gold += gold.size();
    for (const auto& kp : gold) {
      bool found = false;
      for (const auto& alt : kp.alternatives) {
        std::vector<std::string> words;
        std::string cur;
        for (char c : alt) {
          if (c == ' ') {
            words.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        words.push_back(cur);
        for (const auto& stems : sentence_stems) {
          if (words.size() > stems.size()) continue;
          for (std::size_t i = 0; i + words.size() <= stems.size(); ++i) {
            bool all = true;
            for (std::size_t k = 0; k < words.size(); ++k)
              if (stems[i + k] != words[k]) {
                all = false;
                break;
              }
            if (all) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) ++total_matched;
    }
  }
  stats.avg_sentences /= static_cast<double>(docs.size());
  stats.avg_words /= static_cast<double>(docs.size());
  stats.max_recall =
      total_gold > 0
          ? static_cast<double>(total_matched) / static_cast<double>(total_gold)
          : 0.0;
  return stats;
}

}  // namespace kpbench
