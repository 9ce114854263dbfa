#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace oracle {

using kpbench::AnnotatedDocument;
using kpbench::Model;
using kpbench::ReferenceSet;
using kpbench::Sentence;
using kpbench::Stopwords;

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool punct_only(const std::string& w) {
  for (char c : w) {
    bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                 (c >= '0' && c <= '9');
    if (alnum || static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return true;
}

bool stop(const Stopwords& sw, const std::string& surface) {
  return sw.contains(lower(surface));
}

bool noun(const std::string& pos) {
  return pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "NNPS";
}

bool adjective(const std::string& pos) {
  return pos == "JJ" || pos == "JJR" || pos == "JJS";
}

struct Occ {
  std::vector<std::string> surfaces;
  std::size_t pos = 0;
};

std::string join_stems(const std::vector<std::string>& surfaces) {
  std::string out;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    if (i) out += ' ';
    out += kpbench::stem_word(surfaces[i]);
  }
  return out;
}

std::vector<Occ> raw_occurrences(const AnnotatedDocument& doc, Model model,
                                 const Stopwords& sw) {
  std::vector<Occ> occs;
  for (const Sentence* sent : doc.sentences()) {
    const auto& toks = sent->tokens;
    const std::size_t base = sent->doc_offset;
    const std::size_t len = toks.size();

    if (model == Model::TfIdf || model == Model::Kea) {
      for (std::size_t i = 0; i < len; ++i)
        for (std::size_t n = 1; n <= 3 && i + n <= len; ++n) {
          if (model == Model::Kea &&
              (stop(sw, toks[i].surface) || stop(sw, toks[i + n - 1].surface)))
            continue;
          Occ occ;
          occ.pos = base + i;
          for (std::size_t k = i; k < i + n; ++k)
            occ.surfaces.push_back(toks[k].surface);
          occs.push_back(occ);
        }
    } else if (model == Model::TopicRank) {
      std::size_t i = 0;
      while (i < len) {
        if (noun(toks[i].pos) || adjective(toks[i].pos)) {
          std::size_t j = i;
          Occ occ;
          occ.pos = base + i;
          while (j < len && (noun(toks[j].pos) || adjective(toks[j].pos)))
            occ.surfaces.push_back(toks[j++].surface);
          occs.push_back(occ);
          i = j;
        } else {
          ++i;
        }
      }
    } else if (model == Model::KpMiner) {
      std::size_t i = 0;
      while (i < len) {
        if (punct_only(toks[i].surface) || stop(sw, toks[i].surface)) {
          ++i;
          continue;
        }
        Occ occ;
        occ.pos = base + i;
        while (i < len && !punct_only(toks[i].surface) &&
               !stop(sw, toks[i].surface))
          occ.surfaces.push_back(toks[i++].surface);
        occs.push_back(occ);
      }
    } else {  // Wingnus
      struct Np {
        std::size_t begin, end;
      };
      std::vector<Np> nps;
      std::size_t i = 0;
      while (i < len) {
        std::size_t a = i;
        while (a < len && adjective(toks[a].pos)) ++a;
        std::size_t b = a;
        while (b < len && noun(toks[b].pos)) ++b;
        if (b == a || a - i > 3) {
          ++i;
          continue;
        }
        std::size_t take = std::min<std::size_t>(b - i, 4);
        nps.push_back({i, i + take});
        i += take;
      }
      auto emit = [&](std::size_t begin, std::size_t end) {
        Occ occ;
        occ.pos = base + begin;
        for (std::size_t k = begin; k < end; ++k)
          occ.surfaces.push_back(toks[k].surface);
        occs.push_back(occ);
      };
      for (const auto& np : nps) emit(np.begin, np.end);
      for (std::size_t a = 0; a + 1 < nps.size(); ++a) {
        if (nps[a + 1].begin != nps[a].end + 1) continue;
        const auto& mid = toks[nps[a].end];
        if (mid.pos == "IN" && lower(mid.surface) == "of")
          emit(nps[a].begin, nps[a + 1].end);
      }
    }
  }
  return occs;
}

std::vector<Cand> group_and_filter(const AnnotatedDocument& doc,
                                   std::vector<Occ> occs) {
  std::stable_sort(occs.begin(), occs.end(), [](const Occ& a, const Occ& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.surfaces.size() < b.surfaces.size();
  });
  const double total = static_cast<double>(doc.token_count());
  std::vector<Cand> cands;
  for (const auto& occ : occs) {
    std::string stem = join_stems(occ.surfaces);
    Cand* found = nullptr;
    for (auto& c : cands)
      if (c.stem == stem) {
        found = &c;
        break;
      }
    if (found == nullptr) {
      Cand c;
      c.stem = stem;
      c.words = occ.surfaces.size();
      c.first_rel = static_cast<double>(occ.pos) / total;
      cands.push_back(c);
      found = &cands.back();
    }
    std::string joined;
    for (std::size_t i = 0; i < occ.surfaces.size(); ++i) {
      if (i) joined += ' ';
      joined += occ.surfaces[i];
    }
    found->surfaces.push_back(joined);
    found->positions.push_back(occ.pos);
  }

  std::vector<Cand> kept;
  for (const auto& cand : cands) {
    // re-split the first surface into words
    std::vector<std::string> words;
    std::string cur;
    for (char c : cand.surfaces.front()) {
      if (c == ' ') {
        words.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    words.push_back(cur);
    bool ok = true;
    std::size_t joined_len = 0;
    for (const auto& w : words) {
      if (w.size() <= 1 || punct_only(w)) ok = false;
      joined_len += w.size();
    }
    if (joined_len < 3) ok = false;
    if (ok) kept.push_back(cand);
  }
  return kept;
}

double idf_of(const std::map<std::string, std::size_t>& df, std::size_t n_docs,
              const std::string& stem) {
  auto it = df.find(stem);
  std::size_t d = it == df.end() ? 0 : it->second;
  return std::log2((static_cast<double>(n_docs) + 1.0) /
                   (static_cast<double>(d) + 1.0));
}

bool before(const Item& a, std::size_t pos_a, std::size_t words_a,
            const Item& b, std::size_t pos_b, std::size_t words_b) {
  if (a.score != b.score) return a.score > b.score;
  if (pos_a != pos_b) return pos_a < pos_b;
  if (words_a != words_b) return words_a < words_b;
  return a.stem < b.stem;
}

std::vector<Item> sort_items(const std::vector<Cand>& cands,
                             const std::vector<double>& scores) {
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Item ia{cands[a].stem, "", scores[a]}, ib{cands[b].stem, "", scores[b]};
    return before(ia, cands[a].positions.front(), cands[a].words, ib,
                  cands[b].positions.front(), cands[b].words);
  });
  std::vector<Item> items;
  for (std::size_t idx : order)
    items.push_back({cands[idx].stem, cands[idx].surfaces.front(),
                     scores[idx]});
  return items;
}

std::vector<double> power_iteration(
    const std::vector<std::vector<double>>& w, double damping) {
  const std::size_t n = w.size();
  std::vector<double> out_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out_sum[i] += w[i][j];
  std::vector<double> s(n, 1.0 / static_cast<double>(n)), t(n);
  for (int iter = 0; iter < 100; ++iter) {
    double dangle = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (out_sum[i] == 0.0) dangle += s[i];
    for (std::size_t j = 0; j < n; ++j) {
      t[j] = (1.0 - damping) / static_cast<double>(n) +
             damping * dangle / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i)
        if (i != j && out_sum[i] > 0.0)
          t[j] += damping * s[i] * w[i][j] / out_sum[i];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::fabs(t[i] - s[i]);
    s = t;
    if (delta < 1e-6) break;
  }
  return s;
}

std::vector<std::set<std::string>> word_sets(const std::vector<Cand>& cands) {
  std::vector<std::set<std::string>> sets;
  for (const auto& cand : cands) {
    std::set<std::string> ws;
    std::string cur;
    for (char c : cand.stem) {
      if (c == ' ') {
        ws.insert(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    ws.insert(cur);
    sets.push_back(ws);
  }
  return sets;
}

// Naive average-linkage HAC recomputing cluster similarity from scratch at
// every merge; clusters stay ordered by their smallest member index.
std::vector<std::vector<std::size_t>> naive_hac(const std::vector<Cand>& cands,
                                                double threshold) {
  auto sets = word_sets(cands);
  auto pair_sim = [&](std::size_t a, std::size_t b) {
    std::size_t shared = 0;
    for (const auto& w : sets[a])
      if (sets[b].count(w)) ++shared;
    return static_cast<double>(shared) /
           static_cast<double>(std::min(sets[a].size(), sets[b].size()));
  };
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < cands.size(); ++i) clusters.push_back({i});
  while (clusters.size() > 1) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double total = 0.0;
        for (auto a : clusters[i])
          for (auto b : clusters[j]) total += pair_sim(a, b);
        double avg = total / static_cast<double>(clusters[i].size() *
                                                 clusters[j].size());
        if (avg > best + 1e-12) {
          best = avg;
          bi = i;
          bj = j;
        }
      }
    if (best < threshold) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(),
                        clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return clusters;
}

std::vector<Item> redundancy(std::vector<Item> items) {
  auto words_of = [](const std::string& stem) {
    std::vector<std::string> ws;
    std::string cur;
    for (char c : stem) {
      if (c == ' ') {
        ws.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    ws.push_back(cur);
    return ws;
  };
  std::vector<Item> kept;
  for (const auto& item : items) {
    auto needle = words_of(item.stem);
    bool contained = false;
    for (const auto& prev : kept) {
      auto hay = words_of(prev.stem);
      for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        bool all = true;
        for (std::size_t k = 0; k < needle.size(); ++k)
          if (hay[i + k] != needle[k]) {
            all = false;
            break;
          }
        if (all) {
          contained = true;
          break;
        }
      }
      if (contained) break;
    }
    if (!contained) kept.push_back(item);
  }
  return kept;
}

}  // namespace

std::map<std::string, std::size_t> df_counts(
    const std::vector<AnnotatedDocument>& docs, int max_n) {
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : docs) {
    std::set<std::string> grams;
    for (const Sentence* sent : doc.sentences()) {
      const auto& toks = sent->tokens;
      for (std::size_t i = 0; i < toks.size(); ++i)
        for (std::size_t n = 1;
             n <= static_cast<std::size_t>(max_n) && i + n <= toks.size();
             ++n) {
          std::vector<std::string> surfaces;
          for (std::size_t k = i; k < i + n; ++k)
            surfaces.push_back(toks[k].surface);
          grams.insert(join_stems(surfaces));
        }
    }
    for (const auto& g : grams) ++counts[g];
  }
  return counts;
}

std::vector<Cand> candidates(const AnnotatedDocument& doc, Model model,
                             const Stopwords& stopwords, std::size_t lasf) {
  auto cands = group_and_filter(doc, raw_occurrences(doc, model, stopwords));
  if (model == Model::KpMiner) {
    std::vector<Cand> kept;
    for (auto& c : cands)
      if (c.positions.size() >= lasf) kept.push_back(c);
    return kept;
  }
  return cands;
}

Nb train(const std::vector<AnnotatedDocument>& docs, const ReferenceSet& refs,
         Model model, const std::map<std::string, std::size_t>& df,
         std::size_t n_docs, const Stopwords& stopwords, std::size_t lasf) {
  const std::size_t n_features = model == Model::Wingnus ? 3 : 2;
  std::size_t counts[2] = {0, 0};
  std::vector<double> sums[2] = {std::vector<double>(n_features, 0.0),
                                 std::vector<double>(n_features, 0.0)};
  std::size_t total_rows = 0;
  for (const auto& doc : docs) {
    std::set<std::string> gold;
    for (const auto& kp : refs.gold(doc.id))
      gold.insert(kp.alternatives.begin(), kp.alternatives.end());
    auto cands = candidates(doc, model, stopwords, lasf);
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.stem < b.stem; });
    for (const auto& cand : cands) {
      int cls = gold.count(cand.stem) ? 1 : 0;
      ++counts[cls];
      ++total_rows;
      double features[3] = {
          static_cast<double>(cand.positions.size()) *
              idf_of(df, n_docs, cand.stem),
          cand.first_rel, static_cast<double>(cand.words)};
      for (std::size_t f = 0; f < n_features; ++f)
        sums[cls][f] += features[f];
    }
  }
  if (counts[0] == 0 || counts[1] == 0)
    throw std::runtime_error("oracle: degenerate training set");
  Nb nb;
  for (int cls = 0; cls < 2; ++cls) {
    nb.prior_log[cls] = std::log(static_cast<double>(counts[cls]) /
                                 static_cast<double>(total_rows));
    double total = 0.0;
    for (double v : sums[cls]) total += v;
    nb.feat_log[cls].resize(n_features);
    for (std::size_t f = 0; f < n_features; ++f)
      nb.feat_log[cls][f] = std::log(
          (sums[cls][f] + 1.0) / (total + static_cast<double>(n_features)));
  }
  return nb;
}

std::vector<Item> run(const AnnotatedDocument& doc, Model model,
                      const std::map<std::string, std::size_t>& df,
                      std::size_t n_docs, const Nb* nb,
                      const Stopwords& stopwords, int top_n, std::size_t lasf,
                      double kp_alpha, double kp_sigma, double damping) {
  auto cands = candidates(doc, model, stopwords, lasf);
  std::vector<Item> items;

  if (model == Model::TopicRank) {
    auto clusters = naive_hac(cands, 0.25);
    const std::size_t n = clusters.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double sum = 0.0;
        for (auto a : clusters[i])
          for (auto b : clusters[j])
            for (auto p : cands[a].positions)
              for (auto q : cands[b].positions)
                if (p != q)
                  sum += 1.0 / std::fabs(static_cast<double>(p) -
                                         static_cast<double>(q));
        w[i][j] = w[j][i] = sum;
      }
    auto scores = power_iteration(w, damping);
    std::vector<Cand> reps;
    std::vector<double> rep_scores;
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t best = clusters[t].front();
      for (auto idx : clusters[t]) {
        const Cand& a = cands[idx];
        const Cand& b = cands[best];
        if (a.positions.front() != b.positions.front()) {
          if (a.positions.front() < b.positions.front()) best = idx;
        } else if (a.words != b.words) {
          if (a.words < b.words) best = idx;
        } else if (a.stem < b.stem) {
          best = idx;
        }
      }
      reps.push_back(cands[best]);
      rep_scores.push_back(scores[t]);
    }
    items = sort_items(reps, rep_scores);
  } else {
    std::vector<double> scores(cands.size(), 0.0);
    double n_all = 0.0, n_multi = 0.0;
    for (const auto& cand : cands) {
      n_all += static_cast<double>(cand.positions.size());
      if (cand.words > 1) n_multi += static_cast<double>(cand.positions.size());
    }
    double boost = kp_sigma;
    if (n_multi > 0.0)
      boost = std::min(n_all / (n_multi * kp_alpha), kp_sigma);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Cand& cand = cands[i];
      double tf = static_cast<double>(cand.positions.size());
      double tfidf = tf * idf_of(df, n_docs, cand.stem);
      switch (model) {
        case Model::TfIdf:
          scores[i] = tfidf;
          break;
        case Model::KpMiner:
          scores[i] = cand.words > 1 ? tfidf * boost : tfidf;
          break;
        case Model::Kea:
        case Model::Wingnus: {
          double z[2];
          for (int cls = 0; cls < 2; ++cls) {
            z[cls] = nb->prior_log[cls] + tfidf * nb->feat_log[cls][0] +
                     cand.first_rel * nb->feat_log[cls][1];
            if (model == Model::Wingnus)
              z[cls] += static_cast<double>(cand.words) * nb->feat_log[cls][2];
          }
          double hi = std::max(z[0], z[1]);
          scores[i] = std::exp(z[1] - hi) /
                      (std::exp(z[0] - hi) + std::exp(z[1] - hi));
          break;
        }
        default:
          break;
      }
    }
    items = sort_items(cands, scores);
  }

  items = redundancy(std::move(items));
  if (items.size() > static_cast<std::size_t>(top_n))
    items.resize(static_cast<std::size_t>(top_n));
  return items;
}

}  // namespace oracle
