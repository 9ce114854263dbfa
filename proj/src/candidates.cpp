#include "kpbench/candidates.hpp"

#include <algorithm>
#include <stdexcept>

namespace kpbench {
namespace {

// An occurrence is a within-sentence token span plus its document offset.
struct Occurrence {
  const Sentence* sentence;
  std::size_t begin;  // token index within the sentence
  std::size_t count;
  std::size_t position;  // document offset of the first token
};

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

CandidateSet group_occurrences(const AnnotatedDocument& doc,
                               std::vector<Occurrence> occurrences) {
  std::sort(occurrences.begin(), occurrences.end(),
            [](const Occurrence& a, const Occurrence& b) {
              if (a.position != b.position) return a.position < b.position;
              return a.count < b.count;
            });
  const double doc_tokens = static_cast<double>(doc.token_count());
  CandidateSet set;
  set.doc_id = doc.id;
  for (const auto& occ : occurrences) {
    std::string stem, surface;
    for (std::size_t k = 0; k < occ.count; ++k) {
      const Token& tok = occ.sentence->tokens[occ.begin + k];
      if (k > 0) {
        stem += ' ';
        surface += ' ';
      }
      stem += stem_word(tok.surface);
      surface += tok.surface;
    }
    Candidate& cand = set.by_stem[stem];
    if (cand.tf == 0) {
      cand.stem_form = stem;
      cand.length_words = occ.count;
      cand.first_pos_rel = static_cast<double>(occ.position) / doc_tokens;
    }
    cand.surface_forms.push_back(std::move(surface));
    cand.positions.push_back(occ.position);
    ++cand.tf;
  }
  return set;
}

bool is_stopword_token(const Token& tok, const Stopwords& stopwords) {
  return stopwords.contains(tok.surface);
}

}  // namespace

CandidateSet shared_filter(CandidateSet set) {
  for (auto it = set.by_stem.begin(); it != set.by_stem.end();) {
    const Candidate& cand = it->second;
    std::vector<std::string> words;
    {
      std::string cur;
      for (char c : cand.surface_forms.front()) {
        if (c == ' ') {
          words.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      words.push_back(cur);
    }
    std::size_t total_chars = 0;
    bool drop = false;
    for (const auto& w : words) {
      std::size_t len = codepoint_count(w);
      total_chars += len;
      if (len <= 1 || is_punct_word(w)) {
        drop = true;
        break;
      }
    }
    if (!drop && total_chars < 3) drop = true;
    it = drop ? set.by_stem.erase(it) : std::next(it);
  }
  return set;
}

CandidateSet select_ngrams(const AnnotatedDocument& doc, int max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  std::vector<Occurrence> occ;
  for (const Sentence* sent : doc.sentences()) {
    const std::size_t len = sent->tokens.size();
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n) &&
                              i + n <= len;
           ++n)
        occ.push_back({sent, i, n, sent->doc_offset + i});
  }
  return shared_filter(group_occurrences(doc, std::move(occ)));
}

CandidateSet select_ngrams_kea(const AnnotatedDocument& doc,
                               const Stopwords& stopwords, int max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  std::vector<Occurrence> occ;
  for (const Sentence* sent : doc.sentences()) {
    const std::size_t len = sent->tokens.size();
    for (std::size_t i = 0; i < len; ++i) {
      if (is_stopword_token(sent->tokens[i], stopwords)) continue;
      for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n) &&
                              i + n <= len;
           ++n) {
        if (is_stopword_token(sent->tokens[i + n - 1], stopwords)) continue;
        occ.push_back({sent, i, n, sent->doc_offset + i});
      }
    }
  }
  return shared_filter(group_occurrences(doc, std::move(occ)));
}

CandidateSet select_noun_adj_sequences(const AnnotatedDocument& doc) {
  std::vector<Occurrence> occ;
  for (const Sentence* sent : doc.sentences()) {
    const auto& toks = sent->tokens;
    std::size_t i = 0;
    while (i < toks.size()) {
      if (!is_noun_tag(toks[i].pos) && !is_adjective_tag(toks[i].pos)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < toks.size() &&
             (is_noun_tag(toks[j].pos) || is_adjective_tag(toks[j].pos)))
        ++j;
      occ.push_back({sent, i, j - i, sent->doc_offset + i});
      i = j;
    }
  }
  return shared_filter(group_occurrences(doc, std::move(occ)));
}

CandidateSet select_stopword_blocks(const AnnotatedDocument& doc,
                                    const Stopwords& stopwords,
                                    std::size_t lasf) {
  if (lasf < 1) throw std::invalid_argument("lasf must be >= 1");
  std::vector<Occurrence> occ;
  for (const Sentence* sent : doc.sentences()) {
    const auto& toks = sent->tokens;
    std::size_t i = 0;
    while (i < toks.size()) {
      if (is_punct_word(toks[i].surface) ||
          is_stopword_token(toks[i], stopwords)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < toks.size() && !is_punct_word(toks[j].surface) &&
             !is_stopword_token(toks[j], stopwords))
        ++j;
      occ.push_back({sent, i, j - i, sent->doc_offset + i});
      i = j;
    }
  }
  CandidateSet set = group_occurrences(doc, std::move(occ));
  for (auto it = set.by_stem.begin(); it != set.by_stem.end();)
    it = it->second.tf < lasf ? set.by_stem.erase(it) : std::next(it);
  return shared_filter(std::move(set));
}

CandidateSet select_np_rules(const AnnotatedDocument& doc) {
  constexpr std::size_t kMaxNpWords = 4;
  std::vector<Occurrence> occ;
  for (const Sentence* sent : doc.sentences()) {
    const auto& toks = sent->tokens;

    // R1: maximal, non-overlapping JJ* NN+ matches of at most 4 words.
    struct Match {
      std::size_t begin, end;  // token range [begin, end)
    };
    std::vector<Match> r1;
    std::size_t i = 0;
    while (i < toks.size()) {
      std::size_t adj = i;
      while (adj < toks.size() && is_adjective_tag(toks[adj].pos)) ++adj;
      std::size_t noun = adj;
      while (noun < toks.size() && is_noun_tag(toks[noun].pos)) ++noun;
      std::size_t n_adj = adj - i, n_noun = noun - adj;
      if (n_noun == 0 || n_adj > kMaxNpWords - 1) {
        ++i;
        continue;
      }
      std::size_t len = std::min(n_adj + n_noun, kMaxNpWords);
      r1.push_back({i, i + len});
      occ.push_back({sent, i, len, sent->doc_offset + i});
      i += len;
    }

    // R2: <R1> of <R1>.
    for (std::size_t a = 0; a + 1 < r1.size(); ++a) {
      const Match& left = r1[a];
      const Match& right = r1[a + 1];
      if (right.begin != left.end + 1) continue;
      const Token& mid = toks[left.end];
      if (mid.pos == "IN" && to_lower(mid.surface) == "of")
        occ.push_back({sent, left.begin, right.end - left.begin,
                       sent->doc_offset + left.begin});
    }
  }
  return shared_filter(group_occurrences(doc, std::move(occ)));
}

double max_recall(const CandidateSet& set, const ReferenceSet& refs) {
  const auto& gold = refs.gold(set.doc_id);
  if (gold.empty())
    throw std::runtime_error("no gold keyphrases for " + set.doc_id);
  std::size_t matched = 0;
  for (const auto& kp : gold)
    for (const auto& alt : kp.alternatives)
      if (set.by_stem.count(alt)) {
        ++matched;
        break;
      }
  return static_cast<double>(matched) / static_cast<double>(gold.size());
}

Model model_from_string(std::string_view name) {
  if (name == "tfidf") return Model::TfIdf;
  if (name == "kea") return Model::Kea;
  if (name == "topicrank") return Model::TopicRank;
  if (name == "kpminer") return Model::KpMiner;
  if (name == "wingnus") return Model::Wingnus;
  throw std::invalid_argument("unknown model: " + std::string(name));
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::TfIdf: return "tfidf";
    case Model::Kea: return "kea";
    case Model::TopicRank: return "topicrank";
    case Model::KpMiner: return "kpminer";
    case Model::Wingnus: return "wingnus";
  }
  return "?";
}

bool is_supervised(Model model) {
  return model == Model::Kea || model == Model::Wingnus;
}

CandidateSet select_for_model(const AnnotatedDocument& doc, Model model,
                              const Stopwords& stopwords, std::size_t lasf) {
  switch (model) {
    case Model::TfIdf: return select_ngrams(doc);
    case Model::Kea: return select_ngrams_kea(doc, stopwords);
    case Model::TopicRank: return select_noun_adj_sequences(doc);
    case Model::KpMiner: return select_stopword_blocks(doc, stopwords, lasf);
    case Model::Wingnus: return select_np_rules(doc);
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace kpbench
