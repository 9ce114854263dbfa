#include "kpbench/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "kpbench/graphrank.hpp"

namespace kpbench {
namespace {

AnnotatedDocument keep_kinds(const AnnotatedDocument& doc,
                             const std::set<SectionKind>& kinds, int level) {
  AnnotatedDocument out;
  out.id = doc.id;
  out.level = level;
  for (const auto& sec : doc.sections)
    if (kinds.count(sec.kind)) out.sections.push_back(sec);
  if (out.token_count() == 0)
    throw std::runtime_error("document emptied by filtering: " + doc.id);
  out.recompute_offsets();
  return out;
}

}  // namespace

void LevelConfig::validate() const {
  if (level < 1 || level > 4)
    throw std::invalid_argument("level must be in 1..4");
  if (!(reduction_ratio > 0.0) || reduction_ratio > 1.0)
    throw std::invalid_argument("reduction_ratio must be in (0,1]");
  if (!(damping > 0.0) || !(damping < 1.0))
    throw std::invalid_argument("damping must be in (0,1)");
}

AnnotatedDocument filter_level2(const AnnotatedDocument& doc) {
  static const std::set<SectionKind> kept = {
      SectionKind::Title,        SectionKind::Header,
      SectionKind::Abstract,     SectionKind::Introduction,
      SectionKind::RelatedWork,  SectionKind::Body,
      SectionKind::Conclusion,
  };
  return keep_kinds(doc, kept, 2);
}

AnnotatedDocument filter_level3(const AnnotatedDocument& doc) {
  static const std::set<SectionKind> kept = {
      SectionKind::Title,        SectionKind::Header,
      SectionKind::Abstract,     SectionKind::Introduction,
      SectionKind::RelatedWork,  SectionKind::Background,
      SectionKind::Conclusion,
  };
  return keep_kinds(doc, kept, 3);
}

std::vector<SentenceScore> textrank_sentences(const AnnotatedDocument& doc,
                                              double damping) {
  auto sentences = doc.sentences();
  const std::size_t n = sentences.size();
  if (n == 0) throw std::invalid_argument("document has no sentences");

  std::vector<std::set<std::string>> content_stems(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& tok : sentences[i]->tokens)
      if (is_content_tag(tok.pos) && !tok.stem.empty())
        content_stems[i].insert(tok.stem);

  std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t shared = 0;
      for (const auto& s : content_stems[i])
        if (content_stems[j].count(s)) ++shared;
      weights[i][j] = weights[j][i] = static_cast<double>(shared);
    }

  auto scores = pagerank(weights, damping);
  std::vector<SentenceScore> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double len = static_cast<double>(sentences[i]->tokens.size());
    out[i] = {i, len > 0.0 ? scores[i] / len : 0.0};
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SentenceScore& a, const SentenceScore& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.index < b.index;
                   });
  return out;
}

AnnotatedDocument reduce_level4(const AnnotatedDocument& doc,
                                const LevelConfig& cfg) {
  cfg.validate();

  // Sentence indices in sections that are never dropped.
  std::set<std::size_t> protected_idx;
  std::size_t idx = 0;
  for (const auto& sec : doc.sections)
    for (std::size_t k = 0; k < sec.sentences.size(); ++k, ++idx)
      if (sec.kind == SectionKind::Title || sec.kind == SectionKind::Abstract)
        protected_idx.insert(idx);

  const std::size_t total = doc.sentence_count();
  const std::size_t n_other = total - protected_idx.size();
  const std::size_t keep_n = static_cast<std::size_t>(
      std::ceil(cfg.reduction_ratio * static_cast<double>(n_other)));

  std::set<std::size_t> kept(protected_idx);
  if (n_other > 0) {
    std::size_t taken = 0;
    for (const auto& ss : textrank_sentences(doc, cfg.damping)) {
      if (taken == keep_n) break;
      if (protected_idx.count(ss.index)) continue;
      kept.insert(ss.index);
      ++taken;
    }
  }

  AnnotatedDocument out;
  out.id = doc.id;
  out.level = 4;
  idx = 0;
  for (const auto& sec : doc.sections) {
    Section filtered;
    filtered.kind = sec.kind;
    for (const auto& sent : sec.sentences) {
      if (kept.count(idx)) filtered.sentences.push_back(sent);
      ++idx;
    }
    if (!filtered.sentences.empty()) out.sections.push_back(std::move(filtered));
  }
  out.recompute_offsets();
  return out;
}

AnnotatedDocument apply_level(const AnnotatedDocument& doc,
                              const LevelConfig& cfg) {
  cfg.validate();
  if (cfg.level == 1) {
    AnnotatedDocument out = doc;
    out.level = 1;
    out.recompute_offsets();
    return out;
  }
  AnnotatedDocument out = filter_level2(doc);
  if (cfg.level >= 3) out = filter_level3(out);
  if (cfg.level == 4) out = reduce_level4(out, cfg);
  return out;
}

}  // namespace kpbench
