// Python bindings for the kpbench core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpbench/candidates.hpp"
#include "kpbench/corpus.hpp"
#include "kpbench/evaluate.hpp"
#include "kpbench/graphrank.hpp"
#include "kpbench/preprocess.hpp"
#include "kpbench/rankers.hpp"
#include "kpbench/textcore.hpp"

namespace py = pybind11;
using namespace kpbench;

namespace {

ReferenceSet make_references(
    const std::map<std::string, std::vector<std::vector<std::string>>>& raw) {
  ReferenceSet refs;
  for (const auto& [doc_id, phrases] : raw)
    refs.by_doc[doc_id] = make_gold(phrases);
  return refs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Keyphrase extraction benchmark toolkit";

  m.def("stem_word", &stem_word, py::arg("word"),
        "Porter stem of a lowercased word");
  m.def("porter_stem", &porter_stem, py::arg("word"));
  m.def(
      "stem_phrase",
      [](const std::vector<std::string>& words) { return stem_phrase(words); },
      py::arg("words"), "Space-joined stems of the lowercased words");
  m.def("is_punct_word", &is_punct_word, py::arg("word"));

  py::class_<Stopwords>(m, "Stopwords")
      .def(py::init<const std::vector<std::string>&>(), py::arg("words"))
      .def_static("load", &Stopwords::load, py::arg("path"))
      .def_static("english", &Stopwords::english,
                  py::return_value_policy::reference)
      .def("contains", &Stopwords::contains, py::arg("word"))
      .def("__contains__", &Stopwords::contains)
      .def("__len__", &Stopwords::size);

  py::class_<Token>(m, "Token")
      .def(py::init<std::string, std::string>(), py::arg("surface"),
           py::arg("pos"))
      .def_readonly("surface", &Token::surface)
      .def_readonly("pos", &Token::pos)
      .def_readonly("stem", &Token::stem);

  py::class_<Sentence>(m, "Sentence")
      .def_readonly("tokens", &Sentence::tokens)
      .def_readonly("doc_offset", &Sentence::doc_offset)
      .def("__len__", &Sentence::size);

  py::class_<Section>(m, "Section")
      .def_property_readonly(
          "kind", [](const Section& s) { return std::string(to_string(s.kind)); })
      .def_readonly("sentences", &Section::sentences);

  py::class_<AnnotatedDocument>(m, "AnnotatedDocument")
      .def_readonly("id", &AnnotatedDocument::id)
      .def_readonly("sections", &AnnotatedDocument::sections)
      .def_readonly("level", &AnnotatedDocument::level)
      .def("token_count", &AnnotatedDocument::token_count)
      .def("sentence_count", &AnnotatedDocument::sentence_count)
      .def("to_json", &document_to_json);

  m.def("parse_document", &parse_document_json, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("load_document", &load_document, py::arg("path"));
  m.def("save_document", &save_document, py::arg("doc"), py::arg("path"));
  m.def("load_corpus_dir", &load_corpus_dir, py::arg("dir"));

  py::class_<GoldKeyphrase>(m, "GoldKeyphrase")
      .def_readonly("alternatives", &GoldKeyphrase::alternatives);

  py::class_<ReferenceSet>(m, "ReferenceSet")
      .def_readonly("by_doc", &ReferenceSet::by_doc)
      .def("has", &ReferenceSet::has)
      .def("gold", &ReferenceSet::gold, py::arg("doc_id"),
           py::return_value_policy::reference_internal);

  m.def("load_references", &load_references, py::arg("path"));
  m.def("make_references", &make_references, py::arg("by_doc"),
        "Build a ReferenceSet from {doc_id: [[alternative, ...], ...]}; "
        "phrases are stemmed");

  py::class_<DfTable>(m, "DfTable")
      .def_readonly("n_docs", &DfTable::n_docs)
      .def_readonly("df", &DfTable::df)
      .def("lookup", &DfTable::lookup, py::arg("stem_form"));

  m.def(
      "compute_df",
      [](const std::vector<AnnotatedDocument>& docs, int max_n) {
        return compute_df(docs, max_n);
      },
      py::arg("train_docs"), py::arg("max_n") = 3);
  m.def("idf", &idf, py::arg("table"), py::arg("stem_form"));
  m.def("save_df", &save_df, py::arg("table"), py::arg("path"));
  m.def("load_df", &load_df, py::arg("path"));

  py::class_<Split>(m, "Split")
      .def_readonly("train", &Split::train)
      .def_readonly("test", &Split::test);
  m.def("load_split", &load_split, py::arg("path"));

  py::class_<LevelConfig>(m, "LevelConfig")
      .def(py::init([](int level, double reduction_ratio, double damping) {
             LevelConfig cfg{level, reduction_ratio, damping};
             cfg.validate();
             return cfg;
           }),
           py::arg("level") = 1, py::arg("reduction_ratio") = 0.865,
           py::arg("damping") = 0.85)
      .def_readwrite("level", &LevelConfig::level)
      .def_readwrite("reduction_ratio", &LevelConfig::reduction_ratio)
      .def_readwrite("damping", &LevelConfig::damping);

  m.def("filter_level2", &filter_level2, py::arg("doc"));
  m.def("filter_level3", &filter_level3, py::arg("doc"));
  m.def(
      "textrank_sentences",
      [](const AnnotatedDocument& doc, double damping) {
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& ss : textrank_sentences(doc, damping))
          out.emplace_back(ss.index, ss.score);
        return out;
      },
      py::arg("doc"), py::arg("damping") = 0.85,
      "Sentence indices with normalized TextRank scores, best first");
  m.def("reduce_level4", &reduce_level4, py::arg("doc"),
        py::arg("cfg") = LevelConfig{4, 0.865, 0.85});
  m.def("apply_level", &apply_level, py::arg("doc"), py::arg("cfg"));

  py::class_<Candidate>(m, "Candidate")
      .def_readonly("stem_form", &Candidate::stem_form)
      .def_readonly("surface_forms", &Candidate::surface_forms)
      .def_readonly("positions", &Candidate::positions)
      .def_readonly("tf", &Candidate::tf)
      .def_readonly("length_words", &Candidate::length_words)
      .def_readonly("first_pos_rel", &Candidate::first_pos_rel);

  py::class_<CandidateSet>(m, "CandidateSet")
      .def_readonly("doc_id", &CandidateSet::doc_id)
      .def_readonly("by_stem", &CandidateSet::by_stem)
      .def("__len__",
           [](const CandidateSet& s) { return s.by_stem.size(); });

  py::enum_<Model>(m, "Model")
      .value("tfidf", Model::TfIdf)
      .value("kea", Model::Kea)
      .value("topicrank", Model::TopicRank)
      .value("kpminer", Model::KpMiner)
      .value("wingnus", Model::Wingnus);
  m.def("model_from_string", &model_from_string, py::arg("name"));
  m.def("is_supervised", &is_supervised, py::arg("model"));

  m.def("shared_filter", &shared_filter, py::arg("candidates"));
  m.def("select_ngrams", &select_ngrams, py::arg("doc"), py::arg("max_n") = 3);
  m.def("select_ngrams_kea", &select_ngrams_kea, py::arg("doc"),
        py::arg("stopwords"), py::arg("max_n") = 3);
  m.def("select_noun_adj_sequences", &select_noun_adj_sequences,
        py::arg("doc"));
  m.def("select_stopword_blocks", &select_stopword_blocks, py::arg("doc"),
        py::arg("stopwords"), py::arg("lasf") = 2);
  m.def("select_np_rules", &select_np_rules, py::arg("doc"));
  m.def("select_for_model", &select_for_model, py::arg("doc"),
        py::arg("model"), py::arg("stopwords"), py::arg("lasf") = 2);
  m.def("max_recall", &max_recall, py::arg("candidates"), py::arg("refs"));

  py::class_<RankedItem>(m, "RankedItem")
      .def_readonly("stem", &RankedItem::stem)
      .def_readonly("surface", &RankedItem::surface)
      .def_readonly("score", &RankedItem::score);

  py::class_<RankedList>(m, "RankedList")
      .def_readonly("doc_id", &RankedList::doc_id)
      .def_readonly("items", &RankedList::items)
      .def("__len__",
           [](const RankedList& l) { return l.items.size(); });

  py::class_<TrainingRow>(m, "TrainingRow")
      .def(py::init([](std::vector<double> features, bool label) {
             return TrainingRow{std::move(features), label};
           }),
           py::arg("features"), py::arg("label"))
      .def_readonly("features", &TrainingRow::features)
      .def_readonly("label", &TrainingRow::label);

  py::class_<NbModel>(m, "NbModel")
      .def_readonly("alpha", &NbModel::alpha)
      .def_readonly("log_prior", &NbModel::log_prior)
      .def_readonly("feature_log_prob", &NbModel::feature_log_prob)
      .def_readonly("feature_names", &NbModel::feature_names);

  m.def(
      "nb_train",
      [](const std::vector<TrainingRow>& rows,
         std::vector<std::string> feature_names) {
        return nb_train(rows, std::move(feature_names));
      },
      py::arg("rows"), py::arg("feature_names") = std::vector<std::string>{});
  m.def(
      "nb_score",
      [](const NbModel& model, const std::vector<double>& features) {
        return nb_score(model, features);
      },
      py::arg("model"), py::arg("features"));
  m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
  m.def("load_model", &load_model, py::arg("path"));

  py::class_<KpMinerParams>(m, "KpMinerParams")
      .def(py::init([](double alpha, double sigma) {
             return KpMinerParams{alpha, sigma};
           }),
           py::arg("alpha") = 2.3, py::arg("sigma") = 3.0)
      .def_readwrite("alpha", &KpMinerParams::alpha)
      .def_readwrite("sigma", &KpMinerParams::sigma);

  py::class_<Topic>(m, "Topic")
      .def_readonly("members", &Topic::members)
      .def_readonly("score", &Topic::score);

  m.def("rank_tfidf", &rank_tfidf, py::arg("candidates"), py::arg("df"));
  m.def("rank_kea", &rank_kea, py::arg("candidates"), py::arg("df"),
        py::arg("model"));
  m.def("rank_wingnus", &rank_wingnus, py::arg("candidates"), py::arg("df"),
        py::arg("model"));
  m.def("rank_kpminer", &rank_kpminer, py::arg("candidates"), py::arg("df"),
        py::arg("params") = KpMinerParams{});
  m.def("cluster_topics", &cluster_topics, py::arg("candidates"),
        py::arg("threshold") = 0.25);
  m.def("rank_topicrank", &rank_topicrank, py::arg("candidates"),
        py::arg("damping") = 0.85);
  m.def("redundancy_filter", &redundancy_filter, py::arg("ranked"));
  m.def(
      "build_training_rows",
      [](const std::vector<AnnotatedDocument>& docs, const ReferenceSet& refs,
         Model model, const DfTable& df, const Stopwords& stopwords,
         std::size_t lasf) {
        return build_training_rows(docs, refs, model, df, stopwords, lasf);
      },
      py::arg("docs"), py::arg("refs"), py::arg("model"), py::arg("df"),
      py::arg("stopwords"), py::arg("lasf") = 2);
  m.def(
      "run_model",
      [](const AnnotatedDocument& doc, Model model, const DfTable& df,
         const NbModel* nb, const Stopwords& stopwords, int top_n,
         std::size_t lasf, const KpMinerParams& kp, double damping) {
        return run_model(doc, model, df, nb, stopwords, top_n, lasf, kp,
                         damping);
      },
      py::arg("doc"), py::arg("model"), py::arg("df"),
      py::arg("nb") = nullptr, py::arg("stopwords") = Stopwords::english(),
      py::arg("top_n") = 10, py::arg("lasf") = 2,
      py::arg("kp") = KpMinerParams{}, py::arg("damping") = 0.85,
      "Full pipeline: select, rank, redundancy-filter, truncate");

  m.def("pagerank", &pagerank, py::arg("weights"), py::arg("damping") = 0.85,
        py::arg("tol") = 1e-6, py::arg("max_iter") = 100);

  py::class_<DocScore>(m, "DocScore")
      .def_readonly("precision", &DocScore::precision)
      .def_readonly("recall", &DocScore::recall)
      .def_readonly("f", &DocScore::f);

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("per_doc", &EvalReport::per_doc)
      .def_readonly("micro", &EvalReport::micro)
      .def_readonly("n", &EvalReport::n)
      .def_readonly("total_matches", &EvalReport::total_matches)
      .def_readonly("total_extracted", &EvalReport::total_extracted)
      .def_readonly("total_gold", &EvalReport::total_gold);

  m.def("f_at_n", &f_at_n, py::arg("ranked"), py::arg("refs"),
        py::arg("n") = 10);
  m.def(
      "sample_stddev",
      [](const std::vector<double>& values) { return sample_stddev(values); },
      py::arg("values"));
  m.def("paired_ttest", &paired_ttest, py::arg("a"), py::arg("b"));
  m.def("all_models_overlap", &all_models_overlap, py::arg("by_model"),
        py::arg("refs"), py::arg("n") = 10);

  py::class_<CorpusStats>(m, "CorpusStats")
      .def_readonly("avg_sentences", &CorpusStats::avg_sentences)
      .def_readonly("avg_words", &CorpusStats::avg_words)
      .def_readonly("max_recall", &CorpusStats::max_recall);
  m.def(
      "corpus_stats",
      [](const std::vector<AnnotatedDocument>& docs, const ReferenceSet& refs) {
        return corpus_stats(docs, refs);
      },
      py::arg("docs"), py::arg("refs"));
}
