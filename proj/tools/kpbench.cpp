// kpbench: batch front end for the keyphrase extraction benchmark.
//
// Subcommands mirror the experiment stages: preprocess, df, train, extract,
// eval, stats. Every command is deterministic; identical inputs and flags
// produce byte-identical outputs.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kpbench/candidates.hpp"
#include "kpbench/corpus.hpp"
#include "kpbench/evaluate.hpp"
#include "kpbench/preprocess.hpp"
#include "kpbench/rankers.hpp"
#include "kpbench/textcore.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string corpus_dir;
  std::string refs_path;
  std::string split_path;
  std::string df_path;
  std::string model_file;
  std::string out_path;
  std::string stopwords_path;
  std::string model_name = "tfidf";
  std::string subset = "all";  // stats: train | test | all
  int level = 1;
  int top_n = 10;
  int max_n = 3;
  std::size_t lasf = 2;
  double alpha = 2.3;
  double sigma = 3.0;
  double damping = 0.85;
  double reduction_ratio = 0.865;
  unsigned seed = 0;  // reserved; all algorithms are deterministic
};

kpbench::Stopwords load_stopwords(const RunConfig& cfg) {
  if (!cfg.stopwords_path.empty())
    return kpbench::Stopwords::load(cfg.stopwords_path);
  return kpbench::Stopwords::english();
}

kpbench::LevelConfig level_config(const RunConfig& cfg) {
  kpbench::LevelConfig lc;
  lc.level = cfg.level;
  lc.reduction_ratio = cfg.reduction_ratio;
  lc.damping = cfg.damping;
  lc.validate();
  return lc;
}

std::vector<kpbench::AnnotatedDocument> load_and_level(const RunConfig& cfg) {
  auto lc = level_config(cfg);
  auto docs = kpbench::load_corpus_dir(cfg.corpus_dir);
  if (docs.empty())
    throw std::runtime_error("no documents in " + cfg.corpus_dir);
  if (cfg.level > 1)
    for (auto& doc : docs) doc = kpbench::apply_level(doc, lc);
  return docs;
}

std::vector<kpbench::AnnotatedDocument> filter_ids(
    std::vector<kpbench::AnnotatedDocument> docs,
    const std::set<std::string>& ids, const std::string& what) {
  std::set<std::string> present;
  for (const auto& doc : docs) present.insert(doc.id);
  for (const auto& id : ids)
    if (!present.count(id))
      throw std::runtime_error(what + " document missing from corpus: " + id);
  std::erase_if(docs, [&](const auto& doc) { return !ids.count(doc.id); });
  return docs;
}

void write_text_atomically(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------- preprocess

int cmd_preprocess(const RunConfig& cfg) {
  auto docs = load_and_level(cfg);
  fs::create_directories(cfg.out_path);
  for (const auto& doc : docs) {
    std::string name = doc.id + ".l" + std::to_string(cfg.level) + ".json";
    kpbench::save_document(doc, (fs::path(cfg.out_path) / name).string());
  }
  std::cerr << "wrote " << docs.size() << " documents to " << cfg.out_path
            << "\n";
  return 0;
}

// ------------------------------------------------------------------------ df

int cmd_df(const RunConfig& cfg) {
  auto split = kpbench::load_split(cfg.split_path);
  if (split.train.empty())
    throw std::runtime_error("empty train split: " + cfg.split_path);
  auto docs = filter_ids(load_and_level(cfg), split.train, "train");
  auto table = kpbench::compute_df(docs, cfg.max_n);
  kpbench::save_df(table, cfg.out_path);
  std::cerr << "df table over " << table.n_docs << " documents, "
            << table.df.size() << " entries\n";
  return 0;
}

// --------------------------------------------------------------------- train

int cmd_train(const RunConfig& cfg) {
  auto model = kpbench::model_from_string(cfg.model_name);
  if (!kpbench::is_supervised(model))
    throw std::runtime_error("model requires no training: " + cfg.model_name);
  auto split = kpbench::load_split(cfg.split_path);
  if (split.train.empty())
    throw std::runtime_error("empty train split: " + cfg.split_path);
  auto refs = kpbench::load_references(cfg.refs_path);
  auto df = kpbench::load_df(cfg.df_path);
  auto stopwords = load_stopwords(cfg);
  auto docs = filter_ids(load_and_level(cfg), split.train, "train");
  auto rows = kpbench::build_training_rows(docs, refs, model, df, stopwords,
                                           cfg.lasf);
  auto nb = kpbench::nb_train(rows, kpbench::model_feature_names(model));
  kpbench::save_model(nb, cfg.out_path);
  std::cerr << "trained " << cfg.model_name << " on " << rows.size()
            << " rows\n";
  return 0;
}

// ------------------------------------------------------------------- extract

int cmd_extract(const RunConfig& cfg) {
  auto model = kpbench::model_from_string(cfg.model_name);
  if (cfg.df_path.empty())
    throw std::runtime_error("extract needs a df table (--df)");
  auto df = kpbench::load_df(cfg.df_path);
  kpbench::NbModel nb;
  if (kpbench::is_supervised(model)) {
    if (cfg.model_file.empty())
      throw std::runtime_error("supervised model needs --model-file");
    nb = kpbench::load_model(cfg.model_file);
  }
  auto stopwords = load_stopwords(cfg);
  auto docs = load_and_level(cfg);
  if (!cfg.split_path.empty()) {
    auto split = kpbench::load_split(cfg.split_path);
    docs = filter_ids(std::move(docs), split.test, "test");
  }
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  kpbench::KpMinerParams kp{cfg.alpha, cfg.sigma};
  std::string out;
  for (const auto& doc : docs) {
    auto list = kpbench::run_model(
        doc, model, df, kpbench::is_supervised(model) ? &nb : nullptr,
        stopwords, cfg.top_n, cfg.lasf, kp, cfg.damping);
    json jdoc;
    jdoc["id"] = list.doc_id;
    jdoc["keyphrases"] = json::array();
    for (const auto& item : list.items)
      jdoc["keyphrases"].push_back({{"stem", item.stem},
                                    {"surface", item.surface},
                                    {"score", item.score}});
    out += jdoc.dump();
    out += '\n';
  }
  write_text_atomically(cfg.out_path, out);
  std::cerr << "extracted keyphrases for " << docs.size() << " documents\n";
  return 0;
}

// ---------------------------------------------------------------------- eval

std::map<std::string, kpbench::RankedList> load_ranked_jsonl(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ranked file: " + path);
  std::map<std::string, kpbench::RankedList> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
    kpbench::RankedList list;
    list.doc_id = j.at("id").get<std::string>();
    for (const auto& jkp : j.at("keyphrases"))
      list.items.push_back({jkp.at("stem").get<std::string>(),
                            jkp.at("surface").get<std::string>(),
                            jkp.at("score").get<double>()});
    if (!out.emplace(list.doc_id, std::move(list)).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate doc id");
  }
  return out;
}

int cmd_eval(const RunConfig& cfg, const std::vector<std::string>& ranked_paths) {
  auto refs = kpbench::load_references(cfg.refs_path);

  std::vector<std::string> labels;
  std::vector<kpbench::EvalReport> reports;
  std::map<std::string, std::map<std::string, kpbench::RankedList>> by_label;
  for (const auto& path : ranked_paths) {
    auto ranked = load_ranked_jsonl(path);
    for (const auto& [doc_id, list] : ranked)
      if (!refs.has(doc_id))
        throw std::runtime_error(path + ": document missing from references: " +
                                 doc_id);
    std::string label = fs::path(path).filename().string();
    if (by_label.count(label)) label = path;  // disambiguate same basenames
    labels.push_back(label);
    reports.push_back(kpbench::f_at_n(ranked, refs, cfg.top_n));
    by_label[label] = std::move(ranked);
  }

  std::printf("%-28s %8s %8s %8s\n", "input", "P", "R", "F");
  for (std::size_t i = 0; i < labels.size(); ++i)
    std::printf("%-28s %8.2f %8.2f %8.2f\n", labels[i].c_str(),
                100.0 * reports[i].micro.precision,
                100.0 * reports[i].micro.recall, 100.0 * reports[i].micro.f);

  json jreport;
  jreport["n"] = cfg.top_n;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    json jin;
    jin["path"] = ranked_paths[i];
    jin["micro"] = {{"precision", reports[i].micro.precision},
                    {"recall", reports[i].micro.recall},
                    {"f", reports[i].micro.f}};
    for (const auto& [doc_id, s] : reports[i].per_doc)
      jin["per_doc"][doc_id] = {
          {"precision", s.precision}, {"recall", s.recall}, {"f", s.f}};
    jreport["inputs"][labels[i]] = std::move(jin);
  }

  if (labels.size() >= 2) {
    std::vector<double> fscores;
    for (const auto& r : reports) fscores.push_back(100.0 * r.micro.f);
    double sigma = kpbench::sample_stddev(fscores);
    std::printf("sigma (F@%d stddev across %zu inputs): %.2f\n", cfg.top_n,
                labels.size(), sigma);
    jreport["stddev_f"] = sigma;

    double overlap = kpbench::all_models_overlap(by_label, refs, cfg.top_n);
    std::printf("gold keyphrases found by all inputs: %.1f%%\n",
                100.0 * overlap);
    jreport["overlap_all"] = overlap;

    std::printf("pairwise paired t-test p-values (* = p < 0.05):\n");
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        std::map<std::string, double> fa, fb;
        for (const auto& [doc_id, s] : reports[i].per_doc) fa[doc_id] = s.f;
        for (const auto& [doc_id, s] : reports[j].per_doc) fb[doc_id] = s.f;
        std::string pair = labels[i] + " vs " + labels[j];
        try {
          double p = kpbench::paired_ttest(fa, fb);
          std::printf("  %-48s %.4f%s\n", pair.c_str(), p,
                      p < 0.05 ? " *" : "");
          jreport["pairwise_p"][pair] = p;
        } catch (const std::exception& e) {
          std::printf("  %-48s n/a (%s)\n", pair.c_str(), e.what());
          jreport["pairwise_p"][pair] = nullptr;
        }
      }
  }

  if (!cfg.out_path.empty())
    write_text_atomically(cfg.out_path, jreport.dump(2) + "\n");
  return 0;
}

// --------------------------------------------------------------------- stats

int cmd_stats(const RunConfig& cfg, const std::vector<std::string>& models) {
  auto refs = kpbench::load_references(cfg.refs_path);
  auto docs = load_and_level(cfg);
  if (!cfg.split_path.empty() && cfg.subset != "all") {
    auto split = kpbench::load_split(cfg.split_path);
    const auto& ids = cfg.subset == "train" ? split.train : split.test;
    docs = filter_ids(std::move(docs), ids, cfg.subset);
  }
  auto stats = kpbench::corpus_stats(docs, refs);
  std::printf("%-16s %10s\n", "", ("Lvl " + std::to_string(cfg.level)).c_str());
  std::printf("%-16s %10.0f\n", "Avg. sentences", stats.avg_sentences);
  std::printf("%-16s %10.0f\n", "Avg. words", stats.avg_words);
  std::printf("%-16s %9.1f%%\n", "Max. recall", 100.0 * stats.max_recall);

  json j = {{"level", cfg.level},
            {"avg_sentences", stats.avg_sentences},
            {"avg_words", stats.avg_words},
            {"max_recall", stats.max_recall},
            {"documents", docs.size()}};

  // per-model candidate statistics: max recall and average candidate count
  if (!models.empty()) {
    auto stopwords = load_stopwords(cfg);
    std::printf("%-12s %12s %12s\n", "model", "max recall", "candidates");
    for (const auto& name : models) {
      auto model = kpbench::model_from_string(name);
      std::size_t total_cands = 0, matched = 0, gold_total = 0;
      for (const auto& doc : docs) {
        auto set =
            kpbench::select_for_model(doc, model, stopwords, cfg.lasf);
        total_cands += set.by_stem.size();
        const auto& gold = refs.gold(doc.id);
        gold_total += gold.size();
        for (const auto& kp : gold)
          for (const auto& alt : kp.alternatives)
            if (set.by_stem.count(alt)) {
              ++matched;
              break;
            }
      }
      double recall = gold_total > 0
                          ? static_cast<double>(matched) / gold_total
                          : 0.0;
      double avg_cands =
          static_cast<double>(total_cands) / static_cast<double>(docs.size());
      std::printf("%-12s %11.1f%% %12.0f\n", name.c_str(), 100.0 * recall,
                  avg_cands);
      j["models"][name] = {{"max_recall", recall},
                           {"avg_candidates", avg_cands}};
    }
  }
  if (!cfg.out_path.empty())
    write_text_atomically(cfg.out_path, j.dump(2) + "\n");
  return 0;
}

void add_level_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--level", cfg.level, "Preprocessing level (1-4)")
      ->check(CLI::Range(1, 4));
  cmd->add_option("--reduction-ratio", cfg.reduction_ratio,
                  "Level 4: fraction of non-title/abstract sentences kept")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--damping", cfg.damping, "PageRank damping factor")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--model", cfg.model_name,
                  "Model: tfidf|kea|topicrank|kpminer|wingnus")
      ->required();
  cmd->add_option("--lasf", cfg.lasf,
                  "KP-Miner least allowable seen frequency");
  cmd->add_option("--alpha", cfg.alpha, "KP-Miner boost alpha")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sigma", cfg.sigma, "KP-Miner boost ceiling")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--stopwords", cfg.stopwords_path,
                  "Stopword list file (default: built-in English list)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyphrase extraction benchmark toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a config file");

  RunConfig cfg;
  std::vector<std::string> ranked_paths;

  auto* preprocess = app.add_subcommand(
      "preprocess", "Apply a preprocessing level to a corpus");
  preprocess->add_option("--corpus", cfg.corpus_dir, "Document directory")
      ->required();
  preprocess->add_option("--out", cfg.out_path, "Output directory")
      ->required();
  add_level_flags(preprocess, cfg);

  auto* df = app.add_subcommand("df", "Compute the document frequency table");
  df->add_option("--corpus", cfg.corpus_dir, "Document directory")->required();
  df->add_option("--split", cfg.split_path, "Split file")->required();
  df->add_option("--out", cfg.out_path, "Output TSV path")->required();
  df->add_option("--max-n", cfg.max_n, "Maximum n-gram order")
      ->check(CLI::Range(1, 8));
  add_level_flags(df, cfg);

  auto* train = app.add_subcommand("train", "Train a supervised model");
  train->add_option("--corpus", cfg.corpus_dir, "Document directory")
      ->required();
  train->add_option("--refs", cfg.refs_path, "Reference file")->required();
  train->add_option("--split", cfg.split_path, "Split file")->required();
  train->add_option("--df", cfg.df_path, "DF table path")->required();
  train->add_option("--out", cfg.out_path, "Output model path")->required();
  add_model_flags(train, cfg);
  add_level_flags(train, cfg);

  auto* extract =
      app.add_subcommand("extract", "Extract ranked keyphrases to JSONL");
  extract->add_option("--corpus", cfg.corpus_dir, "Document directory")
      ->required();
  extract->add_option("--df", cfg.df_path, "DF table path")->required();
  extract->add_option("--split", cfg.split_path,
                      "Split file (restricts to its test ids)");
  extract->add_option("--model-file", cfg.model_file,
                      "Trained model (supervised models)");
  extract->add_option("--out", cfg.out_path, "Output JSONL path")->required();
  extract->add_option("--top", cfg.top_n, "Keyphrases per document")
      ->check(CLI::PositiveNumber);
  add_model_flags(extract, cfg);
  add_level_flags(extract, cfg);

  auto* eval = app.add_subcommand("eval", "Score ranked JSONL files");
  eval->add_option("ranked", ranked_paths, "Ranked JSONL file(s)")
      ->required()
      ->expected(-1);
  eval->add_option("--refs", cfg.refs_path, "Reference file")->required();
  eval->add_option("--top", cfg.top_n, "Evaluation cutoff N")
      ->check(CLI::PositiveNumber);
  eval->add_option("--out", cfg.out_path, "Machine-readable JSON report path");

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  std::vector<std::string> stats_models;
  stats->add_option("--corpus", cfg.corpus_dir, "Document directory")
      ->required();
  stats->add_option("--refs", cfg.refs_path, "Reference file")->required();
  stats->add_option("--split", cfg.split_path, "Split file");
  stats->add_option("--subset", cfg.subset, "Subset: train|test|all")
      ->check(CLI::IsMember({"train", "test", "all"}));
  stats->add_option("--model", stats_models,
                    "Also report per-model candidate statistics (repeatable)")
      ->check(CLI::IsMember({"tfidf", "kea", "topicrank", "kpminer",
                             "wingnus"}));
  stats->add_option("--lasf", cfg.lasf,
                    "KP-Miner least allowable seen frequency");
  stats->add_option("--stopwords", cfg.stopwords_path,
                    "Stopword list file (default: built-in English list)");
  stats->add_option("--out", cfg.out_path, "JSON output path");
  add_level_flags(stats, cfg);

  app.add_option("--seed", cfg.seed,
                 "Random seed (reserved; all algorithms are deterministic)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preprocess->parsed()) return cmd_preprocess(cfg);
    if (df->parsed()) return cmd_df(cfg);
    if (train->parsed()) return cmd_train(cfg);
    if (extract->parsed()) return cmd_extract(cfg);
    if (eval->parsed()) return cmd_eval(cfg, ranked_paths);
    if (stats->parsed()) return cmd_stats(cfg, stats_models);
  } catch (const std::exception& e) {
    std::cerr << "kpbench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
