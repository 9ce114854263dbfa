// Acceptance suite: one line per criterion, nonzero exit if any gating
// criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kpbench/candidates.hpp"
#include "kpbench/corpus.hpp"
#include "kpbench/evaluate.hpp"
#include "kpbench/preprocess.hpp"
#include "kpbench/rankers.hpp"
#include "oracle.hpp"
#include "properties.hpp"

namespace fs = std::filesystem;
using namespace kpbench;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

void report_skip(int criterion, const std::string& name,
                 const std::string& why) {
  std::printf("SKIP criterion %d: %s -- %s\n", criterion, name.c_str(),
              why.c_str());
}

std::string fixture(const std::string& rel) {
  return std::string(KPBENCH_FIXTURE_DIR) + "/" + rel;
}

// ------------------------------------------------------------- criterion 1

void criterion_statistics() {
  std::vector<double> sigma2_in = {12.2, 12.5, 14.5};
  double sigma2 = sample_stddev(sigma2_in);
  bool ok2 = std::fabs(sigma2 - 1.25) <= 0.005;

  std::vector<double> sigma1_in = {12.2, 16.0, 20.2, 19.2, 20.5};
  double sigma1 = sample_stddev(sigma1_in);
  bool ok1 = std::fabs(sigma1 - 3.51) <= 0.005;

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "sigma2 = %.5f (want +- 0.005 of 1.25: %s); sigma1 = %.5f "
                "(want +- 0.005 of 3.51: %s; recomputing from the table's "
                "rounded F-scores yields 3.51596, which rounds to 3.52 -- "
                "the published 3.51 uses unrounded scores)",
                sigma2, ok2 ? "ok" : "off", sigma1, ok1 ? "ok" : "off");
  report(1, "statistics fidelity (sigma2 / sigma1 from printed F-scores)",
         ok2 && ok1, detail);
}

// ------------------------------------------------------------- criterion 2

struct PipelineSetup {
  std::vector<AnnotatedDocument> all_docs;
  std::vector<AnnotatedDocument> train_docs;
  ReferenceSet refs;
  DfTable df;
  std::map<std::string, std::size_t> oracle_df;
};

PipelineSetup load_fixture_pipeline() {
  PipelineSetup s;
  s.all_docs = load_corpus_dir(fixture("corpus"));
  s.refs = load_references(fixture("refs.txt"));
  auto split = load_split(fixture("split.txt"));
  for (const auto& doc : s.all_docs)
    if (split.train.count(doc.id)) s.train_docs.push_back(doc);
  s.df = compute_df(s.train_docs, 3);
  s.oracle_df = oracle::df_counts(s.train_docs, 3);
  return s;
}

void criterion_oracle_equivalence() {
  PipelineSetup s;
  try {
    s = load_fixture_pipeline();
  } catch (const std::exception& e) {
    report(2, "oracle equivalence", false, e.what());
    return;
  }
  std::string detail;
  bool ok = s.df.df == s.oracle_df && s.df.n_docs == s.train_docs.size();
  if (!ok) detail = "df tables differ";

  const auto& sw = Stopwords::english();
  const Model models[] = {Model::TfIdf, Model::Kea, Model::TopicRank,
                          Model::KpMiner, Model::Wingnus};
  std::map<Model, NbModel> nb_lib;
  std::map<Model, oracle::Nb> nb_oracle;
  for (Model m : {Model::Kea, Model::Wingnus}) {
    auto rows = build_training_rows(s.train_docs, s.refs, m, s.df, sw, 2);
    nb_lib[m] = nb_train(rows, model_feature_names(m));
    nb_oracle[m] = oracle::train(s.train_docs, s.refs, m, s.oracle_df,
                                 s.train_docs.size(), sw, 2);
  }

  std::size_t compared = 0;
  for (const auto& doc : s.all_docs) {
    for (Model m : models) {
      const bool supervised = is_supervised(m);
      auto lib = run_model(doc, m, s.df, supervised ? &nb_lib[m] : nullptr,
                           sw, 10, 2, {2.3, 3.0}, 0.85);
      auto ora = oracle::run(doc, m, s.oracle_df, s.train_docs.size(),
                             supervised ? &nb_oracle[m] : nullptr, sw, 10, 2,
                             2.3, 3.0, 0.85);
      const double tol = m == Model::TopicRank ? 1e-6 : 1e-9;
      if (lib.items.size() != ora.size()) {
        ok = false;
        detail = std::string(to_string(m)) + "/" + doc.id + ": " +
                 std::to_string(lib.items.size()) + " vs " +
                 std::to_string(ora.size()) + " items";
        continue;
      }
      for (std::size_t i = 0; i < ora.size(); ++i) {
        ++compared;
        if (lib.items[i].stem != ora[i].stem ||
            lib.items[i].surface != ora[i].surface ||
            std::fabs(lib.items[i].score - ora[i].score) > tol) {
          ok = false;
          if (detail.empty())
            detail = std::string(to_string(m)) + "/" + doc.id + " rank " +
                     std::to_string(i + 1) + ": got '" + lib.items[i].stem +
                     "' (" + std::to_string(lib.items[i].score) +
                     "), oracle '" + ora[i].stem + "' (" +
                     std::to_string(ora[i].score) + ")";
        }
      }
    }
  }
  if (ok)
    detail = std::to_string(compared) +
             " ranked lines match across 5 models x 5 documents";
  report(2, "oracle equivalence on the fixture corpus", ok, detail);
}

// ------------------------------------------------------------- criterion 3

void criterion_porter_fixture() {
  std::ifstream in(fixture("porter_reference.tsv"));
  if (!in) {
    report(3, "porter fixture", false, "fixture missing");
    return;
  }
  std::string line;
  std::size_t total = 0, bad = 0;
  std::string first_bad;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    ++total;
    std::string word = line.substr(0, tab), want = line.substr(tab + 1);
    if (stem_word(word) != want) {
      ++bad;
      if (first_bad.empty()) first_bad = word;
    }
  }
  report(3, "porter stemmer matches the reference fixture", bad == 0,
         std::to_string(total - bad) + "/" + std::to_string(total) +
             " entries" + (bad ? ", first mismatch: " + first_bad : ""));
}

// ------------------------------------------------------------- criterion 4

void criterion_properties() {
  auto suites = properties::run_all();
  bool ok = true;
  std::string detail;
  int total_cases = 0;
  for (const auto& suite : suites) {
    total_cases += suite.cases;
    bool suite_ok = suite.failures == 0 && suite.cases >= 100;
    if (!suite_ok) {
      ok = false;
      if (detail.empty())
        detail = suite.name + ": " + std::to_string(suite.failures) +
                 " failures in " + std::to_string(suite.cases) + " cases" +
                 (suite.first_failure.empty() ? ""
                                              : " (" + suite.first_failure +
                                                    ")");
    }
  }
  if (ok)
    detail = std::to_string(suites.size()) + " suites, " +
             std::to_string(total_cases) + " randomized cases";
  report(4, "property suites", ok, detail);
}

// ------------------------------------------------------------- criterion 5

int run_cli(const std::string& args) {
  std::string cmd = std::string(KPBENCH_CLI_PATH) + " " + args;
  return std::system(cmd.c_str());
}

std::map<std::string, std::string> snapshot_dir(const fs::path& dir) {
  std::map<std::string, std::string> bytes;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    bytes[fs::relative(entry.path(), dir).string()] = buf.str();
  }
  return bytes;
}

void criterion_determinism() {
  fs::path work = fs::temp_directory_path() / "kpbench_determinism";
  std::error_code ec;
  fs::remove_all(work, ec);
  fs::create_directories(work);
  const std::string fx_corpus = fixture("corpus");
  const std::string fx_refs = fixture("refs.txt");
  const std::string fx_split = fixture("split.txt");
  const std::string w = work.string();

  auto run_pipeline = [&]() -> bool {
    std::vector<std::string> cmds = {
        "preprocess --corpus " + fx_corpus + " --out " + w + "/l3 --level 3",
        "preprocess --corpus " + fx_corpus + " --out " + w + "/l4 --level 4",
        "df --corpus " + w + "/l3 --split " + fx_split + " --out " + w +
            "/df.tsv",
        "train --corpus " + w + "/l3 --refs " + fx_refs + " --split " +
            fx_split + " --model kea --df " + w + "/df.tsv --out " + w +
            "/kea.json",
        "extract --corpus " + w + "/l3 --split " + fx_split +
            " --model kea --df " + w + "/df.tsv --model-file " + w +
            "/kea.json --top 10 --out " + w + "/kea.jsonl",
        "extract --corpus " + w + "/l3 --split " + fx_split +
            " --model kpminer --df " + w + "/df.tsv --top 10 --out " + w +
            "/kpminer.jsonl",
        "eval " + w + "/kea.jsonl " + w + "/kpminer.jsonl --refs " + fx_refs +
            " --top 10 --out " + w + "/report.json > " + w +
            "/eval_stdout.txt",
    };
    for (const auto& cmd : cmds)
      if (run_cli(cmd + " 2> /dev/null") != 0) return false;
    return true;
  };

  if (!run_pipeline()) {
    report(5, "end-to-end determinism", false, "first pipeline run failed");
    return;
  }
  auto first = snapshot_dir(work);
  if (!run_pipeline()) {
    report(5, "end-to-end determinism", false, "second pipeline run failed");
    return;
  }
  auto second = snapshot_dir(work);

  bool ok = first.size() == second.size();
  std::string detail;
  for (const auto& [rel, bytes] : first) {
    auto it = second.find(rel);
    if (it == second.end() || it->second != bytes) {
      ok = false;
      detail = "artifact differs between runs: " + rel;
      break;
    }
  }
  if (ok)
    detail = std::to_string(first.size()) +
             " artifacts byte-identical across repeated runs";
  report(5, "end-to-end determinism (preprocess/df/train/extract/eval)", ok,
         detail);
  fs::remove_all(work, ec);
}

// ------------------------------------------------------------- criterion 6

// Published F@10 per model and level (Table 3) and training-set statistics
// (Table 1) used when the real corpus is supplied.
struct PublishedRow {
  Model model;
  double f[3];
};
constexpr double kPublishedWords[3] = {9772, 7874, 1922};
constexpr double kPublishedRecall[3] = {0.839, 0.818, 0.709};

void criterion_dataset() {
  const char* root = std::getenv("KPBENCH_SEMEVAL_DIR");
  if (root == nullptr || std::string(root).empty()) {
    report_skip(6, "SemEval reproduction",
                "dataset not supplied (set KPBENCH_SEMEVAL_DIR to a directory "
                "with corpus/, references.txt, split.txt); reported only, "
                "does not gate");
    return;
  }
  const std::vector<PublishedRow> published = {
      {Model::TopicRank, {12.2, 12.5, 14.5}},
      {Model::TfIdf, {16.0, 16.4, 19.3}},
      {Model::KpMiner, {20.2, 19.8, 22.5}},
      {Model::Kea, {19.2, 19.3, 21.2}},
      {Model::Wingnus, {20.5, 20.3, 21.8}},
  };
  try {
    std::string dir(root);
    auto docs = load_corpus_dir(dir + "/corpus");
    auto refs = load_references(dir + "/references.txt");
    auto split = load_split(dir + "/split.txt");
    const auto& sw = Stopwords::english();

    bool ok = true;
    std::string detail;
    for (int level = 1; level <= 3; ++level) {
      LevelConfig cfg;
      cfg.level = level;
      std::vector<AnnotatedDocument> train, test;
      for (const auto& doc : docs) {
        if (!split.train.count(doc.id) && !split.test.count(doc.id)) continue;
        auto leveled = apply_level(doc, cfg);
        (split.train.count(doc.id) ? train : test).push_back(leveled);
      }
      // df: level-2 counts back level-3 runs
      std::vector<AnnotatedDocument> df_docs;
      if (level == 3) {
        LevelConfig l2;
        l2.level = 2;
        for (const auto& doc : docs)
          if (split.train.count(doc.id))
            df_docs.push_back(apply_level(doc, l2));
      } else {
        df_docs = train;
      }
      auto df = compute_df(df_docs, 3);

      auto stats = corpus_stats(train, refs);
      double dw = std::fabs(stats.avg_words - kPublishedWords[level - 1]) /
                  kPublishedWords[level - 1];
      double dr = std::fabs(stats.max_recall - kPublishedRecall[level - 1]) /
                  kPublishedRecall[level - 1];
      if (dw > 0.02 || dr > 0.02) {
        ok = false;
        if (detail.empty())
          detail = "level " + std::to_string(level) + " corpus stats off: " +
                   std::to_string(stats.avg_words) + " words, " +
                   std::to_string(100 * stats.max_recall) + "% recall";
      }

      for (const auto& row : published) {
        NbModel nb;
        if (is_supervised(row.model)) {
          auto rows = build_training_rows(train, refs, row.model, df, sw, 2);
          nb = nb_train(rows, model_feature_names(row.model));
        }
        std::map<std::string, RankedList> ranked;
        for (const auto& doc : test)
          ranked[doc.id] = run_model(
              doc, row.model, df,
              is_supervised(row.model) ? &nb : nullptr, sw, 10, 2,
              {2.3, 3.0}, 0.85);
        double f = 100.0 * f_at_n(ranked, refs, 10).micro.f;
        double delta = f - row.f[level - 1];
        std::printf("  [dataset] %-9s level %d: F@10 = %5.1f (published "
                    "%4.1f, delta %+.1f)\n",
                    std::string(to_string(row.model)).c_str(), level, f,
                    row.f[level - 1], delta);
        if (std::fabs(delta) > 1.5) {
          ok = false;
          if (detail.empty())
            detail = std::string(to_string(row.model)) + " level " +
                     std::to_string(level) + " off by " +
                     std::to_string(delta);
        }
      }
    }
    report(6, "SemEval reproduction (F@10 within +-1.5; stats within 2%)", ok,
           detail);
  } catch (const std::exception& e) {
    report(6, "SemEval reproduction", false, e.what());
  }
}

}  // namespace

int main() {
  criterion_statistics();
  criterion_oracle_equivalence();
  criterion_porter_fixture();
  criterion_properties();
  criterion_determinism();
  criterion_dataset();
  if (g_failures > 0) {
    std::printf("%d criterion check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all gating criteria passed\n");
  return 0;
}
