// Copyright 2026-present the episent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "episent/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "episent/emolex.hpp"
#include "episent/errors.hpp"
#include "episent/eval.hpp"
#include "episent/features.hpp"
#include "episent/fixture.hpp"
#include "episent/linear_models.hpp"
#include "episent/preprocess.hpp"
#include "episent/sentilex.hpp"

namespace episent {

const char* to_string(Task t) { return t == Task::sentiment ? "sentiment" : "emotion"; }

const char* to_string(LanguageChoice l) {
    switch (l) {
        case LanguageChoice::english: return "english";
        case LanguageChoice::urdu: return "urdu";
        default: return "both";
    }
}

const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::mnb: return "mnb";
        case ModelKind::svm: return "svm";
        case ModelKind::cnn1d: return "cnn1d";
        case ModelKind::lstm: return "lstm";
        case ModelKind::bilstm: return "bilstm";
        default: return "bilstm_attention";
    }
}

const char* to_string(Strategy s) { return s == Strategy::multiclass ? "multiclass" : "ovr"; }

Task task_from_string(const std::string& s) {
    if (s == "sentiment") return Task::sentiment;
    if (s == "emotion") return Task::emotion;
    throw UsageError("unknown task: \"" + s + "\" (expected sentiment or emotion)");
}

LanguageChoice language_choice_from_string(const std::string& s) {
    if (s == "english") return LanguageChoice::english;
    if (s == "urdu") return LanguageChoice::urdu;
    if (s == "both") return LanguageChoice::both;
    throw UsageError("unknown language: \"" + s + "\" (expected english, urdu, or both)");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "mnb") return ModelKind::mnb;
    if (s == "svm") return ModelKind::svm;
    if (s == "cnn1d") return ModelKind::cnn1d;
    if (s == "lstm") return ModelKind::lstm;
    if (s == "bilstm") return ModelKind::bilstm;
    if (s == "bilstm_attention") return ModelKind::bilstm_attention;
    throw UsageError("unknown model: \"" + s +
                     "\" (expected mnb, svm, cnn1d, lstm, bilstm, or bilstm_attention)");
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "multiclass") return Strategy::multiclass;
    if (s == "ovr") return Strategy::ovr;
    throw UsageError("unknown strategy: \"" + s + "\" (expected multiclass or ovr)");
}

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

bool is_neural_model(ModelKind m) { return m != ModelKind::mnb && m != ModelKind::svm; }

Arch arch_of(ModelKind m) {
    switch (m) {
        case ModelKind::cnn1d: return Arch::cnn1d;
        case ModelKind::lstm: return Arch::lstm;
        case ModelKind::bilstm: return Arch::bilstm;
        case ModelKind::bilstm_attention: return Arch::bilstm_attention;
        default: throw InternalError("no neural architecture for model " + std::string(to_string(m)));
    }
}

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Shortest round-trip decimal form; used wherever serialized numbers must be
// byte-stable across runs.
std::string json_num(double v) { return ordered_json(v).dump(); }

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ResourceError("cannot open for writing: " + p.string());
    out << content;
    out.flush();
    if (!out) throw ResourceError("write failed: " + p.string());
}

nlohmann::json parse_json_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ResourceError("cannot open: " + p.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed JSON in " + p.string() + ": " + e.what());
    }
}

std::vector<std::string> canonical_classes(Task t) {
    if (t == Task::sentiment) return {"negative", "neutral", "positive"};
    return {"anger", "disgust", "fear", "happiness", "sadness", "surprise"};
}

std::string label_of(Task task, const LabeledSample& ls) {
    return task == Task::sentiment ? to_string(*ls.sentiment) : to_string(*ls.emotion);
}

struct TaskFilterStats {
    std::size_t excluded_neutral = 0;
    std::size_t excluded_unlabeled = 0;
};

// Drops samples a task cannot learn from: unlabeled ones always, and for the
// emotion task also neutral samples and polar samples whose annotation is
// still unresolved.
Dataset filter_for_task(const Dataset& ds, Task task, TaskFilterStats* stats) {
    Dataset out;
    out.provenance = ds.provenance;
    for (const auto& ls : ds.samples) {
        if (!ls.sentiment.has_value()) {
            ++stats->excluded_unlabeled;
            continue;
        }
        if (task == Task::emotion) {
            if (*ls.sentiment == Sentiment::neutral) {
                ++stats->excluded_neutral;
                continue;
            }
            if (!ls.emotion.has_value()) {
                ++stats->excluded_unlabeled;
                continue;
            }
        }
        out.samples.push_back(ls);
    }
    return out;
}

// Tokenization shared by training and evaluation: clean, strip punctuation,
// tokenize by language, drop stopwords.
struct TextPipeline {
    CleaningRules rules = CleaningRules::defaults();
    StopList stoplist;
    Lang lang = Lang::english;

    static TextPipeline load(const fs::path& resources, Lang lang) {
        TextPipeline p;
        p.lang = lang;
        const char* file = lang == Lang::english ? "stopwords_en.txt" : "stopwords_ur.txt";
        p.stoplist = StopList::load(resources / file, lang);
        return p;
    }

    std::vector<std::string> tokens(const std::string& text) const {
        const std::string cleaned = strip_punctuation(clean(text, rules), rules);
        return remove_stopwords(tokenize(cleaned, lang), lang, stoplist);
    }
};

FeatureVector counts_to_fv(const SparseCountVector& c) {
    FeatureVector f;
    f.dim = c.dim;
    f.pairs.reserve(c.pairs.size());
    for (const auto& [index, count] : c.pairs) {
        f.pairs.emplace_back(index, static_cast<double>(count));
    }
    return f;
}

std::string resolve_feature_mode(const RunConfig& rc) {
    if (is_neural_model(rc.model)) return "embedding";
    if (rc.feature_mode != "auto") return rc.feature_mode;
    return rc.model == ModelKind::mnb ? "bow" : "tfidf_l2";
}

std::string join_numbers(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += json_num(v[i]);
    }
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

ordered_json run_config_to_json(const RunConfig& rc) {
    ordered_json j;
    j["command"] = "train";
    j["task"] = to_string(rc.task);
    j["language"] = to_string(rc.language);
    j["model"] = to_string(rc.model);
    j["strategy"] = to_string(rc.strategy);
    j["corpus"] = rc.corpus;
    j["resources"] = rc.resources;
    j["vectors"] = rc.vectors.empty() ? "random" : rc.vectors;
    j["out"] = rc.out;
    j["train_fraction"] = rc.split.train_fraction;
    j["seeds"] = rc.split.seeds;
    j["stratify"] = rc.split.stratify;
    j["feature_mode"] = resolve_feature_mode(rc);
    if (!is_neural_model(rc.model)) j["min_df"] = rc.min_df;
    if (rc.model == ModelKind::mnb) j["alpha"] = rc.alpha;
    if (rc.model == ModelKind::svm) {
        if (rc.lambda > 0.0) {
            j["lambda"] = rc.lambda;
        } else {
            j["lambda"] = "grid";
            j["lambda_grid"] = rc.lambda_grid;
            j["cv_folds"] = rc.cv_folds;
            j["cv_metric"] = rc.cv_metric;
        }
        j["svm_epochs"] = rc.svm_epochs;
    }
    if (is_neural_model(rc.model)) {
        j["epochs"] = rc.neural.epochs;
        j["batch"] = rc.neural.batch;
        j["learning_rate"] = rc.neural.learning_rate;
        j["hidden"] = rc.neural.hidden;
        if (rc.model == ModelKind::cnn1d) {
            j["filters"] = rc.neural.filters;
            j["kernel_widths"] = rc.neural.kernel_widths;
        }
        j["max_len"] = rc.neural.max_len;
        j["embed_dim"] = rc.neural.embed_dim;
        j["precision"] = to_string(rc.neural.precision);
        j["trainable_embeddings"] = rc.neural.trainable_embeddings;
    }
    return j;
}

// One map per (config, language); must be identical across split seeds so
// the per-seed reports stay averageable.
std::map<std::string, std::string> hyperparameters_for(const RunConfig& rc,
                                                       const TaskFilterStats& stats,
                                                       std::size_t task_samples) {
    std::map<std::string, std::string> h;
    h["train_fraction"] = json_num(rc.split.train_fraction);
    h["stratify"] = rc.split.stratify ? "true" : "false";
    h["task_samples"] = std::to_string(task_samples);
    h["excluded_neutral"] = std::to_string(stats.excluded_neutral);
    h["excluded_unlabeled"] = std::to_string(stats.excluded_unlabeled);
    if (!is_neural_model(rc.model)) h["min_df"] = std::to_string(rc.min_df);
    if (rc.model == ModelKind::mnb) h["alpha"] = json_num(rc.alpha);
    if (rc.model == ModelKind::svm) {
        h["svm_epochs"] = std::to_string(rc.svm_epochs);
        if (rc.lambda > 0.0) {
            h["lambda"] = json_num(rc.lambda);
        } else {
            // Grid search may resolve a different lambda per split; the
            // per-seed choice lives in card.json, only the shared search
            // specification belongs here.
            h["lambda"] = "grid";
            h["lambda_grid"] = join_numbers(rc.lambda_grid);
            h["cv_folds"] = std::to_string(rc.cv_folds);
            h["cv_metric"] = rc.cv_metric;
        }
    }
    if (is_neural_model(rc.model)) {
        h["epochs"] = std::to_string(rc.neural.epochs);
        h["batch"] = std::to_string(rc.neural.batch);
        h["learning_rate"] = json_num(rc.neural.learning_rate);
        h["hidden"] = std::to_string(rc.neural.hidden);
        if (rc.model == ModelKind::cnn1d) {
            h["filters"] = std::to_string(rc.neural.filters);
            h["kernel_widths"] = join_sizes(rc.neural.kernel_widths);
        }
        h["max_len"] = std::to_string(rc.neural.max_len);
        h["embed_dim"] = std::to_string(rc.neural.embed_dim);
        h["precision"] = to_string(rc.neural.precision);
        h["trainable_embeddings"] = rc.neural.trainable_embeddings ? "true" : "false";
        h["vectors"] = rc.vectors.empty() ? "random" : rc.vectors;
    }
    return h;
}

ClassificationReport run_classical_seed(const RunConfig& rc,
                                        const std::vector<std::vector<std::string>>& train_docs,
                                        const std::vector<std::string>& y_train,
                                        const std::vector<std::vector<std::string>>& test_docs,
                                        const std::vector<std::string>& y_test,
                                        const std::vector<std::string>& classes,
                                        const ReportMeta& meta, std::uint64_t seed,
                                        const fs::path& seed_dir, ordered_json& card) {
    const std::string mode = resolve_feature_mode(rc);
    const bool use_idf = mode != "bow";
    const Vocabulary vocab = build_vocabulary(train_docs, rc.min_df);

    std::vector<SparseCountVector> counts_train, counts_test;
    counts_train.reserve(train_docs.size());
    counts_test.reserve(test_docs.size());
    for (const auto& d : train_docs) counts_train.push_back(bow_vectorize(d, vocab));
    for (const auto& d : test_docs) counts_test.push_back(bow_vectorize(d, vocab));

    IdfWeights idf;
    std::vector<FeatureVector> X_train, X_test;
    X_train.reserve(counts_train.size());
    X_test.reserve(counts_test.size());
    if (use_idf) {
        idf = tfidf_fit(counts_train);
        const bool l2 = mode == "tfidf_l2";
        for (const auto& c : counts_train) X_train.push_back(tfidf_transform(c, idf, l2));
        for (const auto& c : counts_test) X_test.push_back(tfidf_transform(c, idf, l2));
    } else {
        for (const auto& c : counts_train) X_train.push_back(counts_to_fv(c));
        for (const auto& c : counts_test) X_test.push_back(counts_to_fv(c));
    }

    const std::string kind =
        rc.model == ModelKind::mnb ? (rc.strategy == Strategy::ovr ? "ovr_mnb" : "mnb") : "svm";
    card["kind"] = kind;
    card["model_file"] = "model.json";
    card["vocab_file"] = "vocab.json";
    if (use_idf) card["idf_file"] = "idf.json";
    card["vocabulary_terms"] = vocab.size();

    std::vector<std::string> y_pred;
    y_pred.reserve(X_test.size());
    ordered_json model_json;
    if (rc.model == ModelKind::mnb) {
        if (rc.strategy == Strategy::ovr) {
            const OvrMnbModel m = ovr_mnb_train(X_train, y_train, rc.alpha);
            for (const auto& x : X_test) y_pred.push_back(ovr_mnb_predict(m, x).label);
            model_json = ovr_mnb_to_json(m, "vocab.json");
        } else {
            const MnbModel m = mnb_train(X_train, y_train, rc.alpha);
            for (const auto& x : X_test) y_pred.push_back(mnb_predict(m, x).label);
            model_json = mnb_to_json(m, "vocab.json");
        }
    } else {
        double lambda = rc.lambda;
        const SvmStrategy strat =
            rc.strategy == Strategy::ovr ? SvmStrategy::ovr : SvmStrategy::crammer_singer;
        if (lambda <= 0.0) {
            TrainConfig tc;
            tc.epochs = rc.svm_epochs;
            tc.seed = seed;
            tc.lambda_grid = rc.lambda_grid;
            tc.cv_folds = rc.cv_folds;
            tc.validate();
            const CvMetric metric =
                rc.cv_metric == "weighted_f1" ? CvMetric::weighted_f1 : CvMetric::accuracy;
            const GridSearchResult gs = grid_search(X_train, y_train, tc, strat, metric);
            lambda = gs.best_lambda;
            ordered_json grid = ordered_json::array();
            for (const auto& [lam, mean] : gs.mean_by_lambda) {
                grid.push_back({{"lambda", lam}, {"mean_metric", mean}});
            }
            card["grid"] = grid;
        }
        card["resolved_lambda"] = lambda;
        const SvmModel m = rc.strategy == Strategy::ovr
                               ? svm_train_ovr(X_train, y_train, lambda, rc.svm_epochs, seed)
                               : svm_train_multiclass(X_train, y_train, lambda, rc.svm_epochs, seed);
        if (m.objective_increased) {
            std::cout << "  warning: epoch objective rose during training (stochastic steps)\n";
        }
        for (const auto& x : X_test) y_pred.push_back(svm_predict(m, x).label);
        model_json = svm_to_json(m, "vocab.json");
    }

    write_file(seed_dir / "vocab.json", vocabulary_to_json(vocab).dump(2) + "\n");
    if (use_idf) write_file(seed_dir / "idf.json", idf_to_json(idf).dump(2) + "\n");
    write_file(seed_dir / "model.json", model_json.dump(2) + "\n");

    return build_report(confusion(y_test, y_pred, classes), meta);
}

template <typename T>
std::pair<std::vector<std::string>, double> neural_fit_predict(
    const NeuralConfig& ncfg, const WordIndex& index, const EmbeddingMatrix& emb,
    const std::vector<std::string>& classes, const std::vector<SequenceSample>& xs_train,
    const std::vector<std::string>& y_train, const std::vector<SequenceSample>& xs_test,
    const fs::path& model_path) {
    Net<T> net = neural_init<T>(ncfg, index, emb, classes);
    const std::vector<double> losses = neural_train(net, xs_train, y_train);
    std::vector<std::string> y_pred;
    y_pred.reserve(xs_test.size());
    for (const auto& x : xs_test) y_pred.push_back(neural_predict(net, x).label);
    save_neural(net, model_path.string());
    return {std::move(y_pred), losses.empty() ? 0.0 : losses.back()};
}

ClassificationReport run_neural_seed(const RunConfig& rc, const PretrainedVectors& vectors,
                                     const std::vector<std::vector<std::string>>& train_docs,
                                     const std::vector<std::string>& y_train,
                                     const std::vector<std::vector<std::string>>& test_docs,
                                     const std::vector<std::string>& y_test,
                                     const std::vector<std::string>& classes,
                                     const ReportMeta& meta, std::uint64_t seed,
                                     const fs::path& seed_dir, ordered_json& card) {
    NeuralConfig ncfg = rc.neural;
    ncfg.arch = arch_of(rc.model);
    ncfg.seed = seed;
    ncfg.validate();

    const WordIndex index = build_word_index(train_docs);
    const EmbeddingMatrix emb = build_embedding_matrix(index, vectors, ncfg.embed_dim, seed);

    std::vector<SequenceSample> xs_train, xs_test;
    xs_train.reserve(train_docs.size());
    xs_test.reserve(test_docs.size());
    for (const auto& d : train_docs) xs_train.push_back(to_sequence(d, index, ncfg.max_len));
    for (const auto& d : test_docs) xs_test.push_back(to_sequence(d, index, ncfg.max_len));

    const fs::path model_path = seed_dir / "model.bin";
    auto [y_pred, final_loss] =
        ncfg.precision == Precision::f64
            ? neural_fit_predict<double>(ncfg, index, emb, classes, xs_train, y_train, xs_test,
                                         model_path)
            : neural_fit_predict<float>(ncfg, index, emb, classes, xs_train, y_train, xs_test,
                                        model_path);

    card["kind"] = "neural";
    card["model_file"] = "model.bin";
    card["arch"] = to_string(ncfg.arch);
    card["vocabulary_words"] = index.size();
    card["embedding_oov_rows"] = emb.oov_count;
    card["final_epoch_loss"] = final_loss;

    return build_report(confusion(y_test, y_pred, classes), meta);
}

ClassificationReport train_language(const RunConfig& rc, const Dataset& lang_ds, Lang lang,
                                    const fs::path& lang_dir, const PretrainedVectors& vectors) {
    const std::string lang_name = to_string(lang);
    TaskFilterStats stats;
    const Dataset task_ds = filter_for_task(lang_ds, rc.task, &stats);
    std::cout << "[" << lang_name << "] task=" << to_string(rc.task)
              << " samples=" << task_ds.size() << " excluded_neutral=" << stats.excluded_neutral
              << " excluded_unlabeled=" << stats.excluded_unlabeled << "\n";
    if (task_ds.size() < 2) {
        throw DataError("not enough labeled " + lang_name + " samples for task " +
                        to_string(rc.task));
    }

    const TextPipeline pipe = TextPipeline::load(rc.resources, lang);
    const std::vector<std::string> classes = canonical_classes(rc.task);
    const auto hyper = hyperparameters_for(rc, stats, task_ds.size());

    std::vector<ClassificationReport> reports;
    reports.reserve(rc.split.seeds.size());
    for (const std::uint64_t seed : rc.split.seeds) {
        const auto [train_set, test_set] =
            split(task_ds, rc.split.train_fraction, seed, rc.split.stratify);

        std::vector<std::vector<std::string>> train_docs, test_docs;
        std::vector<std::string> y_train, y_test;
        train_docs.reserve(train_set.size());
        y_train.reserve(train_set.size());
        for (const auto& ls : train_set.samples) {
            train_docs.push_back(pipe.tokens(ls.sample.text));
            y_train.push_back(label_of(rc.task, ls));
        }
        test_docs.reserve(test_set.size());
        y_test.reserve(test_set.size());
        for (const auto& ls : test_set.samples) {
            test_docs.push_back(pipe.tokens(ls.sample.text));
            y_test.push_back(label_of(rc.task, ls));
        }

        ReportMeta meta;
        meta.model = to_string(rc.model);
        meta.task = to_string(rc.task);
        meta.language = lang_name;
        meta.strategy = to_string(rc.strategy);
        meta.feature_mode = resolve_feature_mode(rc);
        meta.split_seeds = {seed};
        meta.hyperparameters = hyper;

        const fs::path seed_dir = lang_dir / ("seed_" + std::to_string(seed));
        fs::create_directories(seed_dir);

        ordered_json card;
        card["schema_version"] = 1;
        card["model"] = to_string(rc.model);
        card["task"] = to_string(rc.task);
        card["language"] = lang_name;
        card["strategy"] = to_string(rc.strategy);
        card["feature_mode"] = resolve_feature_mode(rc);
        card["classes"] = classes;
        card["split_seed"] = seed;
        card["train_samples"] = train_set.size();
        card["test_samples"] = test_set.size();

        ClassificationReport report =
            is_neural_model(rc.model)
                ? run_neural_seed(rc, vectors, train_docs, y_train, test_docs, y_test, classes,
                                  meta, seed, seed_dir, card)
                : run_classical_seed(rc, train_docs, y_train, test_docs, y_test, classes, meta,
                                     seed, seed_dir, card);

        ordered_json hyper_json;
        for (const auto& [k, v] : hyper) hyper_json[k] = v;
        card["hyperparameters"] = hyper_json;
        card["config"] = run_config_to_json(rc);
        write_file(seed_dir / "card.json", card.dump(2) + "\n");
        write_file(seed_dir / "report.json", report_to_json(report).dump(2) + "\n");

        std::cout << "  seed " << seed << ": train=" << train_set.size()
                  << " test=" << test_set.size() << " accuracy=" << fmt4(report.accuracy) << "\n";
        reports.push_back(std::move(report));
    }

    ClassificationReport avg = average_reports(reports);
    write_file(lang_dir / "report_avg.json", report_to_json(avg).dump(2) + "\n");
    write_file(lang_dir / "report_avg.md", report_to_markdown(avg));
    std::cout << "[" << lang_name << "] averaged accuracy=" << fmt4(avg.accuracy) << " -> "
              << (lang_dir / "report_avg.json").string() << "\n";
    return avg;
}

int cmd_train(const RunConfig& rc) {
    rc.validate();
    const Dataset ds = load_corpus(rc.corpus, corpus_format_from_path(rc.corpus));
    const auto [en, ur] = partition_by_language(ds);

    const fs::path out(rc.out);
    fs::create_directories(out);
    write_file(out / "run_config.json", run_config_to_json(rc).dump(2) + "\n");

    PretrainedVectors vectors;
    if (!rc.vectors.empty() && is_neural_model(rc.model)) {
        vectors = load_pretrained_vectors(rc.vectors, rc.neural.embed_dim);
        std::cout << "loaded " << vectors.vectors.size() << " pretrained vectors ("
                  << vectors.skipped_lines << " lines skipped)\n";
    }

    if (rc.language == LanguageChoice::english || rc.language == LanguageChoice::both) {
        if (en.size() == 0) throw DataError("corpus holds no english samples");
        fs::create_directories(out / "english");
        train_language(rc, en, Lang::english, out / "english", vectors);
    }
    if (rc.language == LanguageChoice::urdu || rc.language == LanguageChoice::both) {
        if (ur.size() == 0) throw DataError("corpus holds no urdu samples");
        fs::create_directories(out / "urdu");
        train_language(rc, ur, Lang::urdu, out / "urdu", vectors);
    }
    return 0;
}

struct GenerateOpts {
    FixtureConfig fc;
    std::string format = "jsonl";
    std::string out;
};

int cmd_generate_fixture(const GenerateOpts& o) {
    const CorpusFormat fmt = corpus_format_from_string(o.format);
    const Dataset ds = generate_fixture(o.fc);
    const fs::path out(o.out);
    fs::create_directories(out);
    const fs::path path = out / (std::string("fixture.") + o.format);
    save_corpus(ds, path, fmt);

    ordered_json cfg;
    cfg["command"] = "generate-fixture";
    cfg["samples"] = o.fc.samples;
    cfg["seed"] = o.fc.seed;
    cfg["urdu_fraction"] = o.fc.urdu_fraction;
    cfg["distractor_rate"] = o.fc.distractor_rate;
    cfg["imbalanced"] = o.fc.imbalanced;
    cfg["format"] = o.format;
    cfg["out"] = o.out;
    write_file(out / "run_config.json", cfg.dump(2) + "\n");

    std::size_t urdu = 0;
    for (const auto& ls : ds.samples) urdu += ls.sample.lang == Lang::urdu ? 1 : 0;
    std::cout << "wrote " << ds.size() << " samples (" << ds.size() - urdu << " english, " << urdu
              << " urdu) -> " << path.string() << "\n";
    return 0;
}

struct LabelOpts {
    std::string corpus;
    std::string resources = "resources";
    std::string overrides;
    std::string out;
    double pos_threshold = 0.3;
    double neg_threshold = -0.3;
    double norm_alpha = 15.0;
};

int cmd_label(const LabelOpts& o) {
    if (!fs::exists(o.corpus)) throw ResourceError("corpus not found: " + o.corpus);
    const fs::path res(o.resources);
    if (!fs::exists(res)) throw ResourceError("resources directory not found: " + o.resources);

    SentimentConfig scfg;
    scfg.pos_threshold = o.pos_threshold;
    scfg.neg_threshold = o.neg_threshold;
    scfg.norm_alpha = o.norm_alpha;
    scfg.validate();

    const Dataset ds = load_corpus(o.corpus, corpus_format_from_path(o.corpus));

    const SentimentLexicon lex_en = load_lexicon(res / "sentiment_en.tsv");
    std::optional<SentimentLexicon> lex_ur;
    if (fs::exists(res / "sentiment_ur.tsv")) lex_ur = load_lexicon(res / "sentiment_ur.tsv");

    EmotionResources res_en;
    res_en.tags = TagLexicon::load(res / "postags_en.tsv", res / "suffix_rules_en.tsv");
    res_en.synonyms = SynonymTable::load_dir(res / "synonyms_en");
    res_en.lemmatizer = Lemmatizer::load(res / "lemma_exceptions_en.tsv");

    std::optional<EmotionResources> res_ur;
    if (fs::exists(res / "postags_ur.tsv") && fs::exists(res / "suffix_rules_ur.tsv") &&
        fs::exists(res / "synonyms_ur") && fs::exists(res / "lemma_exceptions_ur.tsv")) {
        res_ur.emplace();
        res_ur->tags = TagLexicon::load(res / "postags_ur.tsv", res / "suffix_rules_ur.tsv");
        res_ur->synonyms = SynonymTable::load_dir(res / "synonyms_ur");
        res_ur->lemmatizer = Lemmatizer::load(res / "lemma_exceptions_ur.tsv");
    }

    std::map<std::string, Emotion> overrides;
    if (!o.overrides.empty()) overrides = load_emotion_overrides(o.overrides);

    const SentimentLabelResult sres =
        label_dataset_sentiment(ds, &lex_en, lex_ur ? &*lex_ur : nullptr, scfg);
    const EmotionLabelResult eres =
        label_dataset_emotion(sres.dataset, &res_en, res_ur ? &*res_ur : nullptr, overrides);

    const fs::path out(o.out);
    fs::create_directories(out);
    save_corpus(eres.dataset, out / "labeled.jsonl", CorpusFormat::jsonl);
    sres.histogram.write_csv(out / "histogram.csv");

    // The input path is deliberately excluded from this parameter comment so
    // relabeling a labeled corpus reproduces every artifact byte for byte.
    std::ostringstream params;
    params << "# pos_threshold=" << json_num(scfg.pos_threshold)
           << " neg_threshold=" << json_num(scfg.neg_threshold)
           << " norm_alpha=" << json_num(scfg.norm_alpha) << " resources=" << o.resources
           << " overrides=" << (o.overrides.empty() ? "-" : o.overrides) << "\n";

    std::ostringstream sc;
    sc << params.str() << "label,count\n";
    for (const auto& name : canonical_classes(Task::sentiment)) {
        const Sentiment s = sentiment_from_string(name);
        sc << name << "," << (sres.counts.count(s) ? sres.counts.at(s) : 0) << "\n";
    }
    write_file(out / "sentiment_counts.csv", sc.str());

    std::ostringstream ec;
    ec << params.str() << "label,count\n";
    for (const auto& name : canonical_classes(Task::emotion)) {
        const Emotion e = emotion_from_string(name);
        ec << name << "," << (eres.counts.count(e) ? eres.counts.at(e) : 0) << "\n";
    }
    ec << "unresolved," << eres.unresolved << "\n";
    write_file(out / "emotion_counts.csv", ec.str());

    std::ostringstream wl;
    for (const auto& ls : eres.dataset.samples) {
        if (ls.emotion_status && *ls.emotion_status == EmotionStatus::unresolved) {
            ordered_json rec;
            rec["id"] = ls.sample.id;
            rec["lang"] = to_string(ls.sample.lang);
            rec["text"] = ls.sample.text;
            if (ls.sample.translation) rec["translation"] = *ls.sample.translation;
            wl << rec.dump() << "\n";
        }
    }
    write_file(out / "unresolved.jsonl", wl.str());

    ordered_json cfg;
    cfg["command"] = "label";
    cfg["corpus"] = o.corpus;
    cfg["resources"] = o.resources;
    cfg["overrides"] = o.overrides.empty() ? "-" : o.overrides;
    cfg["pos_threshold"] = scfg.pos_threshold;
    cfg["neg_threshold"] = scfg.neg_threshold;
    cfg["norm_alpha"] = scfg.norm_alpha;
    cfg["urdu_sentiment_lexicon"] = lex_ur.has_value();
    cfg["urdu_emotion_resources"] = res_ur.has_value();
    cfg["out"] = o.out;
    write_file(out / "run_config.json", cfg.dump(2) + "\n");

    std::cout << "labeled " << eres.dataset.size() << " samples -> "
              << (out / "labeled.jsonl").string() << "\n";
    std::cout << "sentiment:";
    for (const auto& name : canonical_classes(Task::sentiment)) {
        const Sentiment s = sentiment_from_string(name);
        std::cout << " " << name << "=" << (sres.counts.count(s) ? sres.counts.at(s) : 0);
    }
    std::cout << "\nemotion:";
    for (const auto& name : canonical_classes(Task::emotion)) {
        const Emotion e = emotion_from_string(name);
        std::cout << " " << name << "=" << (eres.counts.count(e) ? eres.counts.at(e) : 0);
    }
    std::cout << " unresolved=" << eres.unresolved << "\n";
    return 0;
}

struct EvaluateOpts {
    std::string model_dir;
    std::string corpus;
    std::string resources = "resources";
    std::string out;
};

int cmd_evaluate(const EvaluateOpts& o) {
    const fs::path mdir(o.model_dir);
    if (!fs::exists(mdir / "card.json")) {
        throw ResourceError("model card not found: " + (mdir / "card.json").string());
    }
    if (!fs::exists(o.corpus)) throw ResourceError("corpus not found: " + o.corpus);
    if (!fs::exists(o.resources)) throw ResourceError("resources directory not found: " + o.resources);

    const nlohmann::json card = parse_json_file(mdir / "card.json");
    std::string kind, lang_name, model_file;
    Task task = Task::sentiment;
    ReportMeta meta;
    std::vector<std::string> classes;
    try {
        kind = card.at("kind").get<std::string>();
        task = task_from_string(card.at("task").get<std::string>());
        lang_name = card.at("language").get<std::string>();
        model_file = card.at("model_file").get<std::string>();
        classes = card.at("classes").get<std::vector<std::string>>();
        meta.model = card.at("model").get<std::string>();
        meta.task = card.at("task").get<std::string>();
        meta.language = lang_name;
        meta.strategy = card.at("strategy").get<std::string>();
        meta.feature_mode = card.at("feature_mode").get<std::string>();
        meta.hyperparameters =
            card.at("hyperparameters").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed model card " + (mdir / "card.json").string() + ": " + e.what());
    }
    const Lang lang = lang_from_string(lang_name);

    const Dataset ds = load_corpus(o.corpus, corpus_format_from_path(o.corpus));
    const auto [en, ur] = partition_by_language(ds);
    const Dataset& side = lang == Lang::english ? en : ur;
    TaskFilterStats stats;
    const Dataset eval_ds = filter_for_task(side, task, &stats);
    if (eval_ds.size() == 0) {
        throw DataError("no evaluable " + lang_name + " samples for task " +
                        std::string(to_string(task)));
    }

    const TextPipeline pipe = TextPipeline::load(o.resources, lang);
    std::vector<std::vector<std::string>> docs;
    std::vector<std::string> y_true;
    docs.reserve(eval_ds.size());
    y_true.reserve(eval_ds.size());
    for (const auto& ls : eval_ds.samples) {
        docs.push_back(pipe.tokens(ls.sample.text));
        y_true.push_back(label_of(task, ls));
    }

    std::vector<std::string> y_pred;
    y_pred.reserve(docs.size());
    if (kind == "neural") {
        const AnyNet any = load_neural((mdir / model_file).string());
        std::visit(
            [&](const auto& net) {
                for (const auto& d : docs) {
                    y_pred.push_back(
                        neural_predict(net, to_sequence(d, net.word_index, net.cfg.max_len)).label);
                }
            },
            any);
    } else if (kind == "mnb" || kind == "ovr_mnb" || kind == "svm") {
        std::string vocab_file;
        try {
            vocab_file = card.at("vocab_file").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError("malformed model card: " + std::string(e.what()));
        }
        const Vocabulary vocab = vocabulary_from_json(parse_json_file(mdir / vocab_file));
        std::vector<SparseCountVector> counts;
        counts.reserve(docs.size());
        for (const auto& d : docs) counts.push_back(bow_vectorize(d, vocab));

        std::vector<FeatureVector> X;
        X.reserve(counts.size());
        if (meta.feature_mode == "bow") {
            for (const auto& c : counts) X.push_back(counts_to_fv(c));
        } else {
            std::string idf_file;
            try {
                idf_file = card.at("idf_file").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw DataError("malformed model card: " + std::string(e.what()));
            }
            const IdfWeights idf = idf_from_json(parse_json_file(mdir / idf_file));
            const bool l2 = meta.feature_mode == "tfidf_l2";
            for (const auto& c : counts) X.push_back(tfidf_transform(c, idf, l2));
        }

        const nlohmann::json model_json = parse_json_file(mdir / model_file);
        if (kind == "mnb") {
            const MnbModel m = mnb_from_json(model_json);
            for (const auto& x : X) y_pred.push_back(mnb_predict(m, x).label);
        } else if (kind == "ovr_mnb") {
            const OvrMnbModel m = ovr_mnb_from_json(model_json);
            for (const auto& x : X) y_pred.push_back(ovr_mnb_predict(m, x).label);
        } else {
            const SvmModel m = svm_from_json(model_json);
            for (const auto& x : X) y_pred.push_back(svm_predict(m, x).label);
        }
    } else {
        throw DataError("unknown model kind in card: \"" + kind + "\"");
    }

    const ClassificationReport report = build_report(confusion(y_true, y_pred, classes), meta);
    const fs::path out(o.out);
    fs::create_directories(out);
    write_file(out / "report.json", report_to_json(report).dump(2) + "\n");
    write_file(out / "report.md", report_to_markdown(report));

    ordered_json cfg;
    cfg["command"] = "evaluate";
    cfg["model_dir"] = o.model_dir;
    cfg["corpus"] = o.corpus;
    cfg["resources"] = o.resources;
    cfg["out"] = o.out;
    write_file(out / "run_config.json", cfg.dump(2) + "\n");

    std::cout << "evaluated " << eval_ds.size() << " samples: accuracy=" << fmt4(report.accuracy)
              << " -> " << (out / "report.json").string() << "\n";
    return 0;
}

struct CompareOpts {
    std::vector<std::string> ovr;
    std::vector<std::string> multi;
    std::string out;
};

int cmd_compare(const CompareOpts& o) {
    if (o.ovr.empty() || o.ovr.size() != o.multi.size()) {
        throw UsageError("--ovr and --multiclass must name the same number of report files");
    }
    for (const auto& p : o.ovr) {
        if (!fs::exists(p)) throw ResourceError("missing one-vs-rest report: " + p);
    }
    for (const auto& p : o.multi) {
        if (!fs::exists(p)) throw ResourceError("missing multiclass report: " + p);
    }

    std::map<std::string, std::vector<ComparisonRow>> rows_by_lang;
    std::map<std::string, std::vector<std::string>> notes_by_lang;
    for (std::size_t i = 0; i < o.ovr.size(); ++i) {
        const ClassificationReport ro = report_from_json(parse_json_file(o.ovr[i]));
        const ClassificationReport rm = report_from_json(parse_json_file(o.multi[i]));
        const ComparisonTable t = compare_strategies(ro, rm);
        auto& rows = rows_by_lang[ro.meta.language];
        rows.insert(rows.end(), t.rows.begin(), t.rows.end());

        // Reported observation, never an assertion: the imbalanced synthetic
        // corpus tends to favor multiclass weighted recall.
        std::ostringstream note;
        note << "task " << ro.meta.task << ": multiclass weighted recall "
             << (rm.weighted.recall >= ro.weighted.recall ? ">=" : "<") << " one-vs-rest ("
             << json_num(rm.weighted.recall) << " vs " << json_num(ro.weighted.recall) << ")";
        notes_by_lang[ro.meta.language].push_back(note.str());
        std::cout << "[" << ro.meta.language << "] " << note.str() << "\n";
    }

    const fs::path out(o.out);
    fs::create_directories(out);
    for (const auto& [lang, rows] : rows_by_lang) {
        ComparisonTable t;
        t.rows = rows;
        write_file(out / ("comparison_" + lang + ".csv"), t.to_csv());
        std::ostringstream md;
        md << t.to_markdown() << "\n";
        for (const auto& note : notes_by_lang[lang]) md << "- " << note << "\n";
        write_file(out / ("comparison_" + lang + ".md"), md.str());
    }

    ordered_json cfg;
    cfg["command"] = "compare";
    cfg["ovr"] = o.ovr;
    cfg["multiclass"] = o.multi;
    cfg["out"] = o.out;
    write_file(out / "run_config.json", cfg.dump(2) + "\n");
    return 0;
}

struct ReportOpts {
    std::vector<std::string> reports;
    std::string out;
};

int cmd_report(const ReportOpts& o) {
    struct Row {
        std::string task, language, model, strategy;
        double accuracy, wp, wr, wf1;
    };
    std::vector<Row> rows;
    rows.reserve(o.reports.size());
    for (const auto& p : o.reports) {
        if (!fs::exists(p)) throw ResourceError("missing report: " + p);
        const ClassificationReport r = report_from_json(parse_json_file(p));
        rows.push_back({r.meta.task, r.meta.language, r.meta.model, r.meta.strategy, r.accuracy,
                        r.weighted.precision, r.weighted.recall, r.weighted.f1});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.task, a.language, a.model, a.strategy) <
               std::tie(b.task, b.language, b.model, b.strategy);
    });

    std::ostringstream csv;
    csv << "task,language,model,strategy,accuracy,weighted_precision,weighted_recall,"
           "weighted_f1\n";
    for (const auto& r : rows) {
        csv << r.task << "," << r.language << "," << r.model << "," << r.strategy << ","
            << json_num(r.accuracy) << "," << json_num(r.wp) << "," << json_num(r.wr) << ","
            << json_num(r.wf1) << "\n";
    }

    std::ostringstream md;
    md << "# Task-wise model performance\n\n";
    md << "| Task | Language | Model | Strategy | Accuracy | W-Precision | W-Recall | W-F1 |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        md << "| " << r.task << " | " << r.language << " | " << r.model << " | " << r.strategy
           << " | " << fmt4(r.accuracy) << " | " << fmt4(r.wp) << " | " << fmt4(r.wr) << " | "
           << fmt4(r.wf1) << " |\n";
    }

    const fs::path out(o.out);
    fs::create_directories(out);
    write_file(out / "summary.csv", csv.str());
    write_file(out / "summary.md", md.str());

    ordered_json cfg;
    cfg["command"] = "report";
    cfg["reports"] = o.reports;
    cfg["out"] = o.out;
    write_file(out / "run_config.json", cfg.dump(2) + "\n");

    std::cout << "summarized " << rows.size() << " reports -> " << (out / "summary.md").string()
              << "\n";
    return 0;
}

}  // namespace

void RunConfig::validate() const {
    if (corpus.empty()) throw UsageError("--corpus is required");
    if (!fs::exists(corpus)) throw ResourceError("corpus not found: " + corpus);
    if (resources.empty()) throw UsageError("--resources must not be empty");
    if (!fs::exists(resources)) throw ResourceError("resources directory not found: " + resources);
    if (!vectors.empty() && !fs::exists(vectors)) {
        throw ResourceError("vectors file not found: " + vectors);
    }
    if (out.empty()) throw UsageError("--out is required");
    if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
        throw UsageError("train fraction must lie strictly between 0 and 1");
    }
    if (split.seeds.empty()) throw UsageError("at least one split seed is required");
    if (feature_mode != "auto" && feature_mode != "bow" && feature_mode != "tfidf" &&
        feature_mode != "tfidf_l2") {
        throw UsageError("unknown feature mode: \"" + feature_mode +
                         "\" (expected auto, bow, tfidf, or tfidf_l2)");
    }
    if (min_df == 0) throw UsageError("min-df must be at least 1");
    if (alpha <= 0.0) throw UsageError("alpha must be positive");
    if (lambda < 0.0) throw UsageError("lambda must be non-negative");
    if (cv_metric != "accuracy" && cv_metric != "weighted_f1") {
        throw UsageError("unknown cv metric: \"" + cv_metric +
                         "\" (expected accuracy or weighted_f1)");
    }
    if (model == ModelKind::svm && svm_epochs == 0) {
        throw UsageError("svm-epochs must be at least 1");
    }
    if (is_neural_model(model)) {
        if (strategy == Strategy::ovr) {
            throw UsageError("one-vs-rest strategy is only available for mnb and svm");
        }
        NeuralConfig probe = neural;
        probe.arch = arch_of(model);
        probe.validate();
    }
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"bilingual epidemic-surveillance text classification toolkit", "episent"};
    app.require_subcommand(1);
    app.allow_config_extras(false);
    app.set_config("--config", "",
                   "key=value configuration file with [subcommand] sections; "
                   "command-line flags take precedence");

    GenerateOpts gen;
    auto* g = app.add_subcommand("generate-fixture",
                                 "write a seeded synthetic bilingual corpus");
    g->add_option("--samples", gen.fc.samples, "number of samples")->capture_default_str();
    g->add_option("--seed", gen.fc.seed, "generator seed")->capture_default_str();
    g->add_option("--urdu-fraction", gen.fc.urdu_fraction, "fraction of urdu samples")
        ->capture_default_str();
    g->add_option("--distractor-rate", gen.fc.distractor_rate,
                  "probability of an extra same-polarity cross-category keyword")
        ->capture_default_str();
    g->add_flag("--imbalanced", gen.fc.imbalanced,
                "skew sentiment to 60% neutral / 25% negative / 15% positive");
    g->add_option("--format", gen.format, "corpus format: jsonl or csv")->capture_default_str();
    g->add_option("--out", gen.out, "output directory")->required();

    LabelOpts lab;
    auto* l = app.add_subcommand(
        "label", "assign sentiment and emotion labels and write distribution artifacts");
    l->add_option("--corpus", lab.corpus, "corpus file (jsonl or csv)")->required();
    l->add_option("--resources", lab.resources, "resource directory")->capture_default_str();
    l->add_option("--overrides", lab.overrides, "manual emotion overrides (jsonl)");
    l->add_option("--pos-threshold", lab.pos_threshold, "positive compound threshold")
        ->capture_default_str();
    l->add_option("--neg-threshold", lab.neg_threshold, "negative compound threshold")
        ->capture_default_str();
    l->add_option("--norm-alpha", lab.norm_alpha, "compound normalization constant")
        ->capture_default_str();
    l->add_option("--out", lab.out, "output directory")->required();

    RunConfig rc;
    std::string task_s = "sentiment";
    std::string language_s = "both";
    std::string model_s = "mnb";
    std::string strategy_s = "multiclass";
    std::string precision_s = "f32";
    auto* t = app.add_subcommand(
        "train", "run the seeded multi-split train/evaluate protocol and average the reports");
    t->add_option("--task", task_s, "sentiment or emotion")->capture_default_str();
    t->add_option("--language", language_s, "english, urdu, or both")->capture_default_str();
    t->add_option("--model", model_s, "mnb, svm, cnn1d, lstm, bilstm, or bilstm_attention")
        ->capture_default_str();
    t->add_option("--strategy", strategy_s, "multiclass or ovr")->capture_default_str();
    t->add_option("--corpus", rc.corpus, "labeled corpus file")->required();
    t->add_option("--resources", rc.resources, "resource directory")->capture_default_str();
    t->add_option("--vectors", rc.vectors, "pretrained embedding text file");
    t->add_option("--out", rc.out, "output directory")->required();
    t->add_option("--train-fraction", rc.split.train_fraction, "train split fraction")
        ->capture_default_str();
    t->add_option("--seeds", rc.split.seeds, "split seeds (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    t->add_flag("--stratify", rc.split.stratify, "stratify splits by sentiment label");
    t->add_option("--feature-mode", rc.feature_mode, "auto, bow, tfidf, or tfidf_l2")
        ->capture_default_str();
    t->add_option("--min-df", rc.min_df, "minimum document frequency")->capture_default_str();
    t->add_option("--alpha", rc.alpha, "mnb smoothing")->capture_default_str();
    t->add_option("--lambda", rc.lambda, "svm regularization (0 = grid search)")
        ->capture_default_str();
    t->add_option("--lambda-grid", rc.lambda_grid, "grid-search lambdas (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    t->add_option("--svm-epochs", rc.svm_epochs, "svm training epochs")->capture_default_str();
    t->add_option("--cv-folds", rc.cv_folds, "grid-search folds")->capture_default_str();
    t->add_option("--cv-metric", rc.cv_metric, "accuracy or weighted_f1")->capture_default_str();
    t->add_option("--epochs", rc.neural.epochs, "neural training epochs")->capture_default_str();
    t->add_option("--batch", rc.neural.batch, "neural batch size")->capture_default_str();
    t->add_option("--learning-rate", rc.neural.learning_rate, "adam learning rate")
        ->capture_default_str();
    t->add_option("--hidden", rc.neural.hidden, "recurrent hidden units")->capture_default_str();
    t->add_option("--filters", rc.neural.filters, "convolution filters per width")
        ->capture_default_str();
    t->add_option("--widths", rc.neural.kernel_widths, "convolution widths (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    t->add_option("--max-len", rc.neural.max_len, "sequence length")->capture_default_str();
    t->add_option("--embed-dim", rc.neural.embed_dim, "embedding dimension")
        ->capture_default_str();
    t->add_option("--precision", precision_s, "f32 or f64")->capture_default_str();
    t->add_flag("--trainable-embeddings", rc.neural.trainable_embeddings,
                "update embedding rows during training");

    EvaluateOpts ev;
    auto* e = app.add_subcommand("evaluate", "evaluate a persisted model on a labeled corpus");
    e->add_option("--model-dir", ev.model_dir, "seed directory written by train")->required();
    e->add_option("--corpus", ev.corpus, "labeled corpus file")->required();
    e->add_option("--resources", ev.resources, "resource directory")->capture_default_str();
    e->add_option("--out", ev.out, "output directory")->required();

    CompareOpts cmp;
    auto* c = app.add_subcommand("compare",
                                 "project one-vs-rest and multiclass reports onto strategy rows");
    c->add_option("--ovr", cmp.ovr, "one-vs-rest averaged report JSON (repeatable)")->required();
    c->add_option("--multiclass", cmp.multi, "multiclass averaged report JSON (repeatable)")
        ->required();
    c->add_option("--out", cmp.out, "output directory")->required();

    ReportOpts rep;
    auto* r = app.add_subcommand("report", "summarize averaged reports across models");
    r->add_option("reports", rep.reports, "averaged report JSON files")->required();
    r->add_option("--out", rep.out, "output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::usage);
    }

    try {
        if (app.got_subcommand(g)) return cmd_generate_fixture(gen);
        if (app.got_subcommand(l)) return cmd_label(lab);
        if (app.got_subcommand(t)) {
            rc.task = task_from_string(task_s);
            rc.language = language_choice_from_string(language_s);
            rc.model = model_kind_from_string(model_s);
            rc.strategy = strategy_from_string(strategy_s);
            rc.neural.precision = precision_from_string(precision_s);
            return cmd_train(rc);
        }
        if (app.got_subcommand(e)) return cmd_evaluate(ev);
        if (app.got_subcommand(c)) return cmd_compare(cmp);
        if (app.got_subcommand(r)) return cmd_report(rep);
        throw InternalError("no subcommand dispatched");
    } catch (const Error& err) {
        std::cerr << "episent: " << err.what() << "\n";
        return err.exit_code();
    } catch (const std::exception& err) {
        std::cerr << "episent: internal error: " << err.what() << "\n";
        return static_cast<int>(ErrorKind::internal);
    }
}

}  // namespace episent
