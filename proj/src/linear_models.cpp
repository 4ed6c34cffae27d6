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

#include "episent/linear_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "episent/errors.hpp"
#include "episent/eval.hpp"
#include "episent/rng.hpp"

namespace episent {

namespace {

constexpr double kObjectiveSlack = 1e-3;

double dot_sparse(const std::vector<double>& w, const FeatureVector& x) {
    double acc = 0.0;
    for (const auto& [index, value] : x.pairs) acc += w[index] * value;
    return acc;
}

void axpy_sparse(double coef, const FeatureVector& x, std::vector<double>& w) {
    for (const auto& [index, value] : x.pairs) w[index] += coef * value;
}

double logsumexp(const std::vector<double>& v) {
    double hi = *std::max_element(v.begin(), v.end());
    double acc = 0.0;
    for (double s : v) acc += std::exp(s - hi);
    return hi + std::log(acc);
}

std::size_t check_dims(const std::vector<FeatureVector>& X) {
    std::size_t dim = X[0].dim;
    for (const FeatureVector& x : X) {
        if (x.dim != dim) throw DataError("training vectors have inconsistent dimensions");
    }
    return dim;
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& y) {
    std::set<std::string> s(y.begin(), y.end());
    return {s.begin(), s.end()};
}

std::size_t argmax_strict(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    return best;
}

void mark_objective_increases(SvmModel& model) {
    for (std::size_t e = 1; e < model.epoch_objective.size(); ++e) {
        if (model.epoch_objective[e] > model.epoch_objective[e - 1] + kObjectiveSlack) {
            model.objective_increased = true;
            return;
        }
    }
}

double frobenius2(const std::vector<std::vector<double>>& rows) {
    double acc = 0.0;
    for (const auto& row : rows) {
        for (double w : row) acc += w * w;
    }
    return acc;
}

void check_model_header(const nlohmann::json& j, const char* model_type) {
    int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
        throw DataError("unsupported model schema_version " + std::to_string(version) +
                        " (expected " + std::to_string(kModelSchemaVersion) + ")");
    }
    std::string type = j.at("model_type").get<std::string>();
    if (type != model_type) {
        throw DataError("model_type mismatch: file holds " + type + ", expected " + model_type);
    }
}

}  // namespace

std::string to_string(SvmStrategy strategy) {
    switch (strategy) {
        case SvmStrategy::binary: return "binary";
        case SvmStrategy::ovr: return "ovr";
        case SvmStrategy::crammer_singer: return "crammer_singer";
    }
    throw InternalError("unhandled SvmStrategy");
}

SvmStrategy svm_strategy_from_string(const std::string& s) {
    if (s == "binary") return SvmStrategy::binary;
    if (s == "ovr") return SvmStrategy::ovr;
    if (s == "crammer_singer") return SvmStrategy::crammer_singer;
    throw DataError("unknown svm strategy: " + s);
}

void TrainConfig::validate() const {
    if (epochs < 1) throw UsageError("epochs must be at least 1");
    if (lambda_grid.empty()) throw UsageError("lambda grid is empty");
    if (cv_folds < 2) throw UsageError("cv_folds must be at least 2");
    for (double lambda : lambda_grid) {
        if (!(lambda > 0.0)) throw UsageError("lambda values must be positive");
    }
}

MnbModel mnb_train(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                   double alpha) {
    if (X.size() != y.size()) throw UsageError("mnb_train: |X| != |y|");
    if (X.empty()) throw DataError("mnb_train: empty training set");
    if (!(alpha > 0.0)) throw UsageError("mnb_train: alpha must be positive");
    std::size_t dim = check_dims(X);

    MnbModel model;
    model.alpha = alpha;
    model.classes = sorted_classes(y);
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < model.classes.size(); ++k) index[model.classes[k]] = k;

    std::size_t k_classes = model.classes.size();
    std::vector<std::vector<double>> counts(k_classes, std::vector<double>(dim, 0.0));
    std::vector<double> totals(k_classes, 0.0);
    std::vector<std::size_t> docs(k_classes, 0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        std::size_t c = index.at(y[i]);
        ++docs[c];
        for (const auto& [t, v] : X[i].pairs) {
            if (v < 0.0) throw DataError("mnb_train: negative feature value");
            counts[c][t] += v;
            totals[c] += v;
        }
    }

    model.class_log_prior.resize(k_classes);
    model.feature_log_prob.assign(k_classes, std::vector<double>(dim, 0.0));
    double n = static_cast<double>(X.size());
    double v_count = static_cast<double>(dim);
    for (std::size_t c = 0; c < k_classes; ++c) {
        model.class_log_prior[c] = std::log(static_cast<double>(docs[c]) / n);
        double denom = totals[c] + alpha * v_count;
        for (std::size_t t = 0; t < dim; ++t) {
            model.feature_log_prob[c][t] = std::log((counts[c][t] + alpha) / denom);
        }
    }
    return model;
}

Prediction mnb_predict(const MnbModel& model, const FeatureVector& x) {
    if (x.dim != model.vocab_size()) {
        throw DataError("mnb_predict: vector dim " + std::to_string(x.dim) +
                        " != vocab size " + std::to_string(model.vocab_size()));
    }
    std::vector<double> joint(model.classes.size());
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        joint[c] = model.class_log_prior[c] + dot_sparse(model.feature_log_prob[c], x);
    }
    double lse = logsumexp(joint);
    Prediction p;
    p.classes = model.classes;
    p.scores.resize(joint.size());
    for (std::size_t c = 0; c < joint.size(); ++c) p.scores[c] = joint[c] - lse;
    p.label = model.classes[argmax_strict(p.scores)];
    return p;
}

namespace {

// Shared Pegasos state: the dense matrix carries a lazy global scale so each
// step's (1 - eta*lambda) decay costs O(1) and updates stay sparse.
struct ScaledRows {
    std::vector<std::vector<double>> rows;
    double scale = 1.0;

    void decay(double factor) {
        if (factor <= 0.0) {
            for (auto& row : rows) std::fill(row.begin(), row.end(), 0.0);
            scale = 1.0;
            return;
        }
        scale *= factor;
        if (scale < 1e-150) {
            for (auto& row : rows) {
                for (double& w : row) w *= scale;
            }
            scale = 1.0;
        }
    }

    double score(std::size_t r, const FeatureVector& x) const {
        return scale * dot_sparse(rows[r], x);
    }

    void add(std::size_t r, double coef, const FeatureVector& x) {
        axpy_sparse(coef / scale, x, rows[r]);
    }

    std::vector<std::vector<double>> materialize() const {
        std::vector<std::vector<double>> out = rows;
        for (auto& row : out) {
            for (double& w : row) w *= scale;
        }
        return out;
    }
};

}  // namespace

SvmModel svm_train_binary(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                          double lambda, std::size_t epochs, std::uint64_t seed) {
    if (X.size() != y.size()) throw UsageError("svm_train_binary: |X| != |y|");
    if (X.empty()) throw DataError("svm_train_binary: empty training set");
    if (!(lambda > 0.0)) throw UsageError("svm_train_binary: lambda must be positive");
    if (epochs < 1) throw UsageError("svm_train_binary: epochs must be at least 1");
    bool pos = false, neg = false;
    for (int label : y) {
        if (label == 1) {
            pos = true;
        } else if (label == -1) {
            neg = true;
        } else {
            throw UsageError("svm_train_binary: labels must be +1 or -1");
        }
    }
    if (!pos || !neg) throw DataError("svm_train_binary: both classes must be present");
    std::size_t dim = check_dims(X);

    ScaledRows w;
    w.rows.assign(1, std::vector<double>(dim, 0.0));
    double bias = 0.0;

    SvmModel model;
    model.strategy = SvmStrategy::binary;
    model.classes = {"+1", "-1"};
    model.lambda = lambda;

    Rng rng(seed);
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t t = 1;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            double eta = 1.0 / (lambda * static_cast<double>(t));
            double margin = y[i] * (w.score(0, X[i]) + bias);
            w.decay(1.0 - eta * lambda);
            if (margin < 1.0) {
                w.add(0, eta * y[i], X[i]);
                bias += eta * y[i];
            }
            ++t;
        }
        double hinge = 0.0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            hinge += std::max(0.0, 1.0 - y[i] * (w.score(0, X[i]) + bias));
        }
        double reg = 0.5 * lambda * w.scale * w.scale * frobenius2(w.rows);
        model.epoch_objective.push_back(reg + hinge / static_cast<double>(X.size()));
    }

    model.weights = w.materialize();
    model.bias = {bias};
    mark_objective_increases(model);
    return model;
}

double svm_margin(const SvmModel& model, const FeatureVector& x) {
    if (model.strategy != SvmStrategy::binary) {
        throw UsageError("svm_margin applies to binary models only");
    }
    if (x.dim != model.vocab_size()) {
        throw DataError("svm_margin: vector dim " + std::to_string(x.dim) + " != vocab size " +
                        std::to_string(model.vocab_size()));
    }
    return dot_sparse(model.weights[0], x) + model.bias[0];
}

Prediction svm_predict(const SvmModel& model, const FeatureVector& x) {
    Prediction p;
    p.classes = model.classes;
    if (model.strategy == SvmStrategy::binary) {
        double m = svm_margin(model, x);
        p.scores = {m, -m};
    } else {
        if (x.dim != model.vocab_size()) {
            throw DataError("svm_predict: vector dim " + std::to_string(x.dim) +
                            " != vocab size " + std::to_string(model.vocab_size()));
        }
        p.scores.resize(model.classes.size());
        for (std::size_t c = 0; c < model.classes.size(); ++c) {
            p.scores[c] = dot_sparse(model.weights[c], x) + model.bias[c];
        }
    }
    p.label = p.classes[argmax_strict(p.scores)];
    return p;
}

OvrMnbModel ovr_mnb_train(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                          double alpha) {
    OvrMnbModel model;
    model.alpha = alpha;
    model.classes = sorted_classes(y);
    if (model.classes.size() < 2) throw DataError("ovr_mnb_train: need at least two classes");
    for (const std::string& c : model.classes) {
        std::vector<std::string> relabeled;
        relabeled.reserve(y.size());
        for (const std::string& label : y) {
            relabeled.push_back(label == c ? "pos" : "_rest");
        }
        model.problems.push_back(mnb_train(X, relabeled, alpha));
    }
    return model;
}

Prediction ovr_mnb_predict(const OvrMnbModel& model, const FeatureVector& x) {
    Prediction p;
    p.classes = model.classes;
    p.scores.resize(model.classes.size());
    for (std::size_t k = 0; k < model.problems.size(); ++k) {
        Prediction binary = mnb_predict(model.problems[k], x);
        std::size_t pos = binary.classes[0] == "pos" ? 0 : 1;
        p.scores[k] = binary.scores[pos];
    }
    p.label = p.classes[argmax_strict(p.scores)];
    return p;
}

SvmModel svm_train_ovr(const std::vector<FeatureVector>& X, const std::vector<std::string>& y,
                       double lambda, std::size_t epochs, std::uint64_t seed) {
    std::vector<std::string> classes = sorted_classes(y);
    if (classes.size() < 2) throw DataError("svm_train_ovr: need at least two classes");

    SvmModel model;
    model.strategy = SvmStrategy::ovr;
    model.classes = classes;
    model.lambda = lambda;
    for (const std::string& c : classes) {
        std::vector<int> relabeled;
        relabeled.reserve(y.size());
        for (const std::string& label : y) relabeled.push_back(label == c ? 1 : -1);
        SvmModel binary = svm_train_binary(X, relabeled, lambda, epochs, seed);
        model.weights.push_back(std::move(binary.weights[0]));
        model.bias.push_back(binary.bias[0]);
        model.objective_increased = model.objective_increased || binary.objective_increased;
    }
    return model;
}

SvmModel svm_train_multiclass(const std::vector<FeatureVector>& X,
                              const std::vector<std::string>& y, double lambda,
                              std::size_t epochs, std::uint64_t seed) {
    if (X.size() != y.size()) throw UsageError("svm_train_multiclass: |X| != |y|");
    if (X.empty()) throw DataError("svm_train_multiclass: empty training set");
    if (!(lambda > 0.0)) throw UsageError("svm_train_multiclass: lambda must be positive");
    if (epochs < 1) throw UsageError("svm_train_multiclass: epochs must be at least 1");
    std::size_t dim = check_dims(X);

    std::vector<std::string> classes = sorted_classes(y);
    std::size_t k_classes = classes.size();
    if (k_classes < 2) throw DataError("svm_train_multiclass: need at least two classes");
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < k_classes; ++k) index[classes[k]] = k;
    std::vector<std::size_t> yc(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) yc[i] = index.at(y[i]);

    ScaledRows w;
    w.rows.assign(k_classes, std::vector<double>(dim, 0.0));
    std::vector<double> bias(k_classes, 0.0);

    SvmModel model;
    model.strategy = SvmStrategy::crammer_singer;
    model.classes = classes;
    model.lambda = lambda;

    Rng rng(seed);
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> scores(k_classes);
    std::vector<std::size_t> worst;
    std::size_t t = 1;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            double eta = 1.0 / (lambda * static_cast<double>(t));
            std::size_t c = yc[i];
            for (std::size_t r = 0; r < k_classes; ++r) {
                scores[r] = w.score(r, X[i]) + bias[r];
            }
            // Worst violators: every r != y attaining the maximal score. The
            // subgradient update is split equally so renaming classes cannot
            // change which update happens.
            worst.clear();
            double hi = 0.0;
            for (std::size_t r = 0; r < k_classes; ++r) {
                if (r == c) continue;
                if (worst.empty() || scores[r] > hi) {
                    hi = scores[r];
                    worst.assign(1, r);
                } else if (scores[r] == hi) {
                    worst.push_back(r);
                }
            }
            double violation = 1.0 + hi - scores[c];
            w.decay(1.0 - eta * lambda);
            if (violation > 0.0) {
                double share = eta / static_cast<double>(worst.size());
                for (std::size_t r : worst) {
                    w.add(r, -share, X[i]);
                    bias[r] -= share;
                }
                w.add(c, eta, X[i]);
                bias[c] += eta;
            }
            ++t;
        }
        double hinge = 0.0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            double sc = 0.0, best_other = 0.0;
            bool seen = false;
            for (std::size_t r = 0; r < k_classes; ++r) {
                double s = w.score(r, X[i]) + bias[r];
                if (r == yc[i]) {
                    sc = s;
                } else if (!seen || s > best_other) {
                    best_other = s;
                    seen = true;
                }
            }
            hinge += std::max(0.0, 1.0 + best_other - sc);
        }
        double reg = 0.5 * lambda * w.scale * w.scale * frobenius2(w.rows);
        model.epoch_objective.push_back(reg + hinge / static_cast<double>(X.size()));
    }

    model.weights = w.materialize();
    model.bias = bias;
    mark_objective_increases(model);
    return model;
}

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<std::string>& y,
                                                       std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw UsageError("stratified_folds: folds must be at least 2");
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
    for (const auto& [label, members] : by_class) {
        if (members.size() < folds) {
            throw DataError("stratified_folds: class " + label + " has " +
                            std::to_string(members.size()) + " samples for " +
                            std::to_string(folds) + " folds");
        }
    }
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> out(folds);
    for (auto& [label, members] : by_class) {
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i) {
            out[i % folds].push_back(members[i]);
        }
    }
    for (auto& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

GridSearchResult grid_search(const std::vector<FeatureVector>& X,
                             const std::vector<std::string>& y, const TrainConfig& cfg,
                             SvmStrategy strategy, CvMetric metric) {
    cfg.validate();
    if (strategy == SvmStrategy::binary) {
        throw UsageError("grid_search: strategy must be ovr or crammer_singer");
    }
    if (X.size() != y.size()) throw UsageError("grid_search: |X| != |y|");

    std::vector<std::string> classes = sorted_classes(y);
    std::vector<std::vector<std::size_t>> folds = stratified_folds(y, cfg.cv_folds, cfg.seed);

    GridSearchResult result;
    std::vector<double> sums(cfg.lambda_grid.size(), 0.0);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<bool> in_val(X.size(), false);
        for (std::size_t i : folds[f]) in_val[i] = true;
        std::vector<FeatureVector> x_train, x_val;
        std::vector<std::string> y_train, y_val;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (in_val[i]) {
                x_val.push_back(X[i]);
                y_val.push_back(y[i]);
            } else {
                x_train.push_back(X[i]);
                y_train.push_back(y[i]);
            }
        }
        for (std::size_t j = 0; j < cfg.lambda_grid.size(); ++j) {
            double lambda = cfg.lambda_grid[j];
            std::uint64_t train_seed =
                mix_seed(cfg.seed, f * cfg.lambda_grid.size() + j);
            SvmModel model = strategy == SvmStrategy::ovr
                                 ? svm_train_ovr(x_train, y_train, lambda, cfg.epochs, train_seed)
                                 : svm_train_multiclass(x_train, y_train, lambda, cfg.epochs,
                                                        train_seed);
            std::vector<std::string> preds;
            preds.reserve(x_val.size());
            for (const FeatureVector& x : x_val) preds.push_back(svm_predict(model, x).label);
            ClassificationReport report =
                build_report(confusion(y_val, preds, classes), ReportMeta{});
            double value = metric == CvMetric::accuracy ? report.accuracy : report.weighted.f1;
            result.table.push_back({lambda, f, value});
            sums[j] += value;
        }
    }

    std::size_t best = 0;
    for (std::size_t j = 0; j < cfg.lambda_grid.size(); ++j) {
        double mean = sums[j] / static_cast<double>(cfg.cv_folds);
        result.mean_by_lambda.emplace_back(cfg.lambda_grid[j], mean);
        if (mean > result.mean_by_lambda[best].second) best = j;
    }
    result.best_lambda = cfg.lambda_grid[best];
    return result;
}

nlohmann::ordered_json mnb_to_json(const MnbModel& model, const std::string& vocab_ref) {
    nlohmann::ordered_json j;
    j["schema_version"] = kModelSchemaVersion;
    j["model_type"] = "mnb";
    j["classes"] = model.classes;
    j["vocab_ref"] = vocab_ref;
    j["parameters"] = {{"alpha", model.alpha},
                       {"class_log_prior", model.class_log_prior},
                       {"feature_log_prob", model.feature_log_prob}};
    return j;
}

MnbModel mnb_from_json(const nlohmann::json& j) {
    try {
        check_model_header(j, "mnb");
        MnbModel model;
        model.classes = j.at("classes").get<std::vector<std::string>>();
        const nlohmann::json& p = j.at("parameters");
        model.alpha = p.at("alpha").get<double>();
        model.class_log_prior = p.at("class_log_prior").get<std::vector<double>>();
        model.feature_log_prob =
            p.at("feature_log_prob").get<std::vector<std::vector<double>>>();
        if (model.class_log_prior.size() != model.classes.size() ||
            model.feature_log_prob.size() != model.classes.size()) {
            throw DataError("mnb model arrays disagree with the class list");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed mnb model json: ") + e.what());
    }
}

nlohmann::ordered_json svm_to_json(const SvmModel& model, const std::string& vocab_ref) {
    nlohmann::ordered_json j;
    j["schema_version"] = kModelSchemaVersion;
    j["model_type"] = "svm";
    j["strategy"] = to_string(model.strategy);
    j["classes"] = model.classes;
    j["vocab_ref"] = vocab_ref;
    j["parameters"] = {{"lambda", model.lambda},
                       {"weights", model.weights},
                       {"bias", model.bias}};
    return j;
}

SvmModel svm_from_json(const nlohmann::json& j) {
    try {
        check_model_header(j, "svm");
        SvmModel model;
        model.strategy = svm_strategy_from_string(j.at("strategy").get<std::string>());
        model.classes = j.at("classes").get<std::vector<std::string>>();
        const nlohmann::json& p = j.at("parameters");
        model.lambda = p.at("lambda").get<double>();
        model.weights = p.at("weights").get<std::vector<std::vector<double>>>();
        model.bias = p.at("bias").get<std::vector<double>>();
        std::size_t expected_rows =
            model.strategy == SvmStrategy::binary ? 1 : model.classes.size();
        if (model.weights.size() != expected_rows || model.bias.size() != expected_rows) {
            throw DataError("svm model arrays disagree with the strategy");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed svm model json: ") + e.what());
    }
}

nlohmann::ordered_json ovr_mnb_to_json(const OvrMnbModel& model, const std::string& vocab_ref) {
    nlohmann::ordered_json j;
    j["schema_version"] = kModelSchemaVersion;
    j["model_type"] = "ovr_mnb";
    j["classes"] = model.classes;
    j["vocab_ref"] = vocab_ref;
    nlohmann::ordered_json problems = nlohmann::ordered_json::array();
    for (const MnbModel& p : model.problems) problems.push_back(mnb_to_json(p, vocab_ref));
    j["parameters"] = {{"alpha", model.alpha}, {"problems", problems}};
    return j;
}

OvrMnbModel ovr_mnb_from_json(const nlohmann::json& j) {
    try {
        check_model_header(j, "ovr_mnb");
        OvrMnbModel model;
        model.classes = j.at("classes").get<std::vector<std::string>>();
        const nlohmann::json& p = j.at("parameters");
        model.alpha = p.at("alpha").get<double>();
        for (const nlohmann::json& problem : p.at("problems")) {
            model.problems.push_back(mnb_from_json(problem));
        }
        if (model.problems.size() != model.classes.size()) {
            throw DataError("ovr_mnb model problem count disagrees with the class list");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed ovr_mnb model json: ") + e.what());
    }
}

}  // namespace episent
