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

#include "episent/eval.hpp"

#include <cstdio>
#include <sstream>

#include "episent/errors.hpp"

namespace episent {

namespace {

std::string real_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string real_md(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void require_same_meta(const ReportMeta& a, const ReportMeta& b, const char* what) {
    if (a.model != b.model || a.task != b.task || a.language != b.language ||
        a.strategy != b.strategy || a.feature_mode != b.feature_mode ||
        a.hyperparameters != b.hyperparameters) {
        throw DataError(std::string(what) + ": report metadata differs");
    }
}

}  // namespace

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == label) return i;
    }
    throw DataError("unknown class label: " + label);
}

double f1_score(double precision, double recall) {
    double denom = precision + recall;
    if (denom == 0.0) return 0.0;
    return 2.0 * precision * recall / denom;
}

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& classes) {
    if (y_true.size() != y_pred.size()) {
        throw UsageError("confusion: label vectors have different lengths (" +
                         std::to_string(y_true.size()) + " vs " + std::to_string(y_pred.size()) +
                         ")");
    }
    ConfusionMatrix cm;
    cm.classes = classes;
    cm.counts.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
    cm.n = y_true.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
    if (index.size() != classes.size()) throw UsageError("confusion: duplicate class label");
    for (std::size_t k = 0; k < y_true.size(); ++k) {
        auto it = index.find(y_true[k]);
        auto jt = index.find(y_pred[k]);
        if (it == index.end()) throw DataError("unknown class label: " + y_true[k]);
        if (jt == index.end()) throw DataError("unknown class label: " + y_pred[k]);
        ++cm.counts[it->second][jt->second];
    }
    return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, const std::string& label) {
    std::size_t c = cm.index_of(label);
    std::size_t tp = cm.counts[c][c];
    std::size_t row = 0, col = 0;
    for (std::size_t j = 0; j < cm.classes.size(); ++j) row += cm.counts[c][j];
    for (std::size_t i = 0; i < cm.classes.size(); ++i) col += cm.counts[i][c];
    std::size_t fp = col - tp;
    std::size_t fn = row - tp;

    ClassMetrics m;
    m.support = static_cast<double>(row);
    if (tp + fp == 0) {
        m.zero_division = true;
    } else {
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    if (tp + fn == 0) {
        m.zero_division = true;
    } else {
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    if (m.precision + m.recall == 0.0) {
        m.zero_division = true;
        m.f1 = 0.0;
    } else {
        m.f1 = f1_score(m.precision, m.recall);
    }
    return m;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.n == 0) throw DataError("accuracy: confusion matrix holds no samples");
    std::size_t trace = 0;
    for (std::size_t i = 0; i < cm.classes.size(); ++i) trace += cm.counts[i][i];
    return static_cast<double>(trace) / static_cast<double>(cm.n);
}

ClassificationReport build_report(const ConfusionMatrix& cm, const ReportMeta& meta) {
    ClassificationReport report;
    report.meta = meta;
    report.f1_derivation = "from_counts";
    report.classes = cm.classes;
    report.accuracy = accuracy(cm);

    double total = static_cast<double>(cm.n);
    for (const std::string& label : cm.classes) {
        ClassMetrics m = class_metrics(cm, label);
        report.macro.precision += m.precision;
        report.macro.recall += m.recall;
        report.macro.f1 += m.f1;
        report.weighted.precision += m.support * m.precision;
        report.weighted.recall += m.support * m.recall;
        report.weighted.f1 += m.support * m.f1;
        report.per_class[label] = m;
    }
    double k = static_cast<double>(cm.classes.size());
    report.macro.precision /= k;
    report.macro.recall /= k;
    report.macro.f1 /= k;
    report.weighted.precision /= total;
    report.weighted.recall /= total;
    report.weighted.f1 /= total;
    return report;
}

ClassificationReport average_reports(const std::vector<ClassificationReport>& reports) {
    if (reports.empty()) throw UsageError("average_reports: no reports given");
    const ClassificationReport& first = reports[0];
    for (const ClassificationReport& r : reports) {
        require_same_meta(first.meta, r.meta, "average_reports");
        if (r.classes != first.classes) {
            throw DataError("average_reports: class sets differ");
        }
    }

    ClassificationReport out;
    out.meta = first.meta;
    out.meta.split_seeds.clear();
    out.f1_derivation = "averaged";
    out.classes = first.classes;
    for (const std::string& label : out.classes) out.per_class[label] = ClassMetrics{};

    double n = static_cast<double>(reports.size());
    for (const ClassificationReport& r : reports) {
        out.meta.split_seeds.insert(out.meta.split_seeds.end(), r.meta.split_seeds.begin(),
                                    r.meta.split_seeds.end());
        out.accuracy += r.accuracy / n;
        out.macro.precision += r.macro.precision / n;
        out.macro.recall += r.macro.recall / n;
        out.macro.f1 += r.macro.f1 / n;
        out.weighted.precision += r.weighted.precision / n;
        out.weighted.recall += r.weighted.recall / n;
        out.weighted.f1 += r.weighted.f1 / n;
        for (const std::string& label : out.classes) {
            const ClassMetrics& m = r.per_class.at(label);
            ClassMetrics& acc = out.per_class[label];
            acc.precision += m.precision / n;
            acc.recall += m.recall / n;
            acc.f1 += m.f1 / n;
            acc.support += m.support / n;
            acc.zero_division = acc.zero_division || m.zero_division;
        }
    }
    return out;
}

ComparisonTable compare_strategies(const ClassificationReport& ovr,
                                   const ClassificationReport& multi) {
    if (ovr.meta.task != multi.meta.task || ovr.meta.language != multi.meta.language) {
        throw DataError("compare_strategies: reports cover different tasks");
    }
    if (ovr.classes != multi.classes) {
        throw DataError("compare_strategies: class sets differ");
    }
    ComparisonTable table;
    for (const ClassificationReport* r : {&ovr, &multi}) {
        table.rows.push_back({r->meta.task, r->meta.language, r->meta.strategy,
                              r->weighted.precision, r->weighted.recall});
    }
    return table;
}

std::string ComparisonTable::to_csv() const {
    std::ostringstream out;
    out << "task,language,strategy,weighted_precision,weighted_recall\n";
    for (const ComparisonRow& row : rows) {
        out << row.task << ',' << row.language << ',' << row.strategy << ','
            << real_csv(row.weighted_precision) << ',' << real_csv(row.weighted_recall) << '\n';
    }
    return out.str();
}

std::string ComparisonTable::to_markdown() const {
    std::ostringstream out;
    out << "| task | language | strategy | weighted precision | weighted recall |\n";
    out << "|---|---|---|---|---|\n";
    for (const ComparisonRow& row : rows) {
        out << "| " << row.task << " | " << row.language << " | " << row.strategy << " | "
            << real_md(row.weighted_precision) << " | " << real_md(row.weighted_recall)
            << " |\n";
    }
    return out.str();
}

nlohmann::ordered_json report_to_json(const ClassificationReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["model"] = report.meta.model;
    j["task"] = report.meta.task;
    j["language"] = report.meta.language;
    j["strategy"] = report.meta.strategy;
    j["feature_mode"] = report.meta.feature_mode;
    j["split_seeds"] = report.meta.split_seeds;
    j["hyperparameters"] = report.meta.hyperparameters;
    j["f1_derivation"] = report.f1_derivation;
    j["classes"] = report.classes;
    nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
    for (const std::string& label : report.classes) {
        const ClassMetrics& m = report.per_class.at(label);
        per_class[label] = {{"precision", m.precision},
                            {"recall", m.recall},
                            {"f1", m.f1},
                            {"support", m.support},
                            {"zero_division", m.zero_division}};
    }
    j["per_class"] = per_class;
    j["accuracy"] = report.accuracy;
    j["macro"] = {{"precision", report.macro.precision},
                  {"recall", report.macro.recall},
                  {"f1", report.macro.f1}};
    j["weighted"] = {{"precision", report.weighted.precision},
                     {"recall", report.weighted.recall},
                     {"f1", report.weighted.f1}};
    return j;
}

ClassificationReport report_from_json(const nlohmann::json& j) {
    try {
        int version = j.at("schema_version").get<int>();
        if (version != kReportSchemaVersion) {
            throw DataError("unsupported report schema_version " + std::to_string(version) +
                            " (expected " + std::to_string(kReportSchemaVersion) + ")");
        }
        ClassificationReport report;
        report.meta.model = j.at("model").get<std::string>();
        report.meta.task = j.at("task").get<std::string>();
        report.meta.language = j.at("language").get<std::string>();
        report.meta.strategy = j.at("strategy").get<std::string>();
        report.meta.feature_mode = j.at("feature_mode").get<std::string>();
        report.meta.split_seeds = j.at("split_seeds").get<std::vector<std::uint64_t>>();
        report.meta.hyperparameters =
            j.at("hyperparameters").get<std::map<std::string, std::string>>();
        report.f1_derivation = j.at("f1_derivation").get<std::string>();
        report.classes = j.at("classes").get<std::vector<std::string>>();
        const nlohmann::json& per_class = j.at("per_class");
        for (const std::string& label : report.classes) {
            const nlohmann::json& m = per_class.at(label);
            ClassMetrics cm;
            cm.precision = m.at("precision").get<double>();
            cm.recall = m.at("recall").get<double>();
            cm.f1 = m.at("f1").get<double>();
            cm.support = m.at("support").get<double>();
            cm.zero_division = m.at("zero_division").get<bool>();
            report.per_class[label] = cm;
        }
        report.accuracy = j.at("accuracy").get<double>();
        const nlohmann::json& macro = j.at("macro");
        report.macro = {macro.at("precision").get<double>(), macro.at("recall").get<double>(),
                        macro.at("f1").get<double>()};
        const nlohmann::json& weighted = j.at("weighted");
        report.weighted = {weighted.at("precision").get<double>(),
                           weighted.at("recall").get<double>(),
                           weighted.at("f1").get<double>()};
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report json: ") + e.what());
    }
}

std::string report_to_markdown(const ClassificationReport& report) {
    std::ostringstream out;
    out << "| class | precision | recall | f1 | support |\n";
    out << "|---|---|---|---|---|\n";
    for (const std::string& label : report.classes) {
        const ClassMetrics& m = report.per_class.at(label);
        out << "| " << label << " | " << real_md(m.precision) << " | " << real_md(m.recall)
            << " | " << real_md(m.f1) << " | " << real_csv(m.support) << " |\n";
    }
    out << "| accuracy |  |  | " << real_md(report.accuracy) << " |  |\n";
    out << "| macro avg | " << real_md(report.macro.precision) << " | "
        << real_md(report.macro.recall) << " | " << real_md(report.macro.f1) << " |  |\n";
    out << "| weighted avg | " << real_md(report.weighted.precision) << " | "
        << real_md(report.weighted.recall) << " | " << real_md(report.weighted.f1) << " |  |\n";
    return out.str();
}

}  // namespace episent
