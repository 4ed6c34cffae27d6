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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace episent {

inline constexpr int kReportSchemaVersion = 1;

struct ConfusionMatrix {
    std::vector<std::string> classes;
    // counts[i][j] = samples with true class i predicted as class j.
    std::vector<std::vector<std::size_t>> counts;
    std::size_t n = 0;

    // Throws DataError when the label is not a known class.
    std::size_t index_of(const std::string& label) const;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Real-valued so averaged reports can carry fractional means.
    double support = 0.0;
    // Set when any of the three denominators was zero (the metric is then 0
    // by convention rather than by measurement).
    bool zero_division = false;
};

struct ReportMeta {
    std::string model;
    std::string task;
    std::string language;
    std::string strategy;
    std::string feature_mode;
    std::vector<std::uint64_t> split_seeds;
    std::map<std::string, std::string> hyperparameters;
};

struct Averages {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ClassificationReport {
    ReportMeta meta;
    // "from_counts": metrics derive from one confusion matrix.
    // "averaged": every numeric field is an arithmetic mean across splits
    // (f1 is the mean of per-split f1, not recomputed from averaged P/R).
    std::string f1_derivation = "from_counts";
    std::vector<std::string> classes;
    std::map<std::string, ClassMetrics> per_class;
    double accuracy = 0.0;
    Averages macro;
    Averages weighted;
};

struct ComparisonRow {
    std::string task;
    std::string language;
    std::string strategy;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;

    std::string to_csv() const;
    std::string to_markdown() const;
};

// 2PR/(P+R); zero when P+R is zero.
double f1_score(double precision, double recall);

// Throws UsageError on length mismatch, DataError on labels outside classes.
ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& classes);

// One-vs-rest reduction of the K-class matrix for one class.
ClassMetrics class_metrics(const ConfusionMatrix& cm, const std::string& label);

// trace/N. Throws DataError when the matrix holds no samples.
double accuracy(const ConfusionMatrix& cm);

// Per-class metrics plus accuracy, macro and support-weighted averages.
ClassificationReport build_report(const ConfusionMatrix& cm, const ReportMeta& meta);

// Arithmetic mean of every numeric field; zero_division flags are ORed and
// split seeds concatenated. Requires identical classes and metadata apart
// from the seeds. Throws UsageError on an empty list, DataError on mismatch.
ClassificationReport average_reports(const std::vector<ClassificationReport>& reports);

// Projects two same-task reports onto strategy rows of weighted P/R.
ComparisonTable compare_strategies(const ClassificationReport& ovr,
                                   const ClassificationReport& multi);

nlohmann::ordered_json report_to_json(const ClassificationReport& report);
// Throws DataError on malformed input or a schema_version mismatch.
ClassificationReport report_from_json(const nlohmann::json& j);

std::string report_to_markdown(const ClassificationReport& report);

}  // namespace episent
