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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "episent/errors.hpp"
#include "episent/eval.hpp"
#include "episent/rng.hpp"

namespace {

using namespace episent;

std::vector<std::string> random_labels(Rng& rng, const std::vector<std::string>& classes,
                                       std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(classes[rng.below(classes.size())]);
    return out;
}

ReportMeta meta_fixture() {
    ReportMeta m;
    m.model = "mnb";
    m.task = "sentiment";
    m.language = "en";
    m.strategy = "multiclass";
    m.feature_mode = "counts";
    m.split_seeds = {7};
    m.hyperparameters = {{"alpha", "1.0"}};
    return m;
}

ClassificationReport hand_report(double accuracy, double f1_a, double f1_b) {
    ClassificationReport r;
    r.meta = meta_fixture();
    r.classes = {"a", "b"};
    r.per_class["a"] = {0.5, 0.5, f1_a, 10.0, false};
    r.per_class["b"] = {0.5, 0.5, f1_b, 10.0, false};
    r.accuracy = accuracy;
    r.macro = {0.5, 0.5, (f1_a + f1_b) / 2.0};
    r.weighted = {0.5, accuracy, (f1_a + f1_b) / 2.0};
    return r;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("confusion counts true rows against predicted columns") {
    ConfusionMatrix cm = confusion({"a", "a", "b"}, {"a", "b", "b"}, {"a", "b"});
    CHECK(cm.n == 3);
    CHECK(cm.counts[0][0] == 1);
    CHECK(cm.counts[0][1] == 1);
    CHECK(cm.counts[1][0] == 0);
    CHECK(cm.counts[1][1] == 1);

    ConfusionMatrix perfect = confusion({"a", "b", "b"}, {"a", "b", "b"}, {"a", "b"});
    CHECK(perfect.counts[0][0] == 1);
    CHECK(perfect.counts[1][1] == 2);
    CHECK(perfect.counts[0][1] == 0);
    CHECK(perfect.counts[1][0] == 0);

    CHECK_THROWS_AS(confusion({"a"}, {"a", "b"}, {"a", "b"}), UsageError);
    CHECK_THROWS_AS(confusion({"a"}, {"q"}, {"a", "b"}), DataError);
    CHECK_THROWS_AS(confusion({"q"}, {"a"}, {"a", "b"}), DataError);
    CHECK_THROWS_AS(confusion({"a"}, {"a"}, {"a", "a"}), UsageError);
}

TEST_CASE("confusion matches a brute-force pairwise tally") {
    Rng rng(11);
    std::vector<std::string> classes = {"a", "b", "c"};
    std::vector<std::string> y_true = random_labels(rng, classes, 500);
    std::vector<std::string> y_pred = random_labels(rng, classes, 500);
    ConfusionMatrix cm = confusion(y_true, y_pred, classes);

    std::map<std::pair<std::string, std::string>, std::size_t> tally;
    for (std::size_t k = 0; k < y_true.size(); ++k) ++tally[{y_true[k], y_pred[k]}];
    std::size_t total = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = 0; j < classes.size(); ++j) {
            auto it = tally.find({classes[i], classes[j]});
            std::size_t want = it == tally.end() ? 0 : it->second;
            CHECK(cm.counts[i][j] == want);
            total += cm.counts[i][j];
        }
    }
    CHECK(total == cm.n);
}

TEST_CASE("class metrics follow the one-vs-rest reduction") {
    // TP=8, FN=2 on the first row; FP=2 from the second row.
    ConfusionMatrix cm;
    cm.classes = {"pos", "neg"};
    cm.counts = {{8, 2}, {2, 5}};
    cm.n = 17;
    ClassMetrics m = class_metrics(cm, "pos");
    CHECK(m.precision == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(m.support == 10.0);
    CHECK(!m.zero_division);
}

TEST_CASE("a class never predicted and never true is zero and flagged") {
    ConfusionMatrix cm = confusion({"a", "b"}, {"a", "b"}, {"a", "b", "c"});
    ClassMetrics m = class_metrics(cm, "c");
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.support == 0.0);
    CHECK(m.zero_division);
}

TEST_CASE("f1 is the harmonic mean of precision and recall") {
    CHECK(f1_score(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f1_score(0.0, 0.0) == 0.0);
    // Published averaged triple: the rounded table entry sits within 2e-3 of
    // the recomputed harmonic mean.
    CHECK(std::abs(f1_score(0.860, 0.792) - 0.826) < 2e-3);
}

TEST_CASE("per-class metrics equal explicitly constructed binary reductions") {
    Rng rng(23);
    std::vector<std::string> classes = {"a", "b", "c", "d"};
    std::vector<std::string> y_true = random_labels(rng, classes, 300);
    std::vector<std::string> y_pred = random_labels(rng, classes, 300);
    ConfusionMatrix cm = confusion(y_true, y_pred, classes);
    for (const std::string& c : classes) {
        std::vector<std::string> bin_true, bin_pred;
        for (std::size_t k = 0; k < y_true.size(); ++k) {
            bin_true.push_back(y_true[k] == c ? "pos" : "rest");
            bin_pred.push_back(y_pred[k] == c ? "pos" : "rest");
        }
        ConfusionMatrix bin = confusion(bin_true, bin_pred, {"pos", "rest"});
        ClassMetrics want = class_metrics(bin, "pos");
        ClassMetrics got = class_metrics(cm, c);
        CHECK(got.precision == want.precision);
        CHECK(got.recall == want.recall);
        CHECK(got.f1 == want.f1);
        CHECK(got.support == want.support);
    }
}

TEST_CASE("f1 lies between min and max of precision and recall") {
    Rng rng(29);
    std::vector<std::string> classes = {"a", "b", "c", "d"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> y_true = random_labels(rng, classes, 60);
        std::vector<std::string> y_pred = random_labels(rng, classes, 60);
        ConfusionMatrix cm = confusion(y_true, y_pred, classes);
        for (const std::string& c : classes) {
            ClassMetrics m = class_metrics(cm, c);
            CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
            CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
        }
    }
}

TEST_CASE("accuracy is the diagonal fraction") {
    ConfusionMatrix diag = confusion({"a", "b"}, {"a", "b"}, {"a", "b"});
    CHECK(accuracy(diag) == 1.0);
    ConfusionMatrix off = confusion({"a", "b"}, {"b", "a"}, {"a", "b"});
    CHECK(accuracy(off) == 0.0);

    Rng rng(37);
    std::vector<std::string> classes = {"a", "b", "c"};
    std::vector<std::string> y_true = random_labels(rng, classes, 400);
    std::vector<std::string> y_pred = random_labels(rng, classes, 400);
    std::size_t correct = 0;
    for (std::size_t k = 0; k < y_true.size(); ++k) {
        if (y_true[k] == y_pred[k]) ++correct;
    }
    ConfusionMatrix cm = confusion(y_true, y_pred, classes);
    CHECK(accuracy(cm) == doctest::Approx(static_cast<double>(correct) / 400.0).epsilon(1e-15));

    ConfusionMatrix empty;
    empty.classes = {"a"};
    empty.counts = {{0}};
    empty.n = 0;
    CHECK_THROWS_AS(accuracy(empty), DataError);
}

TEST_CASE("weighted averages are support-weighted, macro unweighted") {
    // Supports 3:1 with recalls 1.0 and 0.0.
    ConfusionMatrix cm = confusion({"a", "a", "a", "b"}, {"a", "a", "a", "a"}, {"a", "b"});
    ClassificationReport r = build_report(cm, meta_fixture());
    CHECK(r.weighted.recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.macro.recall == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.accuracy == doctest::Approx(0.75).epsilon(1e-12));

    // Equal supports collapse weighted onto macro.
    ConfusionMatrix eq = confusion({"a", "a", "b", "b"}, {"a", "b", "b", "a"}, {"a", "b"});
    ClassificationReport req = build_report(eq, meta_fixture());
    CHECK(req.macro.precision == doctest::Approx(req.weighted.precision).epsilon(1e-15));
    CHECK(req.macro.recall == doctest::Approx(req.weighted.recall).epsilon(1e-15));
    CHECK(req.macro.f1 == doctest::Approx(req.weighted.f1).epsilon(1e-15));
}

TEST_CASE("weighted recall equals accuracy on random label sets") {
    Rng rng(41);
    std::vector<std::string> classes = {"a", "b", "c"};
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 5 + rng.below(100);
        std::vector<std::string> y_true = random_labels(rng, classes, n);
        std::vector<std::string> y_pred = random_labels(rng, classes, n);
        std::size_t correct = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (y_true[k] == y_pred[k]) ++correct;
        }
        double oracle = static_cast<double>(correct) / static_cast<double>(n);
        ClassificationReport r = build_report(confusion(y_true, y_pred, classes), meta_fixture());
        CHECK(std::abs(r.weighted.recall - r.accuracy) <= 1e-12);
        CHECK(std::abs(r.accuracy - oracle) <= 1e-15);
    }
}

TEST_CASE("metrics are invariant under class order permutation") {
    Rng rng(43);
    std::vector<std::string> order1 = {"a", "b", "c"};
    std::vector<std::string> order2 = {"c", "a", "b"};
    std::vector<std::string> y_true = random_labels(rng, order1, 200);
    std::vector<std::string> y_pred = random_labels(rng, order1, 200);
    ClassificationReport r1 = build_report(confusion(y_true, y_pred, order1), meta_fixture());
    ClassificationReport r2 = build_report(confusion(y_true, y_pred, order2), meta_fixture());
    CHECK(r1.accuracy == r2.accuracy);
    for (const std::string& c : order1) {
        CHECK(r1.per_class.at(c).precision == r2.per_class.at(c).precision);
        CHECK(r1.per_class.at(c).recall == r2.per_class.at(c).recall);
        CHECK(r1.per_class.at(c).f1 == r2.per_class.at(c).f1);
    }
    CHECK(r1.macro.f1 == doctest::Approx(r2.macro.f1).epsilon(1e-14));
    CHECK(r1.weighted.f1 == doctest::Approx(r2.weighted.f1).epsilon(1e-14));
}

TEST_CASE("averaging reports takes arithmetic means of every numeric field") {
    ClassificationReport r1 = hand_report(0.8, 0.8, 0.8);
    ClassificationReport r2 = hand_report(0.7, 0.32, 0.32);
    r2.meta.split_seeds = {8};
    ClassificationReport avg = average_reports({r1, r2});
    CHECK(avg.accuracy == doctest::Approx(0.75).epsilon(1e-15));
    // f1 is the mean of the per-split f1 values, not recomputed from the
    // averaged precision and recall.
    CHECK(avg.per_class.at("a").f1 == doctest::Approx(0.56).epsilon(1e-12));
    CHECK(avg.per_class.at("a").f1 !=
          doctest::Approx(f1_score(avg.per_class.at("a").precision,
                                   avg.per_class.at("a").recall)));
    CHECK(avg.f1_derivation == "averaged");
    CHECK(avg.meta.split_seeds == std::vector<std::uint64_t>{7, 8});
}

TEST_CASE("averaging identical reports is idempotent") {
    Rng rng(47);
    std::vector<std::string> classes = {"a", "b", "c"};
    std::vector<std::string> y_true = random_labels(rng, classes, 90);
    std::vector<std::string> y_pred = random_labels(rng, classes, 90);
    ClassificationReport base = build_report(confusion(y_true, y_pred, classes), meta_fixture());
    ClassificationReport avg = average_reports({base, base, base, base, base});
    CHECK(avg.accuracy == doctest::Approx(base.accuracy).epsilon(1e-14));
    CHECK(avg.macro.f1 == doctest::Approx(base.macro.f1).epsilon(1e-14));
    CHECK(avg.weighted.precision == doctest::Approx(base.weighted.precision).epsilon(1e-14));
    for (const std::string& c : classes) {
        CHECK(avg.per_class.at(c).f1 == doctest::Approx(base.per_class.at(c).f1).epsilon(1e-14));
        CHECK(avg.per_class.at(c).support ==
              doctest::Approx(base.per_class.at(c).support).epsilon(1e-14));
    }
}

TEST_CASE("averaging rejects mismatched reports") {
    ClassificationReport r1 = hand_report(0.8, 0.8, 0.8);
    ClassificationReport r2 = hand_report(0.7, 0.7, 0.7);
    r2.classes = {"a", "q"};
    CHECK_THROWS_AS(average_reports({r1, r2}), DataError);
    ClassificationReport r3 = hand_report(0.7, 0.7, 0.7);
    r3.meta.model = "svm";
    CHECK_THROWS_AS(average_reports({r1, r3}), DataError);
    CHECK_THROWS_AS(average_reports({}), UsageError);
}

TEST_CASE("strategy comparison projects weighted precision and recall") {
    ClassificationReport ovr = hand_report(0.8, 0.8, 0.8);
    ovr.meta.strategy = "ovr";
    ovr.weighted = {0.81, 0.79, 0.80};
    ClassificationReport multi = hand_report(0.8, 0.8, 0.8);
    multi.meta.strategy = "multiclass";
    multi.weighted = {0.78, 0.83, 0.80};

    ComparisonTable table = compare_strategies(ovr, multi);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].strategy == "ovr");
    CHECK(table.rows[0].weighted_precision == 0.81);
    CHECK(table.rows[0].weighted_recall == 0.79);
    CHECK(table.rows[1].strategy == "multiclass");
    CHECK(table.rows[1].weighted_recall == 0.83);
    CHECK(table.rows[0].task == "sentiment");
    CHECK(table.rows[0].language == "en");

    std::string csv = table.to_csv();
    CHECK(csv.rfind("task,language,strategy,weighted_precision,weighted_recall\n", 0) == 0);
    CHECK(csv.find("sentiment,en,ovr,0.81,0.79") != std::string::npos);
    CHECK(table.to_markdown().find("| multiclass |") != std::string::npos);

    ComparisonTable same = compare_strategies(ovr, ovr);
    CHECK(same.rows[0].weighted_precision == same.rows[1].weighted_precision);

    ClassificationReport other = hand_report(0.8, 0.8, 0.8);
    other.meta.task = "emotion";
    CHECK_THROWS_AS(compare_strategies(ovr, other), DataError);
}

TEST_CASE("reports survive a json round-trip and reject foreign schemas") {
    Rng rng(53);
    std::vector<std::string> classes = {"negative", "neutral", "positive"};
    std::vector<std::string> y_true = random_labels(rng, classes, 120);
    std::vector<std::string> y_pred = random_labels(rng, classes, 120);
    ClassificationReport base = build_report(confusion(y_true, y_pred, classes), meta_fixture());

    nlohmann::ordered_json j = report_to_json(base);
    ClassificationReport back = report_from_json(j);
    CHECK(back.meta.model == base.meta.model);
    CHECK(back.meta.split_seeds == base.meta.split_seeds);
    CHECK(back.meta.hyperparameters == base.meta.hyperparameters);
    CHECK(back.classes == base.classes);
    CHECK(back.accuracy == base.accuracy);
    CHECK(back.f1_derivation == base.f1_derivation);
    for (const std::string& c : classes) {
        CHECK(back.per_class.at(c).precision == base.per_class.at(c).precision);
        CHECK(back.per_class.at(c).f1 == base.per_class.at(c).f1);
        CHECK(back.per_class.at(c).zero_division == base.per_class.at(c).zero_division);
    }
    CHECK(back.weighted.recall == base.weighted.recall);

    nlohmann::json foreign = j;
    foreign["schema_version"] = 999;
    CHECK_THROWS_AS(report_from_json(foreign), DataError);
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{}")), DataError);
}

TEST_CASE("markdown rendering lists classes and average rows") {
    ConfusionMatrix cm = confusion({"a", "a", "b"}, {"a", "b", "b"}, {"a", "b"});
    std::string md = report_to_markdown(build_report(cm, meta_fixture()));
    CHECK(md.find("| class | precision | recall | f1 | support |") != std::string::npos);
    CHECK(md.find("| a | ") != std::string::npos);
    CHECK(md.find("| macro avg | ") != std::string::npos);
    CHECK(md.find("| weighted avg | ") != std::string::npos);
    CHECK(md.find("| accuracy |") != std::string::npos);
}

}  // TEST_SUITE
