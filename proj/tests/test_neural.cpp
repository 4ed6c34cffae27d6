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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "episent/errors.hpp"
#include "episent/neural.hpp"
#include "episent/rng.hpp"

namespace {

using namespace episent;

NeuralConfig tiny_cfg(Arch arch, Precision precision = Precision::f64) {
    NeuralConfig cfg;
    cfg.arch = arch;
    cfg.hidden = 3;
    cfg.filters = 2;
    cfg.kernel_widths = {2, 3};
    cfg.epochs = 4;
    cfg.batch = 4;
    cfg.learning_rate = 1e-3;
    cfg.seed = 11;
    cfg.precision = precision;
    cfg.max_len = 6;
    cfg.embed_dim = 4;
    return cfg;
}

std::vector<std::vector<std::string>> tiny_docs() {
    return {{"fever", "rain", "dengue"},
            {"mosquito", "bite", "report"},
            {"city", "alert", "dengue", "rain", "fever"},
            {"calm", "day"}};
}

struct TinyWorld {
    WordIndex wi;
    EmbeddingMatrix emb;
    std::vector<SequenceSample> xs;
    std::vector<std::string> ys;
    std::vector<std::string> classes;

    TinyWorld() {
        wi = build_word_index(tiny_docs());
        emb = build_embedding_matrix(wi, PretrainedVectors{}, 4, 21);
        const auto docs = tiny_docs();
        for (std::size_t i = 0; i < 3; ++i) xs.push_back(to_sequence(docs[i], wi, 6));
        ys = {"a", "b", "c"};
        classes = {"a", "b", "c"};
    }
};

const std::vector<Arch> kAllArchs = {Arch::cnn1d, Arch::lstm, Arch::bilstm,
                                     Arch::bilstm_attention};

struct LabeledDocs {
    std::vector<std::vector<std::string>> docs;
    std::vector<std::string> labels;
};

// The keyword alone decides the class; fillers are shared across classes.
LabeledDocs keyword_fixture(std::size_t per_class, std::uint64_t seed,
                            const std::vector<std::pair<std::string, std::string>>& kw_to_class) {
    const std::vector<std::string> fillers = {"the",  "report", "from",  "city",
                                              "today", "people", "water", "street"};
    Rng rng(seed);
    LabeledDocs out;
    for (const auto& [kw, cls] : kw_to_class) {
        for (std::size_t i = 0; i < per_class; ++i) {
            std::vector<std::string> doc;
            doc.push_back(fillers[rng.below(fillers.size())]);
            doc.push_back(kw);
            const std::size_t extra = 2 + rng.below(3);
            for (std::size_t k = 0; k < extra; ++k) {
                doc.push_back(fillers[rng.below(fillers.size())]);
            }
            out.docs.push_back(std::move(doc));
            out.labels.push_back(cls);
        }
    }
    return out;
}

template <typename T>
bool tensors_equal(const TensorStore<T>& a, const TensorStore<T>& b) {
    if (a.names != b.names || a.shapes != b.shapes) return false;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (a.data[i] != b.data[i]) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("neural") {

TEST_CASE("word index numbers the training vocabulary from one") {
    const WordIndex wi = build_word_index({{"b", "a"}, {"b"}});
    REQUIRE(wi.size() == 2);
    CHECK(wi.word_to_index.at("a") == 1);
    CHECK(wi.word_to_index.at("b") == 2);

    CHECK_THROWS_AS(build_word_index({}), DataError);
    CHECK_THROWS_AS(build_word_index({{}, {}}), DataError);
}

TEST_CASE("to_sequence maps, drops, truncates, and pads") {
    const WordIndex wi = build_word_index({{"a", "b"}});

    SUBCASE("out-of-index tokens vanish before padding") {
        const SequenceSample s = to_sequence({"b", "a", "zzz", "b"}, wi, 6);
        CHECK(s.indices == std::vector<std::size_t>{2, 1, 2, 0, 0, 0});
        CHECK(s.true_length == 3);
    }
    SUBCASE("the mapped tail is truncated to the first max_len tokens") {
        const SequenceSample s = to_sequence({"a", "b", "a", "a", "b"}, wi, 3);
        CHECK(s.indices == std::vector<std::size_t>{1, 2, 1});
        CHECK(s.true_length == 3);
    }
    SUBCASE("an all-unknown document becomes pure padding") {
        const SequenceSample s = to_sequence({"q", "w"}, wi, 4);
        CHECK(s.true_length == 0);
        CHECK(s.indices == std::vector<std::size_t>{0, 0, 0, 0});
    }
    SUBCASE("zero max_len is rejected") {
        CHECK_THROWS_AS(to_sequence({"a"}, wi, 0), UsageError);
    }
}

TEST_CASE("pretrained vector files parse with optional header") {
    SUBCASE("plain lines") {
        {
            std::ofstream out("/tmp/episent_vec1.txt");
            out << "alpha 0.5 -0.25 1.0\n";
            out << "beta 1.5 2.5 -3.5\n";
        }
        const PretrainedVectors v = load_pretrained_vectors("/tmp/episent_vec1.txt", 3);
        REQUIRE(v.vectors.size() == 2);
        CHECK(v.vectors.at("alpha") == std::vector<double>{0.5, -0.25, 1.0});
        CHECK(v.vectors.at("beta") == std::vector<double>{1.5, 2.5, -3.5});
        CHECK(v.skipped_lines == 0);
    }
    SUBCASE("a count/dim header line is skipped automatically") {
        {
            std::ofstream out("/tmp/episent_vec2.txt");
            out << "2 3\n";
            out << "alpha 0.5 -0.25 1.0\n";
            out << "beta 1.5 2.5 -3.5\n";
        }
        const PretrainedVectors v = load_pretrained_vectors("/tmp/episent_vec2.txt", 3);
        CHECK(v.vectors.size() == 2);
    }
    SUBCASE("a line with the wrong value count names its line number") {
        {
            std::ofstream out("/tmp/episent_vec3.txt");
            out << "alpha 0.5 -0.25 1.0\n";
            out << "beta 1.5 2.5\n";
        }
        try {
            load_pretrained_vectors("/tmp/episent_vec3.txt", 3);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("unparseable value lines are counted and skipped") {
        {
            std::ofstream out("/tmp/episent_vec4.txt");
            out << "alpha 0.5 -0.25 1.0\n";
            out << "beta 0.1 oops 0.3\n";
            out << "gamma 1.0 2.0 3.0\n";
        }
        const PretrainedVectors v = load_pretrained_vectors("/tmp/episent_vec4.txt", 3);
        CHECK(v.vectors.size() == 2);
        CHECK(v.skipped_lines == 1);
        CHECK(v.vectors.count("beta") == 0);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_pretrained_vectors("/tmp/episent_no_such_vectors.txt", 3),
                        ResourceError);
    }
}

TEST_CASE("embedding matrix copies pretrained rows and seeds the rest") {
    const WordIndex wi = build_word_index({{"alpha", "beta", "gamma"}});
    PretrainedVectors pv;
    pv.dim = 3;
    pv.vectors["beta"] = {0.125, -0.5, 0.75};

    const EmbeddingMatrix emb = build_embedding_matrix(wi, pv, 3, 42);
    REQUIRE(emb.rows == 4);
    REQUIRE(emb.cols == 3);
    CHECK(emb.oov_count == 2);

    SUBCASE("row zero is the all-zero padding row") {
        for (std::size_t j = 0; j < 3; ++j) CHECK(emb.at(0, j) == 0.0);
    }
    SUBCASE("pretrained rows are copied verbatim") {
        const std::size_t idx = wi.word_to_index.at("beta");
        CHECK(emb.at(idx, 0) == 0.125);
        CHECK(emb.at(idx, 1) == -0.5);
        CHECK(emb.at(idx, 2) == 0.75);
    }
    SUBCASE("out-of-vocabulary rows stay inside the init range and reproduce") {
        const std::size_t idx = wi.word_to_index.at("alpha");
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(emb.at(idx, j) > -0.25);
            CHECK(emb.at(idx, j) < 0.25);
        }
        const EmbeddingMatrix again = build_embedding_matrix(wi, pv, 3, 42);
        CHECK(again.data == emb.data);
        const EmbeddingMatrix other = build_embedding_matrix(wi, pv, 3, 43);
        CHECK(other.data != emb.data);
    }
    SUBCASE("a word's row does not depend on the surrounding vocabulary") {
        const WordIndex wider = build_word_index({{"aardvark", "alpha", "beta", "gamma", "zeta"}});
        const EmbeddingMatrix wide = build_embedding_matrix(wider, pv, 3, 42);
        for (const char* word : {"alpha", "gamma"}) {
            const std::size_t a = wi.word_to_index.at(word);
            const std::size_t b = wider.word_to_index.at(word);
            for (std::size_t j = 0; j < 3; ++j) CHECK(emb.at(a, j) == wide.at(b, j));
        }
    }
    SUBCASE("dimension mismatch against the pretrained file is rejected") {
        CHECK_THROWS_AS(build_embedding_matrix(wi, pv, 4, 42), DataError);
    }
}

TEST_CASE("one-hot labels put a single one in the label column") {
    const auto rows = one_hot_labels({"b", "a", "b"}, {"a", "b"});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<double>{0.0, 1.0});
    CHECK(rows[1] == std::vector<double>{1.0, 0.0});
    CHECK(rows[2] == std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(one_hot_labels({"q"}, {"a", "b"}), DataError);
}

TEST_CASE("config validation rejects degenerate settings") {
    NeuralConfig cfg = tiny_cfg(Arch::lstm);
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("zero hidden") {
        cfg.hidden = 0;
        CHECK_THROWS_AS(cfg.validate(), UsageError);
    }
    SUBCASE("empty width list") {
        cfg.kernel_widths.clear();
        CHECK_THROWS_AS(cfg.validate(), UsageError);
    }
    SUBCASE("width beyond the sequence length") {
        cfg.kernel_widths = {7};
        CHECK_THROWS_AS(cfg.validate(), UsageError);
    }
    SUBCASE("non-positive learning rate") {
        cfg.learning_rate = 0.0;
        CHECK_THROWS_AS(cfg.validate(), UsageError);
    }
    SUBCASE("zero batch") {
        cfg.batch = 0;
        CHECK_THROWS_AS(cfg.validate(), UsageError);
    }
}

TEST_CASE("init enforces the input contract") {
    const TinyWorld w;
    SUBCASE("a single class cannot be trained") {
        CHECK_THROWS_AS(neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, {"only"}),
                        DataError);
    }
    SUBCASE("duplicate classes are rejected") {
        CHECK_THROWS_AS(neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, {"a", "a"}),
                        UsageError);
    }
    SUBCASE("the instantiation must match the configured precision") {
        CHECK_THROWS_AS(neural_init<float>(tiny_cfg(Arch::lstm), w.wi, w.emb, w.classes),
                        UsageError);
        CHECK_THROWS_AS(
            neural_init<double>(tiny_cfg(Arch::lstm, Precision::f32), w.wi, w.emb, w.classes),
            UsageError);
    }
    SUBCASE("embedding shape must match the index and dimension") {
        EmbeddingMatrix bad = w.emb;
        bad.rows -= 1;
        bad.data.resize(bad.rows * bad.cols);
        CHECK_THROWS_AS(neural_init<double>(tiny_cfg(Arch::lstm), w.wi, bad, w.classes),
                        UsageError);
    }
    SUBCASE("classes come out lexicographically sorted") {
        const auto net = neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, {"c", "a", "b"});
        CHECK(net.classes == std::vector<std::string>{"a", "b", "c"});
    }
    SUBCASE("the forget gate bias starts open") {
        const auto net = neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, w.classes);
        const auto& b = net.params.tensor("lstm_b");
        const std::size_t H = 3;
        for (std::size_t r = 0; r < H; ++r) CHECK(b[r] == 0.0);
        for (std::size_t r = H; r < 2 * H; ++r) CHECK(b[r] == 1.0);
        for (std::size_t r = 2 * H; r < 4 * H; ++r) CHECK(b[r] == 0.0);
    }
}

TEST_CASE("an untrained net with a zeroed dense layer predicts uniformly") {
    const TinyWorld w;
    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        auto net = neural_init<double>(tiny_cfg(arch), w.wi, w.emb, w.classes);
        auto& dw = net.params.tensor("dense_w");
        auto& db = net.params.tensor("dense_b");
        std::fill(dw.begin(), dw.end(), 0.0);
        std::fill(db.begin(), db.end(), 0.0);
        const auto probs = neural_forward(net, w.xs);
        for (const auto& p : probs) {
            for (const double v : p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("softmax outputs are distributions") {
    const TinyWorld w;
    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        const auto net = neural_init<double>(tiny_cfg(arch), w.wi, w.emb, w.classes);
        const auto probs = neural_forward(net, w.xs);
        for (const auto& p : probs) {
            double sum = 0.0;
            for (const double v : p) {
                CHECK(v > 0.0);
                CHECK(v < 1.0);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("outputs are exactly invariant to trailing padding") {
    const TinyWorld w;
    SequenceSample padded = w.xs[2];
    padded.indices.resize(40, 0);
    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        const auto net = neural_init<double>(tiny_cfg(arch), w.wi, w.emb, w.classes);
        const auto a = neural_forward(net, {w.xs[2]});
        const auto b = neural_forward(net, {padded});
        for (std::size_t k = 0; k < a[0].size(); ++k) CHECK(a[0][k] == b[0][k]);

        const auto cfg32 = tiny_cfg(arch, Precision::f32);
        const auto net32 = neural_init<float>(cfg32, w.wi, w.emb, w.classes);
        const auto a32 = neural_forward(net32, {w.xs[2]});
        const auto b32 = neural_forward(net32, {padded});
        for (std::size_t k = 0; k < a32[0].size(); ++k) CHECK(a32[0][k] == b32[0][k]);
    }
}

TEST_CASE("an all-padding sample still yields a valid distribution") {
    const TinyWorld w;
    SequenceSample empty;
    empty.indices.assign(6, 0);
    empty.true_length = 0;
    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        const auto net = neural_init<double>(tiny_cfg(arch), w.wi, w.emb, w.classes);
        const auto probs = neural_forward(net, {empty});
        double sum = 0.0;
        for (const double v : probs[0]) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("attention weights form a distribution over the valid prefix") {
    const TinyWorld w;
    const auto net = neural_init<double>(tiny_cfg(Arch::bilstm_attention), w.wi, w.emb, w.classes);
    const SequenceSample& s = w.xs[2];  // true_length 5 of 6
    const auto alpha = attention_weights(net, s);
    REQUIRE(alpha.size() == s.indices.size());
    double sum = 0.0;
    for (std::size_t t = 0; t < s.true_length; ++t) {
        CHECK(alpha[t] > 0.0);
        sum += alpha[t];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t t = s.true_length; t < alpha.size(); ++t) CHECK(alpha[t] == 0.0);

    const auto plain = neural_init<double>(tiny_cfg(Arch::bilstm), w.wi, w.emb, w.classes);
    CHECK_THROWS_AS(attention_weights(plain, s), UsageError);
}

TEST_CASE("the output layer gradient is the mean softmax error") {
    const TinyWorld w;
    const auto net = neural_init<double>(tiny_cfg(Arch::bilstm), w.wi, w.emb, w.classes);
    const auto probs = neural_forward(net, w.xs);
    const auto grads = neural_loss_and_grads(net, w.xs, w.ys);
    const auto onehot = one_hot_labels(w.ys, net.classes);
    const auto& gdb = grads.grads.tensor("dense_b");
    for (std::size_t k = 0; k < 3; ++k) {
        double expect = 0.0;
        for (std::size_t i = 0; i < w.xs.size(); ++i) expect += probs[i][k] - onehot[i][k];
        expect /= static_cast<double>(w.xs.size());
        CHECK(gdb[k] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("the batch gradient is the mean of per-sample gradients") {
    const TinyWorld w;
    const auto net = neural_init<double>(tiny_cfg(Arch::bilstm_attention), w.wi, w.emb, w.classes);
    const auto whole = neural_loss_and_grads(net, w.xs, w.ys);
    std::vector<LossAndGrads<double>> singles;
    for (std::size_t i = 0; i < w.xs.size(); ++i) {
        singles.push_back(neural_loss_and_grads(net, {w.xs[i]}, {w.ys[i]}));
    }
    double mean_loss_acc = 0.0;
    for (const auto& s : singles) mean_loss_acc += s.loss;
    CHECK(whole.loss == doctest::Approx(mean_loss_acc / 3.0).epsilon(1e-12));
    for (std::size_t ti = 0; ti < whole.grads.data.size(); ++ti) {
        for (std::size_t k = 0; k < whole.grads.data[ti].size(); ++k) {
            double mean = 0.0;
            for (const auto& s : singles) mean += s.grads.data[ti][k];
            mean /= 3.0;
            CHECK(whole.grads.data[ti][k] == doctest::Approx(mean).epsilon(1e-9));
        }
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    const TinyWorld w;
    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        NeuralConfig cfg = tiny_cfg(arch);
        const double worst = gradient_check(cfg, w.wi, w.emb, w.classes, w.xs, w.ys);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("gradient checking covers trainable embeddings") {
    const TinyWorld w;
    for (const Arch arch : {Arch::cnn1d, Arch::lstm, Arch::bilstm_attention}) {
        CAPTURE(to_string(arch));
        NeuralConfig cfg = tiny_cfg(arch);
        cfg.trainable_embeddings = true;
        const double worst = gradient_check(cfg, w.wi, w.emb, w.classes, w.xs, w.ys);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("gradient checking refuses f32 precision") {
    const TinyWorld w;
    const NeuralConfig cfg = tiny_cfg(Arch::lstm, Precision::f32);
    try {
        gradient_check(cfg, w.wi, w.emb, w.classes, w.xs, w.ys);
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("precision") != std::string::npos);
    }
}

TEST_CASE("frozen embeddings receive no gradient and never move") {
    const TinyWorld w;
    auto net = neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, w.classes);
    const auto grads = neural_loss_and_grads(net, w.xs, w.ys);
    const auto& ge = grads.grads.tensor("embedding");
    for (const double v : ge) CHECK(v == 0.0);

    const auto before = net.params.tensor("embedding");
    neural_train(net, w.xs, w.ys);
    CHECK(net.params.tensor("embedding") == before);
}

TEST_CASE("trainable embeddings update every row except the padding row") {
    const TinyWorld w;
    NeuralConfig cfg = tiny_cfg(Arch::lstm);
    cfg.trainable_embeddings = true;
    auto net = neural_init<double>(cfg, w.wi, w.emb, w.classes);
    const auto grads = neural_loss_and_grads(net, w.xs, w.ys);
    const auto& ge = grads.grads.tensor("embedding");
    for (std::size_t j = 0; j < 4; ++j) CHECK(ge[j] == 0.0);  // row 0
    double magnitude = 0.0;
    for (const double v : ge) magnitude += std::abs(v);
    CHECK(magnitude > 0.0);

    const auto before = net.params.tensor("embedding");
    neural_train(net, w.xs, w.ys);
    const auto& after = net.params.tensor("embedding");
    for (std::size_t j = 0; j < 4; ++j) CHECK(after[j] == 0.0);
    CHECK(after != before);
}

TEST_CASE("training lowers the loss on a small two-class problem") {
    const LabeledDocs data =
        keyword_fixture(50, 303, {{"dengue", "outbreak"}, {"cricket", "sports"}});
    const WordIndex wi = build_word_index(data.docs);
    const EmbeddingMatrix emb = build_embedding_matrix(wi, PretrainedVectors{}, 8, 7);
    std::vector<SequenceSample> xs;
    for (const auto& doc : data.docs) xs.push_back(to_sequence(doc, wi, 10));

    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        NeuralConfig cfg;
        cfg.arch = arch;
        cfg.hidden = 8;
        cfg.filters = 4;
        cfg.kernel_widths = {2, 3};
        cfg.epochs = 10;
        cfg.batch = 16;
        cfg.learning_rate = 5e-3;
        cfg.seed = 31;
        cfg.precision = Precision::f32;
        cfg.max_len = 10;
        cfg.embed_dim = 8;
        auto net = neural_init<float>(cfg, wi, emb, {"outbreak", "sports"});
        const auto losses = neural_train(net, xs, data.labels);
        REQUIRE(losses.size() == 10);
        CHECK(losses.back() < losses.front());
    }
}

TEST_CASE("every architecture fits a three-class keyword rule exactly") {
    const LabeledDocs data = keyword_fixture(
        30, 909, {{"dengue", "outbreak"}, {"flood", "weather"}, {"cricket", "sports"}});
    const WordIndex wi = build_word_index(data.docs);
    const EmbeddingMatrix emb = build_embedding_matrix(wi, PretrainedVectors{}, 8, 7);
    std::vector<SequenceSample> xs;
    for (const auto& doc : data.docs) xs.push_back(to_sequence(doc, wi, 10));

    for (const Arch arch : kAllArchs) {
        CAPTURE(to_string(arch));
        NeuralConfig cfg;
        cfg.arch = arch;
        cfg.hidden = 8;
        cfg.filters = 4;
        cfg.kernel_widths = {2, 3};
        cfg.epochs = 60;
        cfg.batch = 16;
        cfg.learning_rate = 1e-2;
        cfg.seed = 5;
        cfg.precision = Precision::f32;
        cfg.max_len = 10;
        cfg.embed_dim = 8;
        auto net = neural_init<float>(cfg, wi, emb, {"outbreak", "sports", "weather"});
        neural_train(net, xs, data.labels);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (neural_predict(net, xs[i]).label == data.labels[i]) ++hits;
        }
        CHECK(hits == xs.size());
    }
}

TEST_CASE("training is deterministic for a fixed seed") {
    const LabeledDocs data =
        keyword_fixture(20, 77, {{"dengue", "outbreak"}, {"cricket", "sports"}});
    const WordIndex wi = build_word_index(data.docs);
    const EmbeddingMatrix emb = build_embedding_matrix(wi, PretrainedVectors{}, 6, 7);
    std::vector<SequenceSample> xs;
    for (const auto& doc : data.docs) xs.push_back(to_sequence(doc, wi, 8));
    NeuralConfig cfg;
    cfg.arch = Arch::bilstm_attention;
    cfg.hidden = 5;
    cfg.epochs = 4;
    cfg.batch = 8;
    cfg.seed = 99;
    cfg.precision = Precision::f64;
    cfg.max_len = 8;
    cfg.embed_dim = 6;

    auto net_a = neural_init<double>(cfg, wi, emb, {"outbreak", "sports"});
    auto net_b = neural_init<double>(cfg, wi, emb, {"outbreak", "sports"});
    CHECK(tensors_equal(net_a.params, net_b.params));
    const auto losses_a = neural_train(net_a, xs, data.labels);
    const auto losses_b = neural_train(net_b, xs, data.labels);
    CHECK(losses_a == losses_b);
    CHECK(tensors_equal(net_a.params, net_b.params));
}

TEST_CASE("train validates its inputs") {
    const TinyWorld w;
    auto net = neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, w.classes);
    CHECK_THROWS_AS(neural_train(net, {}, {}), UsageError);
    CHECK_THROWS_AS(neural_train(net, w.xs, {"a", "b"}), UsageError);
    CHECK_THROWS_AS(neural_train(net, w.xs, {"a", "b", "unknown"}), DataError);
}

TEST_CASE("models round-trip through the binary container") {
    const TinyWorld w;
    SUBCASE("f64 attention model") {
        auto net = neural_init<double>(tiny_cfg(Arch::bilstm_attention), w.wi, w.emb, w.classes);
        neural_train(net, w.xs, w.ys);
        save_neural(net, "/tmp/episent_net_a.bin");
        const AnyNet loaded = load_neural("/tmp/episent_net_a.bin");
        REQUIRE(std::holds_alternative<Net<double>>(loaded));
        const auto& back = std::get<Net<double>>(loaded);
        CHECK(back.classes == net.classes);
        CHECK(back.word_index.word_to_index == net.word_index.word_to_index);
        CHECK(back.cfg.arch == net.cfg.arch);
        CHECK(back.cfg.hidden == net.cfg.hidden);
        CHECK(back.cfg.kernel_widths == net.cfg.kernel_widths);
        CHECK(back.cfg.learning_rate == net.cfg.learning_rate);
        CHECK(back.cfg.seed == net.cfg.seed);
        CHECK(tensors_equal(back.params, net.params));
        const auto a = neural_forward(net, w.xs);
        const auto b = neural_forward(back, w.xs);
        CHECK(a == b);
    }
    SUBCASE("f32 cnn model") {
        auto net = neural_init<float>(tiny_cfg(Arch::cnn1d, Precision::f32), w.wi, w.emb,
                                      w.classes);
        save_neural(net, "/tmp/episent_net_b.bin");
        const AnyNet loaded = load_neural("/tmp/episent_net_b.bin");
        REQUIRE(std::holds_alternative<Net<float>>(loaded));
        const auto& back = std::get<Net<float>>(loaded);
        CHECK(tensors_equal(back.params, net.params));
        CHECK(neural_forward(back, w.xs) == neural_forward(net, w.xs));
    }
}

TEST_CASE("the loader fails loudly on damaged files") {
    const TinyWorld w;
    const auto net = neural_init<double>(tiny_cfg(Arch::lstm), w.wi, w.emb, w.classes);
    save_neural(net, "/tmp/episent_net_c.bin");

    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return s;
    };
    const auto spit = [](const std::string& path, const std::string& bytes) {
        std::ofstream out(path, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    };
    const std::string good = slurp("/tmp/episent_net_c.bin");

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        spit("/tmp/episent_net_bad.bin", bad);
        CHECK_THROWS_AS(load_neural("/tmp/episent_net_bad.bin"), DataError);
    }
    SUBCASE("unsupported schema version") {
        std::string bad = good;
        bad[8] = 99;
        spit("/tmp/episent_net_bad.bin", bad);
        try {
            load_neural("/tmp/episent_net_bad.bin");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("version") != std::string::npos);
        }
    }
    SUBCASE("truncated payload") {
        spit("/tmp/episent_net_bad.bin", good.substr(0, good.size() / 2));
        CHECK_THROWS_AS(load_neural("/tmp/episent_net_bad.bin"), DataError);
    }
    SUBCASE("trailing garbage") {
        spit("/tmp/episent_net_bad.bin", good + "x");
        CHECK_THROWS_AS(load_neural("/tmp/episent_net_bad.bin"), DataError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_neural("/tmp/episent_no_such_net.bin"), ResourceError);
    }
}

TEST_CASE("architecture and precision names round-trip") {
    for (const Arch arch : kAllArchs) CHECK(arch_from_string(to_string(arch)) == arch);
    CHECK(precision_from_string("f32") == Precision::f32);
    CHECK(precision_from_string("f64") == Precision::f64);
    CHECK_THROWS_AS(arch_from_string("perceptron"), UsageError);
    CHECK_THROWS_AS(precision_from_string("f16"), UsageError);
}

}  // TEST_SUITE("neural")
