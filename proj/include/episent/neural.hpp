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
#include <variant>
#include <vector>

#include "episent/prediction.hpp"

namespace episent {

inline constexpr std::uint32_t kNeuralSchemaVersion = 1;

// Index 0 is reserved for padding; real words are numbered from 1 in
// lexicographic order over the training vocabulary.
struct WordIndex {
    std::map<std::string, std::size_t> word_to_index;

    std::size_t size() const { return word_to_index.size(); }
};

// Fixed-length encoded document: out-of-index tokens dropped, the mapped
// tail truncated to the configured length, then padded with index 0.
// true_length counts the real (non-pad) positions.
struct SequenceSample {
    std::vector<std::size_t> indices;
    std::size_t true_length = 0;
};

struct PretrainedVectors {
    std::map<std::string, std::vector<double>> vectors;
    std::size_t dim = 0;
    std::size_t skipped_lines = 0;
};

// Row 0 is the all-zero padding row and is never updated; row i holds the
// vector for the word with index i.
struct EmbeddingMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major, rows * cols
    std::size_t oov_count = 0;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class Arch { cnn1d, lstm, bilstm, bilstm_attention };
enum class Precision { f32, f64 };

std::string to_string(Arch arch);
Arch arch_from_string(const std::string& name);
std::string to_string(Precision precision);
Precision precision_from_string(const std::string& name);

struct NeuralConfig {
    Arch arch = Arch::bilstm_attention;
    std::size_t hidden = 128;
    std::size_t filters = 100;
    std::vector<std::size_t> kernel_widths = {3, 4, 5};
    std::size_t epochs = 10;
    std::size_t batch = 32;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    Precision precision = Precision::f32;
    bool trainable_embeddings = false;
    std::size_t max_len = 100;
    std::size_t embed_dim = 100;

    // Throws UsageError on non-positive sizes, a non-positive learning
    // rate, an empty width list, or a width exceeding max_len.
    void validate() const;
};

// Flat list of named, shaped, row-major tensors. Parameter and gradient
// storage share this layout so they can be walked in lockstep.
template <typename T>
struct TensorStore {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::vector<T>> data;

    std::size_t add(const std::string& name, const std::vector<std::size_t>& shape);
    // Throws InternalError when the name is absent.
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;
    std::vector<T>& tensor(const std::string& name) { return data[index_of(name)]; }
    const std::vector<T>& tensor(const std::string& name) const { return data[index_of(name)]; }
};

// A classifier network over padded sequences. Tensor names by architecture:
//   all:      "embedding" [(n+1) x d], "dense_w" [K x F], "dense_b" [K]
//   cnn1d:    per width w: "conv_w_<w>" [filters x w x d], "conv_b_<w>" [filters]
//   lstm:     "lstm_wx" [4H x d], "lstm_wh" [4H x H], "lstm_b" [4H]
//   bilstm*:  forward set as above plus "lstm_wx_bwd", "lstm_wh_bwd", "lstm_b_bwd"
//   *_attention: "attn_w" [H x 2H], "attn_b" [H], "attn_v" [H]
// Gate rows inside the 4H dimension are stacked input, forget, cell, output.
template <typename T>
struct Net {
    NeuralConfig cfg;
    std::vector<std::string> classes;
    WordIndex word_index;
    TensorStore<T> params;

    // Width of the feature vector feeding the dense layer.
    std::size_t feature_dim() const;
};

using AnyNet = std::variant<Net<float>, Net<double>>;

template <typename T>
struct LossAndGrads {
    double loss = 0.0;
    TensorStore<T> grads;
};

// Throws DataError when no document contributes a token.
WordIndex build_word_index(const std::vector<std::vector<std::string>>& docs);

SequenceSample to_sequence(const std::vector<std::string>& tokens, const WordIndex& index,
                           std::size_t max_len);

// Text format: one "word v1 ... vd" line per vector, with an optional
// leading "count dim" header. Lines whose values fail to parse are counted
// in skipped_lines; a parseable line with the wrong number of values is a
// DataError naming the line.
PretrainedVectors load_pretrained_vectors(const std::string& path, std::size_t dim);

// Pretrained rows are copied verbatim; out-of-vocabulary rows are drawn
// uniform(-0.25, 0.25) from a stream keyed by (seed, word), so a word's row
// does not depend on the rest of the vocabulary.
EmbeddingMatrix build_embedding_matrix(const WordIndex& index, const PretrainedVectors& vectors,
                                       std::size_t dim, std::uint64_t seed);

// One row per label, 1.0 in the label's class column. Throws DataError on a
// label outside classes.
std::vector<std::vector<double>> one_hot_labels(const std::vector<std::string>& labels,
                                                const std::vector<std::string>& classes);

// Seeded Glorot-uniform initialization; biases zero except the LSTM forget
// gate rows, which start at one. Requires at least two classes.
template <typename T>
Net<T> neural_init(const NeuralConfig& cfg, const WordIndex& index, const EmbeddingMatrix& embedding,
                   const std::vector<std::string>& classes);

// Softmax probabilities per sample, aligned with net.classes.
template <typename T>
std::vector<std::vector<T>> neural_forward(const Net<T>& net,
                                           const std::vector<SequenceSample>& samples);

template <typename T>
Prediction neural_predict(const Net<T>& net, const SequenceSample& sample);

// Attention weights over positions, zero beyond true_length. Throws
// UsageError on architectures without attention.
template <typename T>
std::vector<T> attention_weights(const Net<T>& net, const SequenceSample& sample);

// Mean cross-entropy over the batch plus gradients for every tensor; the
// embedding gradient stays zero unless embeddings are trainable, and its
// row 0 stays zero always.
template <typename T>
LossAndGrads<T> neural_loss_and_grads(const Net<T>& net, const std::vector<SequenceSample>& samples,
                                      const std::vector<std::string>& labels);

// Adam mini-batch training over net.cfg.epochs epochs with a seeded
// per-epoch shuffle. Returns the mean per-sample loss of each epoch.
template <typename T>
std::vector<double> neural_train(Net<T>& net, const std::vector<SequenceSample>& samples,
                                 const std::vector<std::string>& labels);

// Central finite differences (epsilon 1e-5) against the analytic gradients
// on the given batch; returns the max over parameters of
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-12). Requires f64
// precision and refuses f32 with a UsageError.
double gradient_check(const NeuralConfig& cfg, const WordIndex& index,
                      const EmbeddingMatrix& embedding, const std::vector<std::string>& classes,
                      const std::vector<SequenceSample>& samples,
                      const std::vector<std::string>& labels);

// Binary container, all integers and floats little-endian:
//   magic "EPISNET1", u32 schema version,
//   u8 arch, u8 precision, u8 trainable_embeddings, u8 reserved (0),
//   u64 hidden, filters, n_widths, widths..., epochs, batch, seed,
//   f64 learning_rate, u64 max_len, embed_dim,
//   u64 n_classes, then length-prefixed class names,
//   u64 n_words, then length-prefixed words in index order (1..n),
//   u64 n_tensors, then per tensor: length-prefixed name, u64 rank,
//   u64 dims..., raw values (f32 or f64 per the precision byte).
template <typename T>
void save_neural(const Net<T>& net, const std::string& path);

// Dispatches on the stored precision byte. Throws ResourceError when the
// file cannot be read and DataError on a bad magic, version, or layout.
AnyNet load_neural(const std::string& path);

}  // namespace episent
