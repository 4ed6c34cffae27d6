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

#include "episent/neural.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <type_traits>

#include "episent/errors.hpp"
#include "episent/rng.hpp"

namespace episent {

namespace {

constexpr char kMagic[8] = {'E', 'P', 'I', 'S', 'N', 'E', 'T', '1'};

template <typename T>
T vdot(const T* a, const T* b, std::size_t n) {
    T s = T(0);
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

template <typename T>
T sigmoid(T x) {
    return T(1) / (T(1) + std::exp(-x));
}

bool parse_double_strict(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool is_unsigned_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Words ordered by their index, positions 0..n-1 holding indices 1..n.
// Rejects indices that do not form exactly 1..n.
std::vector<std::string> words_in_index_order(const WordIndex& index) {
    const std::size_t n = index.size();
    std::vector<std::string> words(n);
    std::vector<bool> seen(n, false);
    for (const auto& [word, idx] : index.word_to_index) {
        if (idx < 1 || idx > n || seen[idx - 1]) {
            throw DataError("word index values must form 1..n without gaps");
        }
        seen[idx - 1] = true;
        words[idx - 1] = word;
    }
    return words;
}

template <typename T>
TensorStore<T> zero_like(const TensorStore<T>& p) {
    TensorStore<T> g;
    g.names = p.names;
    g.shapes = p.shapes;
    g.data.resize(p.data.size());
    for (std::size_t i = 0; i < p.data.size(); ++i) g.data[i].assign(p.data[i].size(), T(0));
    return g;
}

// Per-step activations in processing order; the backward direction stores
// its steps reversed relative to the original positions.
template <typename T>
struct LstmTrace {
    std::vector<std::size_t> x;  // embedding row per step
    std::vector<std::vector<T>> i, f, g, o, c, tc, h;

    std::size_t steps() const { return x.size(); }
};

template <typename T>
struct SampleTrace {
    std::size_t m = 0;
    std::vector<std::size_t> idx;                    // the m valid indices
    std::vector<std::vector<T>> conv_act;            // per width: [filter * n_pos + t]
    std::vector<std::size_t> conv_pos;               // per width: valid window count
    std::vector<std::vector<std::size_t>> pool_arg;  // per width: argmax position per filter
    LstmTrace<T> fwd, bwd;
    std::vector<std::vector<T>> attn_u;  // per original position: hidden
    std::vector<T> alpha;                // per original position
    std::vector<T> feat;
    std::vector<T> logits;
    std::vector<T> probs;
};

// Gate rows in the 4H dimension: [0,H) input, [H,2H) forget, [2H,3H) cell
// candidate, [3H,4H) output.
template <typename T>
void lstm_run(const std::vector<T>& wx, const std::vector<T>& wh, const std::vector<T>& bias,
              const std::vector<T>& emb, std::size_t d, std::size_t H,
              const std::vector<std::size_t>& idx, bool reverse, LstmTrace<T>& tr) {
    const std::size_t m = idx.size();
    std::vector<T> h(H, T(0)), cprev(H, T(0)), z(4 * H);
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t row = reverse ? idx[m - 1 - s] : idx[s];
        const T* x = emb.data() + row * d;
        for (std::size_t r = 0; r < 4 * H; ++r) {
            z[r] = bias[r] + vdot(wx.data() + r * d, x, d) + vdot(wh.data() + r * H, h.data(), H);
        }
        std::vector<T> gi(H), gf(H), gg(H), go(H), gc(H), gtc(H), gh(H);
        for (std::size_t r = 0; r < H; ++r) {
            gi[r] = sigmoid(z[r]);
            gf[r] = sigmoid(z[H + r]);
            gg[r] = std::tanh(z[2 * H + r]);
            go[r] = sigmoid(z[3 * H + r]);
            gc[r] = gf[r] * cprev[r] + gi[r] * gg[r];
            gtc[r] = std::tanh(gc[r]);
            gh[r] = go[r] * gtc[r];
        }
        tr.x.push_back(row);
        tr.i.push_back(std::move(gi));
        tr.f.push_back(std::move(gf));
        tr.g.push_back(std::move(gg));
        tr.o.push_back(std::move(go));
        tr.c.push_back(gc);
        tr.tc.push_back(std::move(gtc));
        tr.h.push_back(gh);
        h = std::move(gh);
        cprev = std::move(gc);
    }
}

// Backpropagation through time. dh_last lands on the final processed step;
// inj, when present, adds a per-step state gradient before that step's
// gate derivatives are taken.
template <typename T>
void lstm_bptt(const std::vector<T>& wx, const std::vector<T>& wh, const std::vector<T>& emb,
               std::size_t d, std::size_t H, const LstmTrace<T>& tr, const std::vector<T>& dh_last,
               const std::vector<std::vector<T>>* inj, std::vector<T>& gwx, std::vector<T>& gwh,
               std::vector<T>& gb, std::vector<T>* gemb) {
    const std::size_t m = tr.steps();
    if (m == 0) return;
    std::vector<T> dh(H, T(0)), dc(H, T(0)), dz(4 * H);
    if (!dh_last.empty()) dh = dh_last;
    const std::vector<T> zeros(H, T(0));
    for (std::size_t s = m; s-- > 0;) {
        if (inj != nullptr) {
            for (std::size_t r = 0; r < H; ++r) dh[r] += (*inj)[s][r];
        }
        const auto& gi = tr.i[s];
        const auto& gf = tr.f[s];
        const auto& gg = tr.g[s];
        const auto& go = tr.o[s];
        const auto& gtc = tr.tc[s];
        const std::vector<T>& hprev = s > 0 ? tr.h[s - 1] : zeros;
        const std::vector<T>& cprev = s > 0 ? tr.c[s - 1] : zeros;
        for (std::size_t r = 0; r < H; ++r) {
            const T dout = dh[r] * gtc[r];
            dz[3 * H + r] = dout * go[r] * (T(1) - go[r]);
            const T dcr = dc[r] + dh[r] * go[r] * (T(1) - gtc[r] * gtc[r]);
            const T din = dcr * gg[r];
            dz[r] = din * gi[r] * (T(1) - gi[r]);
            const T dgg = dcr * gi[r];
            dz[2 * H + r] = dgg * (T(1) - gg[r] * gg[r]);
            const T dfr = dcr * cprev[r];
            dz[H + r] = dfr * gf[r] * (T(1) - gf[r]);
            dc[r] = dcr * gf[r];
        }
        const T* x = emb.data() + tr.x[s] * d;
        for (std::size_t r = 0; r < 4 * H; ++r) {
            gb[r] += dz[r];
            T* wxr = gwx.data() + r * d;
            for (std::size_t j = 0; j < d; ++j) wxr[j] += dz[r] * x[j];
            T* whr = gwh.data() + r * H;
            for (std::size_t j = 0; j < H; ++j) whr[j] += dz[r] * hprev[j];
        }
        for (std::size_t j = 0; j < H; ++j) {
            T acc = T(0);
            for (std::size_t r = 0; r < 4 * H; ++r) acc += wh[r * H + j] * dz[r];
            dh[j] = acc;
        }
        if (gemb != nullptr && tr.x[s] != 0) {
            T* grow = gemb->data() + tr.x[s] * d;
            for (std::size_t j = 0; j < d; ++j) {
                T acc = T(0);
                for (std::size_t r = 0; r < 4 * H; ++r) acc += wx[r * d + j] * dz[r];
                grow[j] += acc;
            }
        }
    }
}

template <typename T>
void forward_sample(const Net<T>& net, const SequenceSample& s, SampleTrace<T>& tr) {
    tr = SampleTrace<T>{};
    const NeuralConfig& cfg = net.cfg;
    const std::size_t d = cfg.embed_dim;
    const std::size_t H = cfg.hidden;
    const std::vector<T>& emb = net.params.tensor("embedding");
    const std::size_t rows = net.params.shapes[net.params.index_of("embedding")][0];
    if (s.true_length > s.indices.size()) {
        throw DataError("true_length exceeds the padded sequence length");
    }
    tr.m = s.true_length;
    tr.idx.assign(s.indices.begin(), s.indices.begin() + static_cast<std::ptrdiff_t>(tr.m));
    for (std::size_t t = 0; t < tr.m; ++t) {
        if (tr.idx[t] >= rows) throw DataError("sequence index outside the embedding matrix");
    }

    const std::size_t F = net.feature_dim();
    tr.feat.assign(F, T(0));
    switch (cfg.arch) {
        case Arch::cnn1d: {
            const std::size_t n_widths = cfg.kernel_widths.size();
            tr.conv_act.resize(n_widths);
            tr.conv_pos.resize(n_widths);
            tr.pool_arg.assign(n_widths, std::vector<std::size_t>(cfg.filters, 0));
            for (std::size_t wi = 0; wi < n_widths; ++wi) {
                const std::size_t w = cfg.kernel_widths[wi];
                // Only windows lying fully inside the valid prefix are
                // pooled, so trailing padding cannot influence the result.
                const std::size_t n_pos = tr.m >= w ? tr.m - w + 1 : 0;
                tr.conv_pos[wi] = n_pos;
                auto& act = tr.conv_act[wi];
                act.assign(cfg.filters * n_pos, T(0));
                const std::vector<T>& cw =
                    net.params.tensor("conv_w_" + std::to_string(w));
                const std::vector<T>& cb =
                    net.params.tensor("conv_b_" + std::to_string(w));
                for (std::size_t f = 0; f < cfg.filters; ++f) {
                    const T* wf = cw.data() + f * w * d;
                    for (std::size_t t = 0; t < n_pos; ++t) {
                        T val = cb[f];
                        for (std::size_t k = 0; k < w; ++k) {
                            val += vdot(wf + k * d, emb.data() + tr.idx[t + k] * d, d);
                        }
                        act[f * n_pos + t] = std::tanh(val);
                    }
                    T best = T(0);
                    std::size_t arg = 0;
                    for (std::size_t t = 0; t < n_pos; ++t) {
                        const T a = act[f * n_pos + t];
                        if (t == 0 || a > best) {
                            best = a;
                            arg = t;
                        }
                    }
                    tr.pool_arg[wi][f] = arg;
                    tr.feat[wi * cfg.filters + f] = n_pos > 0 ? best : T(0);
                }
            }
            break;
        }
        case Arch::lstm: {
            lstm_run(net.params.tensor("lstm_wx"), net.params.tensor("lstm_wh"),
                     net.params.tensor("lstm_b"), emb, d, H, tr.idx, false, tr.fwd);
            if (tr.m > 0) {
                const auto& hl = tr.fwd.h[tr.m - 1];
                std::copy(hl.begin(), hl.end(), tr.feat.begin());
            }
            break;
        }
        case Arch::bilstm:
        case Arch::bilstm_attention: {
            lstm_run(net.params.tensor("lstm_wx"), net.params.tensor("lstm_wh"),
                     net.params.tensor("lstm_b"), emb, d, H, tr.idx, false, tr.fwd);
            lstm_run(net.params.tensor("lstm_wx_bwd"), net.params.tensor("lstm_wh_bwd"),
                     net.params.tensor("lstm_b_bwd"), emb, d, H, tr.idx, true, tr.bwd);
            if (cfg.arch == Arch::bilstm) {
                if (tr.m > 0) {
                    const auto& hf = tr.fwd.h[tr.m - 1];
                    const auto& hb = tr.bwd.h[tr.m - 1];  // state after original position 0
                    std::copy(hf.begin(), hf.end(), tr.feat.begin());
                    std::copy(hb.begin(), hb.end(),
                              tr.feat.begin() + static_cast<std::ptrdiff_t>(H));
                }
                break;
            }
            // Additive attention over per-position states; padding gets no
            // score at all because only the m valid positions enter.
            if (tr.m == 0) break;
            const std::vector<T>& wa = net.params.tensor("attn_w");
            const std::vector<T>& ba = net.params.tensor("attn_b");
            const std::vector<T>& va = net.params.tensor("attn_v");
            std::vector<T> scores(tr.m);
            tr.attn_u.resize(tr.m);
            std::vector<T> st(2 * H);
            for (std::size_t t = 0; t < tr.m; ++t) {
                const auto& hf = tr.fwd.h[t];
                const auto& hb = tr.bwd.h[tr.m - 1 - t];
                std::copy(hf.begin(), hf.end(), st.begin());
                std::copy(hb.begin(), hb.end(), st.begin() + static_cast<std::ptrdiff_t>(H));
                auto& u = tr.attn_u[t];
                u.resize(H);
                for (std::size_t a = 0; a < H; ++a) {
                    u[a] = std::tanh(ba[a] + vdot(wa.data() + a * 2 * H, st.data(), 2 * H));
                }
                scores[t] = vdot(va.data(), u.data(), H);
            }
            T mx = scores[0];
            for (std::size_t t = 1; t < tr.m; ++t) mx = std::max(mx, scores[t]);
            T z = T(0);
            tr.alpha.resize(tr.m);
            for (std::size_t t = 0; t < tr.m; ++t) {
                tr.alpha[t] = std::exp(scores[t] - mx);
                z += tr.alpha[t];
            }
            for (std::size_t t = 0; t < tr.m; ++t) tr.alpha[t] /= z;
            for (std::size_t t = 0; t < tr.m; ++t) {
                const auto& hf = tr.fwd.h[t];
                const auto& hb = tr.bwd.h[tr.m - 1 - t];
                for (std::size_t r = 0; r < H; ++r) {
                    tr.feat[r] += tr.alpha[t] * hf[r];
                    tr.feat[H + r] += tr.alpha[t] * hb[r];
                }
            }
            break;
        }
    }

    const std::size_t K = net.classes.size();
    const std::vector<T>& dw = net.params.tensor("dense_w");
    const std::vector<T>& db = net.params.tensor("dense_b");
    tr.logits.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        tr.logits[k] = db[k] + vdot(dw.data() + k * F, tr.feat.data(), F);
    }
    T mx = tr.logits[0];
    for (std::size_t k = 1; k < K; ++k) mx = std::max(mx, tr.logits[k]);
    T z = T(0);
    tr.probs.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        tr.probs[k] = std::exp(tr.logits[k] - mx);
        z += tr.probs[k];
    }
    for (std::size_t k = 0; k < K; ++k) tr.probs[k] /= z;
}

template <typename T>
double sample_loss(const SampleTrace<T>& tr, std::size_t target) {
    T mx = tr.logits[0];
    for (std::size_t k = 1; k < tr.logits.size(); ++k) mx = std::max(mx, tr.logits[k]);
    T z = T(0);
    for (const T l : tr.logits) z += std::exp(l - mx);
    return static_cast<double>(std::log(z) + mx - tr.logits[target]);
}

template <typename T>
void backward_sample(const Net<T>& net, const SampleTrace<T>& tr, std::size_t target, T scale,
                     TensorStore<T>& g) {
    const NeuralConfig& cfg = net.cfg;
    const std::size_t d = cfg.embed_dim;
    const std::size_t H = cfg.hidden;
    const std::size_t K = net.classes.size();
    const std::size_t F = net.feature_dim();
    const std::vector<T>& emb = net.params.tensor("embedding");
    std::vector<T>* gemb = cfg.trainable_embeddings ? &g.tensor("embedding") : nullptr;

    std::vector<T> dlogits(K);
    for (std::size_t k = 0; k < K; ++k) {
        dlogits[k] = (tr.probs[k] - (k == target ? T(1) : T(0))) * scale;
    }
    const std::vector<T>& dw = net.params.tensor("dense_w");
    std::vector<T>& gdw = g.tensor("dense_w");
    std::vector<T>& gdb = g.tensor("dense_b");
    std::vector<T> dfeat(F, T(0));
    for (std::size_t k = 0; k < K; ++k) {
        gdb[k] += dlogits[k];
        T* grow = gdw.data() + k * F;
        const T* wrow = dw.data() + k * F;
        for (std::size_t j = 0; j < F; ++j) {
            grow[j] += dlogits[k] * tr.feat[j];
            dfeat[j] += wrow[j] * dlogits[k];
        }
    }

    switch (cfg.arch) {
        case Arch::cnn1d: {
            for (std::size_t wi = 0; wi < cfg.kernel_widths.size(); ++wi) {
                const std::size_t w = cfg.kernel_widths[wi];
                const std::size_t n_pos = tr.conv_pos[wi];
                if (n_pos == 0) continue;
                const std::string suffix = std::to_string(w);
                const std::vector<T>& cw = net.params.tensor("conv_w_" + suffix);
                std::vector<T>& gcw = g.tensor("conv_w_" + suffix);
                std::vector<T>& gcb = g.tensor("conv_b_" + suffix);
                for (std::size_t f = 0; f < cfg.filters; ++f) {
                    const std::size_t t0 = tr.pool_arg[wi][f];
                    const T a = tr.conv_act[wi][f * n_pos + t0];
                    const T dval = dfeat[wi * cfg.filters + f] * (T(1) - a * a);
                    gcb[f] += dval;
                    const T* wf = cw.data() + f * w * d;
                    T* gwf = gcw.data() + f * w * d;
                    for (std::size_t k = 0; k < w; ++k) {
                        const std::size_t row = tr.idx[t0 + k];
                        const T* x = emb.data() + row * d;
                        for (std::size_t j = 0; j < d; ++j) {
                            gwf[k * d + j] += dval * x[j];
                        }
                        if (gemb != nullptr && row != 0) {
                            T* grow = gemb->data() + row * d;
                            for (std::size_t j = 0; j < d; ++j) {
                                grow[j] += dval * wf[k * d + j];
                            }
                        }
                    }
                }
            }
            break;
        }
        case Arch::lstm: {
            const std::vector<std::vector<T>>* no_inj = nullptr;
            std::vector<T> dh_last(dfeat.begin(), dfeat.begin() + static_cast<std::ptrdiff_t>(H));
            lstm_bptt(net.params.tensor("lstm_wx"), net.params.tensor("lstm_wh"), emb, d, H,
                      tr.fwd, dh_last, no_inj, g.tensor("lstm_wx"), g.tensor("lstm_wh"),
                      g.tensor("lstm_b"), gemb);
            break;
        }
        case Arch::bilstm: {
            const std::vector<std::vector<T>>* no_inj = nullptr;
            std::vector<T> dhf(dfeat.begin(), dfeat.begin() + static_cast<std::ptrdiff_t>(H));
            std::vector<T> dhb(dfeat.begin() + static_cast<std::ptrdiff_t>(H), dfeat.end());
            lstm_bptt(net.params.tensor("lstm_wx"), net.params.tensor("lstm_wh"), emb, d, H,
                      tr.fwd, dhf, no_inj, g.tensor("lstm_wx"), g.tensor("lstm_wh"),
                      g.tensor("lstm_b"), gemb);
            lstm_bptt(net.params.tensor("lstm_wx_bwd"), net.params.tensor("lstm_wh_bwd"), emb, d,
                      H, tr.bwd, dhb, no_inj, g.tensor("lstm_wx_bwd"), g.tensor("lstm_wh_bwd"),
                      g.tensor("lstm_b_bwd"), gemb);
            break;
        }
        case Arch::bilstm_attention: {
            const std::size_t m = tr.m;
            if (m == 0) break;
            const std::vector<T>& wa = net.params.tensor("attn_w");
            const std::vector<T>& va = net.params.tensor("attn_v");
            std::vector<T>& gwa = g.tensor("attn_w");
            std::vector<T>& gba = g.tensor("attn_b");
            std::vector<T>& gva = g.tensor("attn_v");
            // dfeat is the context gradient; alpha's softmax couples every
            // position's score to every other.
            std::vector<T> dalpha(m, T(0));
            std::vector<T> st(2 * H);
            for (std::size_t t = 0; t < m; ++t) {
                const auto& hf = tr.fwd.h[t];
                const auto& hb = tr.bwd.h[m - 1 - t];
                T acc = T(0);
                for (std::size_t r = 0; r < H; ++r) {
                    acc += dfeat[r] * hf[r] + dfeat[H + r] * hb[r];
                }
                dalpha[t] = acc;
            }
            T wsum = T(0);
            for (std::size_t t = 0; t < m; ++t) wsum += tr.alpha[t] * dalpha[t];
            std::vector<std::vector<T>> inj_f(m, std::vector<T>(H, T(0)));
            std::vector<std::vector<T>> inj_b(m, std::vector<T>(H, T(0)));
            std::vector<T> dz(H), ds(2 * H);
            for (std::size_t t = 0; t < m; ++t) {
                const T de = tr.alpha[t] * (dalpha[t] - wsum);
                const auto& u = tr.attn_u[t];
                for (std::size_t a = 0; a < H; ++a) {
                    gva[a] += de * u[a];
                    dz[a] = de * va[a] * (T(1) - u[a] * u[a]);
                    gba[a] += dz[a];
                }
                const auto& hf = tr.fwd.h[t];
                const auto& hb = tr.bwd.h[m - 1 - t];
                std::copy(hf.begin(), hf.end(), st.begin());
                std::copy(hb.begin(), hb.end(), st.begin() + static_cast<std::ptrdiff_t>(H));
                std::fill(ds.begin(), ds.end(), T(0));
                for (std::size_t a = 0; a < H; ++a) {
                    T* gwrow = gwa.data() + a * 2 * H;
                    const T* wrow = wa.data() + a * 2 * H;
                    for (std::size_t j = 0; j < 2 * H; ++j) {
                        gwrow[j] += dz[a] * st[j];
                        ds[j] += wrow[j] * dz[a];
                    }
                }
                for (std::size_t r = 0; r < H; ++r) {
                    inj_f[t][r] = ds[r] + tr.alpha[t] * dfeat[r];
                    inj_b[m - 1 - t][r] = ds[H + r] + tr.alpha[t] * dfeat[H + r];
                }
            }
            const std::vector<T> no_last;
            lstm_bptt(net.params.tensor("lstm_wx"), net.params.tensor("lstm_wh"), emb, d, H,
                      tr.fwd, no_last, &inj_f, g.tensor("lstm_wx"), g.tensor("lstm_wh"),
                      g.tensor("lstm_b"), gemb);
            lstm_bptt(net.params.tensor("lstm_wx_bwd"), net.params.tensor("lstm_wh_bwd"), emb, d,
                      H, tr.bwd, no_last, &inj_b, g.tensor("lstm_wx_bwd"),
                      g.tensor("lstm_wh_bwd"), g.tensor("lstm_b_bwd"), gemb);
            break;
        }
    }
}

template <typename T>
std::size_t class_index(const Net<T>& net, const std::string& label) {
    const auto it = std::find(net.classes.begin(), net.classes.end(), label);
    if (it == net.classes.end()) throw DataError("label not among the model classes: " + label);
    return static_cast<std::size_t>(it - net.classes.begin());
}

template <typename T>
double mean_loss(const Net<T>& net, const std::vector<SequenceSample>& samples,
                 const std::vector<std::size_t>& targets) {
    double total = 0.0;
    SampleTrace<T> tr;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        forward_sample(net, samples[i], tr);
        total += sample_loss(tr, targets[i]);
    }
    return total / static_cast<double>(samples.size());
}

template <typename T>
void adam_step(TensorStore<T>& params, const TensorStore<T>& grads, TensorStore<T>& m1,
               TensorStore<T>& m2, std::uint64_t step, const NeuralConfig& cfg) {
    const T b1 = T(0.9);
    const T b2 = T(0.999);
    const T eps = T(1e-8);
    const T lr = static_cast<T>(cfg.learning_rate);
    const T c1 = T(1) - static_cast<T>(std::pow(0.9, static_cast<double>(step)));
    const T c2 = T(1) - static_cast<T>(std::pow(0.999, static_cast<double>(step)));
    for (std::size_t ti = 0; ti < params.data.size(); ++ti) {
        std::size_t start = 0;
        if (params.names[ti] == "embedding") {
            if (!cfg.trainable_embeddings) continue;
            start = params.shapes[ti][1];  // row 0 stays frozen
        }
        auto& p = params.data[ti];
        const auto& g = grads.data[ti];
        auto& ma = m1.data[ti];
        auto& va = m2.data[ti];
        for (std::size_t k = start; k < p.size(); ++k) {
            ma[k] = b1 * ma[k] + (T(1) - b1) * g[k];
            va[k] = b2 * va[k] + (T(1) - b2) * g[k] * g[k];
            const T mhat = ma[k] / c1;
            const T vhat = va[k] / c2;
            p[k] -= lr * mhat / (std::sqrt(vhat) + eps);
        }
    }
}

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u32(out, bits);
}

void put_str(std::string& out, const std::string& s) {
    put_u64(out, s.size());
    out += s;
}

struct ByteReader {
    const std::string& buf;
    std::size_t pos = 0;

    explicit ByteReader(const std::string& b) : buf(b) {}

    void need(std::size_t n) {
        if (n > buf.size() - pos) throw DataError("model file truncated");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string str() {
        const std::uint64_t n = u64();
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
};

template <typename T>
Net<T> read_net_body(ByteReader& r, NeuralConfig cfg) {
    Net<T> net;
    net.cfg = std::move(cfg);
    const std::uint64_t n_classes = r.u64();
    for (std::uint64_t i = 0; i < n_classes; ++i) net.classes.push_back(r.str());
    const std::uint64_t n_words = r.u64();
    for (std::uint64_t i = 0; i < n_words; ++i) {
        net.word_index.word_to_index[r.str()] = static_cast<std::size_t>(i + 1);
    }
    if (net.word_index.size() != n_words) throw DataError("duplicate words in model file");
    const std::uint64_t n_tensors = r.u64();
    for (std::uint64_t i = 0; i < n_tensors; ++i) {
        const std::string name = r.str();
        const std::uint64_t rank = r.u64();
        std::vector<std::size_t> shape;
        std::size_t count = 1;
        for (std::uint64_t k = 0; k < rank; ++k) {
            const std::uint64_t dim = r.u64();
            shape.push_back(static_cast<std::size_t>(dim));
            count *= static_cast<std::size_t>(dim);
        }
        const std::size_t id = net.params.add(name, shape);
        auto& data = net.params.data[id];
        for (std::size_t k = 0; k < count; ++k) {
            if constexpr (std::is_same_v<T, float>) {
                data[k] = r.f32();
            } else {
                data[k] = static_cast<T>(r.f64());
            }
        }
    }
    if (!net.params.has("embedding") || !net.params.has("dense_w") || !net.params.has("dense_b")) {
        throw DataError("model file is missing required tensors");
    }
    const auto& eshape = net.params.shapes[net.params.index_of("embedding")];
    if (eshape.size() != 2 || eshape[0] != n_words + 1 || eshape[1] != net.cfg.embed_dim) {
        throw DataError("embedding tensor shape does not match the stored word index");
    }
    const auto& dshape = net.params.shapes[net.params.index_of("dense_w")];
    if (dshape.size() != 2 || dshape[0] != net.classes.size() ||
        dshape[1] != net.feature_dim()) {
        throw DataError("dense tensor shape does not match the stored configuration");
    }
    return net;
}

}  // namespace

std::string to_string(Arch arch) {
    switch (arch) {
        case Arch::cnn1d:
            return "cnn1d";
        case Arch::lstm:
            return "lstm";
        case Arch::bilstm:
            return "bilstm";
        case Arch::bilstm_attention:
            return "bilstm_attention";
    }
    throw InternalError("unhandled architecture");
}

Arch arch_from_string(const std::string& name) {
    if (name == "cnn1d") return Arch::cnn1d;
    if (name == "lstm") return Arch::lstm;
    if (name == "bilstm") return Arch::bilstm;
    if (name == "bilstm_attention") return Arch::bilstm_attention;
    throw UsageError("unknown architecture: " + name);
}

std::string to_string(Precision precision) {
    return precision == Precision::f32 ? "f32" : "f64";
}

Precision precision_from_string(const std::string& name) {
    if (name == "f32") return Precision::f32;
    if (name == "f64") return Precision::f64;
    throw UsageError("unknown precision: " + name);
}

void NeuralConfig::validate() const {
    if (hidden == 0) throw UsageError("hidden size must be positive");
    if (filters == 0) throw UsageError("filter count must be positive");
    if (kernel_widths.empty()) throw UsageError("at least one kernel width is required");
    for (const std::size_t w : kernel_widths) {
        if (w == 0) throw UsageError("kernel widths must be positive");
        if (w > max_len) throw UsageError("kernel width exceeds the sequence length");
    }
    if (epochs == 0) throw UsageError("epoch count must be positive");
    if (batch == 0) throw UsageError("batch size must be positive");
    if (!(learning_rate > 0.0)) throw UsageError("learning rate must be positive");
    if (max_len == 0) throw UsageError("sequence length must be positive");
    if (embed_dim == 0) throw UsageError("embedding dimension must be positive");
}

template <typename T>
std::size_t TensorStore<T>::add(const std::string& name, const std::vector<std::size_t>& shape) {
    std::size_t count = 1;
    for (const std::size_t dim : shape) count *= dim;
    names.push_back(name);
    shapes.push_back(shape);
    data.emplace_back(count, T(0));
    return names.size() - 1;
}

template <typename T>
std::size_t TensorStore<T>::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw InternalError("no tensor named " + name);
}

template <typename T>
bool TensorStore<T>::has(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

template <typename T>
std::size_t Net<T>::feature_dim() const {
    switch (cfg.arch) {
        case Arch::cnn1d:
            return cfg.filters * cfg.kernel_widths.size();
        case Arch::lstm:
            return cfg.hidden;
        case Arch::bilstm:
        case Arch::bilstm_attention:
            return 2 * cfg.hidden;
    }
    throw InternalError("unhandled architecture");
}

WordIndex build_word_index(const std::vector<std::vector<std::string>>& docs) {
    WordIndex index;
    for (const auto& doc : docs) {
        for (const auto& token : doc) index.word_to_index[token] = 0;
    }
    if (index.word_to_index.empty()) throw DataError("no tokens to index");
    std::size_t next = 1;
    for (auto& [word, idx] : index.word_to_index) idx = next++;
    return index;
}

SequenceSample to_sequence(const std::vector<std::string>& tokens, const WordIndex& index,
                           std::size_t max_len) {
    if (max_len == 0) throw UsageError("sequence length must be positive");
    SequenceSample s;
    s.indices.assign(max_len, 0);
    for (const auto& token : tokens) {
        const auto it = index.word_to_index.find(token);
        if (it == index.word_to_index.end()) continue;  // out-of-index tokens are dropped
        if (s.true_length == max_len) break;            // keep the first max_len mapped tokens
        s.indices[s.true_length++] = it->second;
    }
    return s;
}

PretrainedVectors load_pretrained_vectors(const std::string& path, std::size_t dim) {
    if (dim == 0) throw UsageError("embedding dimension must be positive");
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open vector file: " + path);
    PretrainedVectors out;
    out.dim = dim;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> parts;
        std::string part;
        while (ss >> part) parts.push_back(part);
        if (parts.empty()) continue;
        if (first_content) {
            first_content = false;
            // A "count dim" header has exactly two integer fields.
            if (parts.size() == 2 && dim != 1 && is_unsigned_integer(parts[0]) &&
                is_unsigned_integer(parts[1])) {
                continue;
            }
        }
        std::vector<double> values;
        values.reserve(parts.size() - 1);
        bool ok = true;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            double v = 0.0;
            if (!parse_double_strict(parts[i], v)) {
                ok = false;
                break;
            }
            values.push_back(v);
        }
        if (!ok) {
            ++out.skipped_lines;
            continue;
        }
        if (values.size() != dim) {
            throw DataError("vector file line " + std::to_string(line_no) + ": expected " +
                            std::to_string(dim) + " values, got " +
                            std::to_string(values.size()));
        }
        out.vectors[parts[0]] = std::move(values);
    }
    return out;
}

EmbeddingMatrix build_embedding_matrix(const WordIndex& index, const PretrainedVectors& vectors,
                                       std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw UsageError("embedding dimension must be positive");
    if (!vectors.vectors.empty() && vectors.dim != dim) {
        throw DataError("pretrained vector dimension " + std::to_string(vectors.dim) +
                        " does not match the requested dimension " + std::to_string(dim));
    }
    words_in_index_order(index);  // validates the index layout
    EmbeddingMatrix emb;
    emb.rows = index.size() + 1;
    emb.cols = dim;
    emb.data.assign(emb.rows * dim, 0.0);
    for (const auto& [word, idx] : index.word_to_index) {
        double* row = emb.data.data() + idx * dim;
        const auto it = vectors.vectors.find(word);
        if (it != vectors.vectors.end()) {
            std::copy(it->second.begin(), it->second.end(), row);
        } else {
            // Keyed by the word itself so a word's row is independent of
            // which other words happen to share the vocabulary.
            Rng rng(mix_seed(seed, fnv1a64(word)));
            for (std::size_t j = 0; j < dim; ++j) row[j] = rng.uniform(-0.25, 0.25);
            ++emb.oov_count;
        }
    }
    return emb;
}

std::vector<std::vector<double>> one_hot_labels(const std::vector<std::string>& labels,
                                                const std::vector<std::string>& classes) {
    std::vector<std::vector<double>> rows(labels.size(),
                                          std::vector<double>(classes.size(), 0.0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::find(classes.begin(), classes.end(), labels[i]);
        if (it == classes.end()) throw DataError("label not in class list: " + labels[i]);
        rows[i][static_cast<std::size_t>(it - classes.begin())] = 1.0;
    }
    return rows;
}

template <typename T>
Net<T> neural_init(const NeuralConfig& cfg, const WordIndex& index,
                   const EmbeddingMatrix& embedding, const std::vector<std::string>& classes) {
    cfg.validate();
    if constexpr (std::is_same_v<T, float>) {
        if (cfg.precision != Precision::f32) {
            throw UsageError("configured precision does not match the f32 instantiation");
        }
    } else {
        if (cfg.precision != Precision::f64) {
            throw UsageError("configured precision does not match the f64 instantiation");
        }
    }
    std::vector<std::string> cls = classes;
    std::sort(cls.begin(), cls.end());
    if (std::adjacent_find(cls.begin(), cls.end()) != cls.end()) {
        throw UsageError("duplicate class labels");
    }
    if (cls.size() < 2) throw DataError("training requires at least two classes");
    words_in_index_order(index);
    if (embedding.rows != index.size() + 1 || embedding.cols != cfg.embed_dim) {
        throw UsageError("embedding matrix shape does not match the word index and dimension");
    }

    Net<T> net;
    net.cfg = cfg;
    net.classes = std::move(cls);
    net.word_index = index;
    TensorStore<T>& P = net.params;
    const std::size_t eid = P.add("embedding", {embedding.rows, embedding.cols});
    for (std::size_t k = 0; k < embedding.data.size(); ++k) {
        P.data[eid][k] = static_cast<T>(embedding.data[k]);
    }

    Rng rng(mix_seed(cfg.seed, fnv1a64("init")));
    const auto glorot = [&](const std::string& name, const std::vector<std::size_t>& shape,
                            std::size_t fan_in, std::size_t fan_out) {
        const std::size_t id = P.add(name, shape);
        const double lim = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        for (auto& v : P.data[id]) v = static_cast<T>(rng.uniform(-lim, lim));
    };
    const std::size_t H = cfg.hidden;
    const std::size_t d = cfg.embed_dim;
    const auto add_lstm = [&](const std::string& suffix) {
        glorot("lstm_wx" + suffix, {4 * H, d}, d, H);
        glorot("lstm_wh" + suffix, {4 * H, H}, H, H);
        const std::size_t bid = P.add("lstm_b" + suffix, {4 * H});
        // Forget gates open at the start so early gradients can flow.
        for (std::size_t r = H; r < 2 * H; ++r) P.data[bid][r] = T(1);
    };
    if (cfg.arch == Arch::cnn1d) {
        for (const std::size_t w : cfg.kernel_widths) {
            glorot("conv_w_" + std::to_string(w), {cfg.filters, w, d}, w * d, cfg.filters);
            P.add("conv_b_" + std::to_string(w), {cfg.filters});
        }
    } else {
        add_lstm("");
        if (cfg.arch != Arch::lstm) add_lstm("_bwd");
        if (cfg.arch == Arch::bilstm_attention) {
            glorot("attn_w", {H, 2 * H}, 2 * H, H);
            P.add("attn_b", {H});
            glorot("attn_v", {H}, H, 1);
        }
    }
    const std::size_t F = net.feature_dim();
    glorot("dense_w", {net.classes.size(), F}, F, net.classes.size());
    P.add("dense_b", {net.classes.size()});
    return net;
}

template <typename T>
std::vector<std::vector<T>> neural_forward(const Net<T>& net,
                                           const std::vector<SequenceSample>& samples) {
    std::vector<std::vector<T>> out;
    out.reserve(samples.size());
    SampleTrace<T> tr;
    for (const auto& s : samples) {
        forward_sample(net, s, tr);
        out.push_back(tr.probs);
    }
    return out;
}

template <typename T>
Prediction neural_predict(const Net<T>& net, const SequenceSample& sample) {
    SampleTrace<T> tr;
    forward_sample(net, sample, tr);
    Prediction p;
    p.classes = net.classes;
    p.scores.resize(tr.probs.size());
    std::size_t best = 0;
    for (std::size_t k = 0; k < tr.probs.size(); ++k) {
        p.scores[k] = static_cast<double>(tr.probs[k]);
        if (p.scores[k] > p.scores[best]) best = k;
    }
    p.label = net.classes[best];
    return p;
}

template <typename T>
std::vector<T> attention_weights(const Net<T>& net, const SequenceSample& sample) {
    if (net.cfg.arch != Arch::bilstm_attention) {
        throw UsageError("attention weights require the attention architecture");
    }
    SampleTrace<T> tr;
    forward_sample(net, sample, tr);
    std::vector<T> out(sample.indices.size(), T(0));
    for (std::size_t t = 0; t < tr.alpha.size(); ++t) out[t] = tr.alpha[t];
    return out;
}

template <typename T>
LossAndGrads<T> neural_loss_and_grads(const Net<T>& net,
                                      const std::vector<SequenceSample>& samples,
                                      const std::vector<std::string>& labels) {
    if (samples.size() != labels.size()) throw UsageError("sample and label counts differ");
    if (samples.empty()) throw UsageError("cannot take gradients over an empty batch");
    LossAndGrads<T> out;
    out.grads = zero_like(net.params);
    const T scale = T(1) / static_cast<T>(samples.size());
    double total = 0.0;
    SampleTrace<T> tr;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t target = class_index(net, labels[i]);
        forward_sample(net, samples[i], tr);
        total += sample_loss(tr, target);
        backward_sample(net, tr, target, scale, out.grads);
    }
    out.loss = total / static_cast<double>(samples.size());
    return out;
}

template <typename T>
std::vector<double> neural_train(Net<T>& net, const std::vector<SequenceSample>& samples,
                                 const std::vector<std::string>& labels) {
    if (samples.size() != labels.size()) throw UsageError("sample and label counts differ");
    if (samples.empty()) throw UsageError("no training samples");
    for (const auto& label : labels) class_index(net, label);

    TensorStore<T> m1 = zero_like(net.params);
    TensorStore<T> m2 = zero_like(net.params);
    std::uint64_t step = 0;
    Rng shuffle_rng(mix_seed(net.cfg.seed, fnv1a64("train")));
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> epoch_losses;
    epoch_losses.reserve(net.cfg.epochs);
    for (std::size_t epoch = 0; epoch < net.cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double total = 0.0;
        for (std::size_t start = 0; start < order.size(); start += net.cfg.batch) {
            const std::size_t stop = std::min(order.size(), start + net.cfg.batch);
            std::vector<SequenceSample> bx;
            std::vector<std::string> by;
            bx.reserve(stop - start);
            by.reserve(stop - start);
            for (std::size_t k = start; k < stop; ++k) {
                bx.push_back(samples[order[k]]);
                by.push_back(labels[order[k]]);
            }
            const LossAndGrads<T> g = neural_loss_and_grads(net, bx, by);
            total += g.loss * static_cast<double>(stop - start);
            ++step;
            adam_step(net.params, g.grads, m1, m2, step, net.cfg);
        }
        epoch_losses.push_back(total / static_cast<double>(samples.size()));
    }
    return epoch_losses;
}

double gradient_check(const NeuralConfig& cfg, const WordIndex& index,
                      const EmbeddingMatrix& embedding, const std::vector<std::string>& classes,
                      const std::vector<SequenceSample>& samples,
                      const std::vector<std::string>& labels) {
    if (cfg.precision != Precision::f64) {
        throw UsageError(
            "gradient checking requires f64 precision; f32 rounding drowns the finite "
            "differences");
    }
    if (samples.empty() || samples.size() != labels.size()) {
        throw UsageError("gradient checking needs a non-empty batch with matching labels");
    }
    Net<double> net = neural_init<double>(cfg, index, embedding, classes);
    std::vector<std::size_t> targets;
    targets.reserve(labels.size());
    for (const auto& label : labels) targets.push_back(class_index(net, label));
    const LossAndGrads<double> analytic = neural_loss_and_grads(net, samples, labels);

    const double eps = 1e-5;
    double worst = 0.0;
    for (std::size_t ti = 0; ti < net.params.data.size(); ++ti) {
        const bool is_embedding = net.params.names[ti] == "embedding";
        if (is_embedding && !cfg.trainable_embeddings) continue;
        const std::size_t start = is_embedding ? net.params.shapes[ti][1] : 0;
        auto& tensor = net.params.data[ti];
        for (std::size_t k = start; k < tensor.size(); ++k) {
            const double orig = tensor[k];
            tensor[k] = orig + eps;
            const double lp = mean_loss(net, samples, targets);
            tensor[k] = orig - eps;
            const double lm = mean_loss(net, samples, targets);
            tensor[k] = orig;
            const double numeric = (lp - lm) / (2.0 * eps);
            const double ana = analytic.grads.data[ti][k];
            const double rel = std::abs(ana - numeric) /
                               std::max({std::abs(ana), std::abs(numeric), 1e-12});
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

template <typename T>
void save_neural(const Net<T>& net, const std::string& path) {
    const std::vector<std::string> words = words_in_index_order(net.word_index);
    std::string out;
    out.append(kMagic, sizeof kMagic);
    put_u32(out, kNeuralSchemaVersion);
    put_u8(out, static_cast<std::uint8_t>(net.cfg.arch));
    put_u8(out, std::is_same_v<T, float> ? 0 : 1);
    put_u8(out, net.cfg.trainable_embeddings ? 1 : 0);
    put_u8(out, 0);
    put_u64(out, net.cfg.hidden);
    put_u64(out, net.cfg.filters);
    put_u64(out, net.cfg.kernel_widths.size());
    for (const std::size_t w : net.cfg.kernel_widths) put_u64(out, w);
    put_u64(out, net.cfg.epochs);
    put_u64(out, net.cfg.batch);
    put_u64(out, net.cfg.seed);
    put_f64(out, net.cfg.learning_rate);
    put_u64(out, net.cfg.max_len);
    put_u64(out, net.cfg.embed_dim);
    put_u64(out, net.classes.size());
    for (const auto& c : net.classes) put_str(out, c);
    put_u64(out, words.size());
    for (const auto& w : words) put_str(out, w);
    put_u64(out, net.params.names.size());
    for (std::size_t ti = 0; ti < net.params.names.size(); ++ti) {
        put_str(out, net.params.names[ti]);
        put_u64(out, net.params.shapes[ti].size());
        for (const std::size_t dim : net.params.shapes[ti]) put_u64(out, dim);
        for (const T v : net.params.data[ti]) {
            if constexpr (std::is_same_v<T, float>) {
                put_f32(out, v);
            } else {
                put_f64(out, v);
            }
        }
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ResourceError("cannot open model file for writing: " + path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw ResourceError("failed writing model file: " + path);
}

AnyNet load_neural(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ResourceError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    const std::string bytes = buf.str();

    ByteReader r(bytes);
    r.need(sizeof kMagic);
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw DataError("not a neural model file: bad magic");
    }
    r.pos += sizeof kMagic;
    const std::uint32_t version = r.u32();
    if (version != kNeuralSchemaVersion) {
        throw DataError("unsupported model schema version " + std::to_string(version));
    }
    const std::uint8_t arch_byte = r.u8();
    if (arch_byte > 3) throw DataError("unknown architecture byte in model file");
    const std::uint8_t precision_byte = r.u8();
    if (precision_byte > 1) throw DataError("unknown precision byte in model file");
    const std::uint8_t trainable_byte = r.u8();
    if (trainable_byte > 1) throw DataError("unknown trainability byte in model file");
    r.u8();  // reserved

    NeuralConfig cfg;
    cfg.arch = static_cast<Arch>(arch_byte);
    cfg.precision = precision_byte == 0 ? Precision::f32 : Precision::f64;
    cfg.trainable_embeddings = trainable_byte == 1;
    cfg.hidden = static_cast<std::size_t>(r.u64());
    cfg.filters = static_cast<std::size_t>(r.u64());
    const std::uint64_t n_widths = r.u64();
    cfg.kernel_widths.clear();
    for (std::uint64_t i = 0; i < n_widths; ++i) {
        cfg.kernel_widths.push_back(static_cast<std::size_t>(r.u64()));
    }
    cfg.epochs = static_cast<std::size_t>(r.u64());
    cfg.batch = static_cast<std::size_t>(r.u64());
    cfg.seed = r.u64();
    cfg.learning_rate = r.f64();
    cfg.max_len = static_cast<std::size_t>(r.u64());
    cfg.embed_dim = static_cast<std::size_t>(r.u64());
    cfg.validate();

    AnyNet net = cfg.precision == Precision::f32 ? AnyNet(read_net_body<float>(r, cfg))
                                                 : AnyNet(read_net_body<double>(r, cfg));
    if (r.pos != bytes.size()) throw DataError("trailing bytes after model payload");
    return net;
}

template struct TensorStore<float>;
template struct TensorStore<double>;
template struct Net<float>;
template struct Net<double>;
template Net<float> neural_init<float>(const NeuralConfig&, const WordIndex&,
                                       const EmbeddingMatrix&,
                                       const std::vector<std::string>&);
template Net<double> neural_init<double>(const NeuralConfig&, const WordIndex&,
                                         const EmbeddingMatrix&,
                                         const std::vector<std::string>&);
template std::vector<std::vector<float>> neural_forward<float>(
    const Net<float>&, const std::vector<SequenceSample>&);
template std::vector<std::vector<double>> neural_forward<double>(
    const Net<double>&, const std::vector<SequenceSample>&);
template Prediction neural_predict<float>(const Net<float>&, const SequenceSample&);
template Prediction neural_predict<double>(const Net<double>&, const SequenceSample&);
template std::vector<float> attention_weights<float>(const Net<float>&, const SequenceSample&);
template std::vector<double> attention_weights<double>(const Net<double>&,
                                                       const SequenceSample&);
template LossAndGrads<float> neural_loss_and_grads<float>(const Net<float>&,
                                                          const std::vector<SequenceSample>&,
                                                          const std::vector<std::string>&);
template LossAndGrads<double> neural_loss_and_grads<double>(const Net<double>&,
                                                            const std::vector<SequenceSample>&,
                                                            const std::vector<std::string>&);
template std::vector<double> neural_train<float>(Net<float>&,
                                                 const std::vector<SequenceSample>&,
                                                 const std::vector<std::string>&);
template std::vector<double> neural_train<double>(Net<double>&,
                                                  const std::vector<SequenceSample>&,
                                                  const std::vector<std::string>&);
template void save_neural<float>(const Net<float>&, const std::string&);
template void save_neural<double>(const Net<double>&, const std::string&);

}  // namespace episent
