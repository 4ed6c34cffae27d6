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

#include "episent/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "episent/errors.hpp"
#include "episent/preprocess.hpp"
#include "episent/rng.hpp"

namespace episent {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string get_required_string(const json& j, const char* key,
                                const std::filesystem::path& path, std::size_t line) {
    if (!j.contains(key)) fail_line(path, line, std::string("missing required field \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_string()) fail_line(path, line, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& j, const char* key,
                                               const std::filesystem::path& path,
                                               std::size_t line) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_string()) fail_line(path, line, std::string("field \"") + key + "\" must be a string");
    std::string s = v.get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
}

// Shared by both loaders once the raw string fields are in hand. Empty
// optional strings mean "absent".
LabeledSample make_record(const std::string& id, const std::string& text, const std::string& lang,
                          const std::optional<std::string>& source,
                          const std::optional<std::string>& timestamp,
                          const std::optional<std::string>& translation,
                          const std::optional<std::string>& sentiment,
                          const std::optional<std::string>& emotion,
                          const std::optional<std::string>& emotion_status,
                          const std::filesystem::path& path, std::size_t line) {
    LabeledSample rec;
    if (id.empty()) fail_line(path, line, "id must be nonempty");
    if (text.empty()) fail_line(path, line, "text must be nonempty");
    rec.sample.id = id;
    rec.sample.text = text;
    try {
        rec.sample.lang = lang_from_string(lang);
        rec.sample.source = source ? source_from_string(*source) : Source::synthetic;
        if (sentiment) rec.sentiment = sentiment_from_string(*sentiment);
        if (emotion) rec.emotion = emotion_from_string(*emotion);
        if (emotion_status) rec.emotion_status = emotion_status_from_string(*emotion_status);
    } catch (const DataError& e) {
        fail_line(path, line, e.what());
    }
    rec.sample.timestamp = timestamp;
    rec.sample.translation = translation;
    if (rec.emotion) {
        if (!rec.sentiment || *rec.sentiment == Sentiment::neutral) {
            fail_line(path, line,
                      "emotion label requires a non-neutral sentiment (id \"" + id + "\")");
        }
        if (!rec.emotion_status || *rec.emotion_status == EmotionStatus::unresolved) {
            fail_line(path, line,
                      "emotion label requires emotion_status auto or manual (id \"" + id + "\")");
        }
    } else if (rec.emotion_status && *rec.emotion_status != EmotionStatus::unresolved) {
        fail_line(path, line,
                  "emotion_status " + std::string(to_string(*rec.emotion_status)) +
                      " requires an emotion label (id \"" + id + "\")");
    }
    return rec;
}

Dataset load_jsonl(const std::filesystem::path& path, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open corpus file: " + path.string());
    Dataset ds;
    ds.provenance = path.string();
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail_line(path, lineno, std::string("JSON parse error: ") + e.what());
        }
        if (!j.is_object()) fail_line(path, lineno, "record must be a JSON object");
        LabeledSample rec = make_record(
            get_required_string(j, "id", path, lineno),
            get_required_string(j, "text", path, lineno),
            get_required_string(j, "lang", path, lineno),
            get_optional_string(j, "source", path, lineno),
            get_optional_string(j, "timestamp", path, lineno),
            get_optional_string(j, "translation", path, lineno),
            get_optional_string(j, "sentiment", path, lineno),
            get_optional_string(j, "emotion", path, lineno),
            get_optional_string(j, "emotion_status", path, lineno), path, lineno);
        if (!seen_ids.insert(rec.sample.id).second) {
            fail_line(path, lineno, "duplicate id \"" + rec.sample.id + "\"");
        }
        if (clean(rec.sample.text).empty()) {
            if (stats) ++stats->dropped_empty;
            continue;
        }
        ds.samples.push_back(std::move(rec));
    }
    return ds;
}

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line the record starts on
};

// RFC-4180: fields separated by commas, quoted fields may contain commas,
// quotes (doubled) and line breaks.
std::vector<CsvRecord> parse_csv(const std::string& content, const std::filesystem::path& path) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    current.line = 1;
    std::string field;
    bool in_quotes = false;
    bool field_started_quoted = false;
    std::size_t line = 1;
    std::size_t i = 0;
    auto end_field = [&]() {
        current.fields.push_back(field);
        field.clear();
        field_started_quoted = false;
    };
    auto end_record = [&]() {
        end_field();
        // Skip records that are a single empty field (blank lines).
        if (!(current.fields.size() == 1 && current.fields[0].empty())) {
            records.push_back(current);
        }
        current = CsvRecord{};
        current.line = line;
    };
    while (i < content.size()) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && field.empty() && !field_started_quoted) {
            in_quotes = true;
            field_started_quoted = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') {
            ++line;
            i += 2;
            end_record();
        } else if (c == '\n') {
            ++line;
            ++i;
            end_record();
        } else {
            field.push_back(c);
            ++i;
        }
    }
    if (in_quotes) {
        throw DataError(path.string() + ":" + std::to_string(line) +
                        ": unterminated quoted CSV field");
    }
    if (!field.empty() || current.fields.size() > 0 || field_started_quoted) {
        end_record();
    }
    return records;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "id",        "text",    "lang",    "source", "timestamp",
        "translation", "sentiment", "emotion", "emotion_status"};
    return cols;
}

Dataset load_csv(const std::filesystem::path& path, LoadStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open corpus file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<CsvRecord> records = parse_csv(buf.str(), path);
    if (records.empty()) throw DataError(path.string() + ": missing CSV header");

    const std::vector<std::string>& known = csv_columns();
    std::unordered_map<std::string, std::size_t> col_index;
    for (std::size_t c = 0; c < records[0].fields.size(); ++c) {
        const std::string& name = records[0].fields[c];
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            fail_line(path, records[0].line, "unknown CSV column \"" + name + "\"");
        }
        if (!col_index.emplace(name, c).second) {
            fail_line(path, records[0].line, "duplicate CSV column \"" + name + "\"");
        }
    }
    for (const char* required : {"id", "text", "lang"}) {
        if (!col_index.count(required)) {
            fail_line(path, records[0].line,
                      std::string("missing required CSV column \"") + required + "\"");
        }
    }

    Dataset ds;
    ds.provenance = path.string();
    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const CsvRecord& rec = records[r];
        if (rec.fields.size() != records[0].fields.size()) {
            fail_line(path, rec.line,
                      "expected " + std::to_string(records[0].fields.size()) + " fields, got " +
                          std::to_string(rec.fields.size()));
        }
        auto get = [&](const char* name) -> std::optional<std::string> {
            auto it = col_index.find(name);
            if (it == col_index.end()) return std::nullopt;
            const std::string& v = rec.fields[it->second];
            if (v.empty()) return std::nullopt;
            return v;
        };
        LabeledSample ls = make_record(get("id").value_or(""), get("text").value_or(""),
                                       get("lang").value_or(""), get("source"), get("timestamp"),
                                       get("translation"), get("sentiment"), get("emotion"),
                                       get("emotion_status"), path, rec.line);
        if (!seen_ids.insert(ls.sample.id).second) {
            fail_line(path, rec.line, "duplicate id \"" + ls.sample.id + "\"");
        }
        if (clean(ls.sample.text).empty()) {
            if (stats) ++stats->dropped_empty;
            continue;
        }
        ds.samples.push_back(std::move(ls));
    }
    return ds;
}

std::string csv_escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

bool operator==(const Sample& a, const Sample& b) {
    return a.id == b.id && a.text == b.text && a.lang == b.lang && a.source == b.source &&
           a.timestamp == b.timestamp && a.translation == b.translation;
}

bool operator==(const LabeledSample& a, const LabeledSample& b) {
    return a.sample == b.sample && a.sentiment == b.sentiment && a.emotion == b.emotion &&
           a.emotion_status == b.emotion_status;
}

CorpusFormat corpus_format_from_string(std::string_view s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    throw UsageError("unknown corpus format: \"" + std::string(s) + "\" (expected jsonl or csv)");
}

CorpusFormat corpus_format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    if (ext == ".jsonl") return CorpusFormat::jsonl;
    if (ext == ".csv") return CorpusFormat::csv;
    throw UsageError("cannot infer corpus format from \"" + path.string() +
                     "\" (expected .jsonl or .csv)");
}

Dataset load_corpus(const std::filesystem::path& path, CorpusFormat format, LoadStats* stats) {
    return format == CorpusFormat::jsonl ? load_jsonl(path, stats) : load_csv(path, stats);
}

void save_corpus(const Dataset& ds, const std::filesystem::path& path, CorpusFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write corpus file: " + path.string());
    if (format == CorpusFormat::jsonl) {
        for (const LabeledSample& rec : ds.samples) {
            json j;
            j["id"] = rec.sample.id;
            j["text"] = rec.sample.text;
            j["lang"] = to_string(rec.sample.lang);
            j["source"] = to_string(rec.sample.source);
            if (rec.sample.timestamp) j["timestamp"] = *rec.sample.timestamp;
            if (rec.sample.translation) j["translation"] = *rec.sample.translation;
            if (rec.sentiment) j["sentiment"] = to_string(*rec.sentiment);
            if (rec.emotion) j["emotion"] = to_string(*rec.emotion);
            if (rec.emotion_status) j["emotion_status"] = to_string(*rec.emotion_status);
            out << j.dump() << "\n";
        }
    } else {
        const std::vector<std::string>& cols = csv_columns();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out << ",";
            out << cols[c];
        }
        out << "\n";
        for (const LabeledSample& rec : ds.samples) {
            std::vector<std::string> fields = {
                rec.sample.id,
                rec.sample.text,
                to_string(rec.sample.lang),
                to_string(rec.sample.source),
                rec.sample.timestamp.value_or(""),
                rec.sample.translation.value_or(""),
                rec.sentiment ? to_string(*rec.sentiment) : "",
                rec.emotion ? to_string(*rec.emotion) : "",
                rec.emotion_status ? to_string(*rec.emotion_status) : ""};
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (c) out << ",";
                out << csv_escape(fields[c]);
            }
            out << "\n";
        }
    }
    if (!out) throw ResourceError("write failed for corpus file: " + path.string());
}

std::pair<Dataset, Dataset> partition_by_language(const Dataset& ds) {
    Dataset en, ur;
    en.provenance = ds.provenance;
    ur.provenance = ds.provenance;
    for (const LabeledSample& rec : ds.samples) {
        (rec.sample.lang == Lang::english ? en : ur).samples.push_back(rec);
    }
    return {std::move(en), std::move(ur)};
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed,
                                  bool stratify) {
    const std::size_t n = ds.samples.size();
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw UsageError("split fraction must be in (0, 1)");
    }
    if (n < 2) throw DataError("cannot split a dataset with fewer than 2 samples");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<bool> in_train(n, false);
    if (!stratify) {
        std::size_t n_train =
            static_cast<std::size_t>(fraction * static_cast<double>(n) + 0.5);
        if (n_train == 0 || n_train >= n) {
            throw DataError("split fraction leaves an empty train or test set");
        }
        for (std::size_t k = 0; k < n_train; ++k) in_train[order[k]] = true;
    } else {
        std::map<Sentiment, std::size_t> class_total;
        for (const LabeledSample& rec : ds.samples) {
            if (!rec.sentiment) {
                throw DataError("stratified split requires a sentiment label on every sample (id \"" +
                                rec.sample.id + "\" has none)");
            }
            ++class_total[*rec.sentiment];
        }
        for (const auto& [cls, total] : class_total) {
            if (total < 2) {
                throw DataError(std::string("cannot stratify: class \"") + to_string(cls) +
                                "\" has fewer than 2 samples");
            }
        }
        std::map<Sentiment, std::size_t> class_train;
        for (const auto& [cls, total] : class_total) {
            class_train[cls] =
                static_cast<std::size_t>(fraction * static_cast<double>(total) + 0.5);
        }
        std::map<Sentiment, std::size_t> taken;
        for (std::size_t idx : order) {
            Sentiment cls = *ds.samples[idx].sentiment;
            if (taken[cls] < class_train[cls]) {
                in_train[idx] = true;
                ++taken[cls];
            }
        }
        std::size_t n_train = 0;
        for (bool b : in_train) n_train += b ? 1 : 0;
        if (n_train == 0 || n_train >= n) {
            throw DataError("split fraction leaves an empty train or test set");
        }
    }

    Dataset train, test;
    train.provenance = ds.provenance;
    test.provenance = ds.provenance;
    for (std::size_t i = 0; i < n; ++i) {
        (in_train[i] ? train : test).samples.push_back(ds.samples[i]);
    }
    return {std::move(train), std::move(test)};
}

std::vector<std::pair<Dataset, Dataset>> multi_split(const Dataset& ds, const SplitSpec& spec) {
    if (spec.seeds.empty()) throw UsageError("SplitSpec.seeds must be nonempty");
    std::vector<std::pair<Dataset, Dataset>> out;
    out.reserve(spec.seeds.size());
    for (std::uint64_t seed : spec.seeds) {
        out.push_back(split(ds, spec.train_fraction, seed, spec.stratify));
    }
    return out;
}

}  // namespace episent
