#include "hsd/store.hpp"

#include "hsd/errors.hpp"
#include "hsd/hnsw.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hsd {

using nlohmann::json;

Embedding l2_normalize(const std::vector<double>& v) {
    double sq = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw InvalidInputError("non-finite embedding component");
        sq += x * x;
    }
    const double norm = std::sqrt(sq);
    if (norm == 0.0) throw InvalidInputError("cannot normalize the zero vector");
    Embedding out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
    return out;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.size() != b.size()) throw InvalidInputError("embedding dim mismatch in cosine");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Collection::Collection(std::string name, int dim) : name_(std::move(name)), dim_(dim) {
    if (dim < 1) throw ConfigError("collection dim must be >= 1");
}

Collection::Collection(Collection&&) noexcept = default;
Collection& Collection::operator=(Collection&&) noexcept = default;
Collection::~Collection() = default;

int Collection::insert(Embedding embedding, Payload payload,
                       std::optional<std::vector<double>> feature) {
    if (static_cast<int>(embedding.size()) != dim_) {
        throw SchemaError("embedding dim " + std::to_string(embedding.size()) +
                          " does not match collection dim " + std::to_string(dim_));
    }
    if (payload.episode_idx < 0 || payload.step_idx < 0) {
        throw SchemaError("payload indices must be nonnegative");
    }
    const int id = static_cast<int>(records_.size());
    records_.push_back({std::move(embedding), std::move(payload), std::move(feature)});
    index_.reset(); // stale after mutation
    return id;
}

std::vector<SearchHit> Collection::search_topk_exact(const Embedding& query, int k) const {
    if (k < 1) throw InvalidInputError("k must be >= 1");
    std::vector<SearchHit> hits;
    hits.reserve(records_.size());
    for (size_t id = 0; id < records_.size(); ++id) {
        hits.push_back({cosine_similarity(query, records_[id].embedding), static_cast<int>(id),
                        records_[id].payload});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.record_id < b.record_id;
    });
    if (hits.size() > static_cast<size_t>(k)) hits.resize(static_cast<size_t>(k));
    return hits;
}

void Collection::build_hnsw(const HnswParams& params) {
    if (records_.empty()) throw InvalidInputError("cannot index an empty collection");
    index_ = std::make_unique<HnswIndex>(dim_, params.m, params.ef_construct);
    index_params_ = params;
    for (const auto& r : records_) index_->add(r.embedding);
}

std::vector<SearchHit> Collection::search_topk(const Embedding& query, int k) const {
    if (!index_) return search_topk_exact(query, k);
    const auto ids = index_->search(query, k, index_params_.ef_search);
    std::vector<SearchHit> hits;
    hits.reserve(ids.size());
    for (int id : ids) {
        hits.push_back({cosine_similarity(query, records_[static_cast<size_t>(id)].embedding), id,
                        records_[static_cast<size_t>(id)].payload});
    }
    return hits;
}

namespace {

json payload_to_json(const Payload& p) {
    json next = json::array();
    for (const auto& row : p.next_actions) next.push_back(row);
    return json{{"dataset_name", p.dataset_name},
                {"episode_idx", p.episode_idx},
                {"step_idx", p.step_idx},
                {"current_action", p.current_action},
                {"next_actions", next},
                {"language_instruction", p.language_instruction}};
}

Payload payload_from_json(const json& j, long line) {
    Payload p;
    try {
        p.dataset_name = j.at("dataset_name").get<std::string>();
        p.episode_idx = j.at("episode_idx").get<int>();
        p.step_idx = j.at("step_idx").get<int>();
        const auto& cur = j.at("current_action");
        if (!cur.is_array() || cur.size() != kActionDims) {
            throw ParseError("current_action must have 7 entries", line);
        }
        for (size_t i = 0; i < kActionDims; ++i) p.current_action[i] = cur[i].get<double>();
        const auto& next = j.at("next_actions");
        if (!next.is_array() || next.size() != 3) {
            throw ParseError("next_actions must have 3 rows", line);
        }
        for (size_t r = 0; r < 3; ++r) {
            if (!next[r].is_array() || next[r].size() != kActionDims) {
                throw ParseError("next_actions rows must have 7 entries", line);
            }
            for (size_t i = 0; i < kActionDims; ++i) p.next_actions[r][i] = next[r][i].get<double>();
        }
        p.language_instruction = j.at("language_instruction").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad payload: ") + e.what(), line);
    }
    if (p.episode_idx < 0 || p.step_idx < 0) throw ParseError("negative payload index", line);
    return p;
}

} // namespace

void save_collection(const Collection& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);

    const json header{{"version", 1}, {"name", c.name()}, {"dim", c.dim()}, {"metric", "cosine"}};
    out << header.dump() << '\n';
    for (const auto& r : c.records()) {
        json rec{{"embedding", r.embedding}, {"payload", payload_to_json(r.payload)}};
        rec["feature"] = r.feature ? json(*r.feature) : json(nullptr);
        out << rec.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Collection load_collection(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);

    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) throw ParseError("missing header line", 1);
    ++line_no;
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object()) throw ParseError("malformed header", line_no);
    if (!header.contains("version") || !header["version"].is_number_integer()) {
        throw ParseError("header lacks a version", line_no);
    }
    if (header["version"].get<int>() != 1) {
        throw VersionError("unsupported database version " + header["version"].dump());
    }
    if (header.value("metric", "") != "cosine") throw ParseError("unsupported metric", line_no);

    Collection c(header.value("name", ""), header.value("dim", 0));
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ParseError("malformed record", line_no);
        if (!j.contains("embedding") || !j["embedding"].is_array()) {
            throw ParseError("record lacks an embedding", line_no);
        }
        Embedding e = j["embedding"].get<std::vector<double>>();
        if (static_cast<int>(e.size()) != c.dim()) throw ParseError("embedding dim mismatch", line_no);
        if (!j.contains("payload")) throw ParseError("record lacks a payload", line_no);
        Payload p = payload_from_json(j["payload"], line_no);
        std::optional<std::vector<double>> feature;
        if (j.contains("feature") && !j["feature"].is_null()) {
            feature = j["feature"].get<std::vector<double>>();
        }
        c.insert(std::move(e), std::move(p), std::move(feature));
    }
    return c;
}

} // namespace hsd
