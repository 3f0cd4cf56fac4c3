#pragma once

#include "hsd/actions.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hsd {

class HnswIndex;

// Unit-norm embedding vector. Default toy dimension is 64; the algorithms
// are dimension-agnostic.
using Embedding = std::vector<double>;

// Normalizes v to unit L2 norm. Throws InvalidInputError on the zero vector.
Embedding l2_normalize(const std::vector<double>& v);

double cosine_similarity(const Embedding& a, const Embedding& b);

// Self-contained retrieval payload: identity fields, the action taken at the
// matched step, and the executable 3-step lookahead starting there.
struct Payload {
    std::string dataset_name;
    int episode_idx = 0;
    int step_idx = 0;
    std::array<double, kActionDims> current_action{};
    std::array<std::array<double, kActionDims>, 3> next_actions{};
    std::string language_instruction;

    bool operator==(const Payload&) const = default;
};

struct Record {
    Embedding embedding;
    Payload payload;
    // Verifier final-layer input features, captured at recording time so the
    // verify-skip offline stage is a pure database pass.
    std::optional<std::vector<double>> feature;
};

struct SearchHit {
    double score = 0.0; // cosine similarity
    int record_id = 0;
    Payload payload;
};

struct HnswParams {
    int m = 16;
    int ef_construct = 100;
    int ef_search = 100;
};

// One task shard: an append-only record set with exact cosine top-k search
// and an optional HNSW index. Immutable once searches begin.
class Collection {
public:
    Collection() = default;
    Collection(std::string name, int dim);
    Collection(Collection&&) noexcept;
    Collection& operator=(Collection&&) noexcept;
    ~Collection();

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const Record& record(int id) const { return records_[static_cast<size_t>(id)]; }
    const std::vector<Record>& records() const { return records_; }

    // Returns the new record id (dense, starting at 0).
    // Throws SchemaError when the embedding dimension does not match.
    int insert(Embedding embedding, Payload payload,
               std::optional<std::vector<double>> feature = std::nullopt);

    // Brute-force top-k by cosine score, descending, ties broken by ascending
    // record id. Empty collection yields an empty result.
    std::vector<SearchHit> search_topk_exact(const Embedding& query, int k) const;

    // Builds the approximate index over the current records.
    void build_hnsw(const HnswParams& params);
    bool has_hnsw() const { return index_ != nullptr; }

    // Approximate top-k via HNSW; falls back to exact when no index is built.
    std::vector<SearchHit> search_topk(const Embedding& query, int k) const;

private:
    std::string name_;
    int dim_ = 0;
    std::vector<Record> records_;
    std::unique_ptr<HnswIndex> index_;
    HnswParams index_params_;
};

// One JSON object per line; line 1 is the header
//   {"version":1,"name":...,"dim":...,"metric":"cosine"}
// and every further line is a record. Numbers round-trip exactly.
void save_collection(const Collection& c, const std::string& path);
Collection load_collection(const std::string& path);

} // namespace hsd
