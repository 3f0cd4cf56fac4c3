#include "hsd/hnsw.hpp"

#include "hsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

namespace hsd {

namespace {

struct Scored {
    double score;
    int id;
};

// Higher score first; ascending id on ties (matches exact-search ordering).
struct BetterFirst {
    bool operator()(const Scored& a, const Scored& b) const {
        if (a.score != b.score) return a.score < b.score; // max-heap on score
        return a.id > b.id;
    }
};

struct WorseFirst {
    bool operator()(const Scored& a, const Scored& b) const {
        if (a.score != b.score) return a.score > b.score; // min-heap on score
        return a.id < b.id;
    }
};

} // namespace

HnswIndex::HnswIndex(int dim, int m, int ef_construct)
    : dim_(dim),
      m_(m),
      m_max0_(2 * m),
      ef_construct_(ef_construct),
      level_mult_(1.0 / std::log(static_cast<double>(m))) {
    if (dim < 1 || m < 2 || ef_construct < 1) throw ConfigError("invalid hnsw parameters");
}

double HnswIndex::similarity(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
    return s;
}

int HnswIndex::draw_level() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(level_rng_);
    u = std::max(u, 1e-300);
    return static_cast<int>(-std::log(u) * level_mult_);
}

std::vector<int> HnswIndex::search_layer(const std::vector<double>& query, int entry, int ef,
                                         int layer) const {
    std::unordered_set<int> visited{entry};
    const double entry_score = similarity(query, vectors_[static_cast<size_t>(entry)]);

    std::priority_queue<Scored, std::vector<Scored>, BetterFirst> candidates;
    std::priority_queue<Scored, std::vector<Scored>, WorseFirst> best;
    candidates.push({entry_score, entry});
    best.push({entry_score, entry});

    while (!candidates.empty()) {
        const Scored current = candidates.top();
        candidates.pop();
        if (current.score < best.top().score && best.size() >= static_cast<size_t>(ef)) break;

        for (int nb : nodes_[static_cast<size_t>(current.id)].neighbors[static_cast<size_t>(layer)]) {
            if (!visited.insert(nb).second) continue;
            const double s = similarity(query, vectors_[static_cast<size_t>(nb)]);
            if (best.size() < static_cast<size_t>(ef) || s > best.top().score) {
                candidates.push({s, nb});
                best.push({s, nb});
                if (best.size() > static_cast<size_t>(ef)) best.pop();
            }
        }
    }

    std::vector<Scored> out;
    out.reserve(best.size());
    while (!best.empty()) {
        out.push_back(best.top());
        best.pop();
    }
    std::sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    std::vector<int> ids(out.size());
    for (size_t i = 0; i < out.size(); ++i) ids[i] = out[i].id;
    return ids;
}

void HnswIndex::connect(int id, int layer, std::vector<int> candidates) {
    const int cap = layer == 0 ? m_max0_ : m_;
    if (candidates.size() > static_cast<size_t>(cap)) candidates.resize(static_cast<size_t>(cap));
    auto& mine = nodes_[static_cast<size_t>(id)].neighbors[static_cast<size_t>(layer)];
    for (int nb : candidates) {
        mine.push_back(nb);
        auto& theirs = nodes_[static_cast<size_t>(nb)].neighbors[static_cast<size_t>(layer)];
        theirs.push_back(id);
        if (theirs.size() > static_cast<size_t>(cap)) {
            // Keep the cap closest neighbors.
            std::vector<Scored> scored;
            scored.reserve(theirs.size());
            for (int t : theirs) {
                scored.push_back({similarity(vectors_[static_cast<size_t>(nb)],
                                             vectors_[static_cast<size_t>(t)]),
                                  t});
            }
            std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.id < b.id;
            });
            theirs.clear();
            for (int i = 0; i < cap; ++i) theirs.push_back(scored[static_cast<size_t>(i)].id);
        }
    }
}

int HnswIndex::add(const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != dim_) throw SchemaError("hnsw vector dim mismatch");
    const int id = static_cast<int>(vectors_.size());
    vectors_.push_back(v);

    const int level = draw_level();
    Node node;
    node.neighbors.resize(static_cast<size_t>(level) + 1);
    nodes_.push_back(std::move(node));

    if (entry_point_ < 0) {
        entry_point_ = id;
        max_layer_ = level;
        return id;
    }

    int current = entry_point_;
    for (int layer = max_layer_; layer > level; --layer) {
        const auto found = search_layer(v, current, 1, layer);
        if (!found.empty()) current = found.front();
    }
    for (int layer = std::min(level, max_layer_); layer >= 0; --layer) {
        auto candidates = search_layer(v, current, ef_construct_, layer);
        if (!candidates.empty()) current = candidates.front();
        connect(id, layer, std::move(candidates));
    }
    if (level > max_layer_) {
        entry_point_ = id;
        max_layer_ = level;
    }
    return id;
}

std::vector<int> HnswIndex::search(const std::vector<double>& query, int k, int ef_search) const {
    if (entry_point_ < 0 || k < 1) return {};
    int current = entry_point_;
    for (int layer = max_layer_; layer > 0; --layer) {
        const auto found = search_layer(query, current, 1, layer);
        if (!found.empty()) current = found.front();
    }
    auto ids = search_layer(query, current, std::max(ef_search, k), 0);
    if (ids.size() > static_cast<size_t>(k)) ids.resize(static_cast<size_t>(k));
    return ids;
}

} // namespace hsd
