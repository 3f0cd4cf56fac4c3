#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hsd {

// Hierarchical navigable small world graph over unit vectors, specialized to
// inner-product (= cosine) similarity. Build is deterministic: level draws
// come from a fixed-seed generator and depend only on insertion order.
class HnswIndex {
public:
    HnswIndex(int dim, int m, int ef_construct);

    // Adds one vector; ids are assigned densely in insertion order.
    int add(const std::vector<double>& v);

    // Approximate top-k ids by descending similarity, ascending id on ties.
    std::vector<int> search(const std::vector<double>& query, int k, int ef_search) const;

    size_t size() const { return vectors_.size(); }

private:
    struct Node {
        std::vector<std::vector<int>> neighbors; // per layer
    };

    double similarity(const std::vector<double>& a, const std::vector<double>& b) const;
    int draw_level();
    // Greedy beam search in one layer; returns up to ef candidate ids,
    // best first.
    std::vector<int> search_layer(const std::vector<double>& query, int entry, int ef,
                                  int layer) const;
    void connect(int id, int layer, std::vector<int> candidates);

    int dim_;
    int m_;
    int m_max0_;
    int ef_construct_;
    double level_mult_;
    int entry_point_ = -1;
    int max_layer_ = -1;
    std::vector<std::vector<double>> vectors_;
    std::vector<Node> nodes_;
    std::mt19937_64 level_rng_{0x5d7a9e23ULL};
};

} // namespace hsd
