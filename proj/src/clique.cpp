#include "ncsched/clique.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ncsched {

namespace {

// Weights are summed in ascending-id order everywhere (solvers and test
// oracles alike) so equal vertex sets always report bit-equal weights.
double canonical_weight(const RaidncGraph& graph, const std::vector<int>& sorted_ids) {
    double weight = 0.0;
    for (const int id : sorted_ids) weight += graph.vertices[static_cast<std::size_t>(id)].weight_bps;
    return weight;
}

struct ExactSearch {
    const RaidncGraph& graph;
    std::vector<int> order;  // vertex ids, heaviest first
    std::vector<int> current;
    std::vector<int> best;
    double best_weight = 0.0;
    double prune_slack = 0.0;

    explicit ExactSearch(const RaidncGraph& g) : graph(g) {
        order.resize(static_cast<std::size_t>(g.vertex_count()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return g.vertices[static_cast<std::size_t>(a)].weight_bps >
                   g.vertices[static_cast<std::size_t>(b)].weight_bps;
        });
        double total = 0.0;
        for (const auto& v : g.vertices) total += v.weight_bps;
        // Absorbs summation-order rounding in the bound without ever pruning
        // a branch that could still win or tie.
        prune_slack = 1e-9 * std::max(total, 1.0);
    }

    void consider_current() {
        std::vector<int> sorted = current;
        std::sort(sorted.begin(), sorted.end());
        const double weight = canonical_weight(graph, sorted);
        if (weight > best_weight ||
            (weight == best_weight && std::lexicographical_compare(sorted.begin(), sorted.end(),
                                                                   best.begin(), best.end()))) {
            best = std::move(sorted);
            best_weight = weight;
        }
    }

    // candidates: positions into `order`, ascending; every candidate is
    // adjacent to all members of `current`.
    void expand(const std::vector<int>& candidates, double current_weight) {
        if (candidates.empty()) {
            consider_current();
            return;
        }
        double remaining = 0.0;
        for (const int pos : candidates)
            remaining +=
                graph.vertices[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])]
                    .weight_bps;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (current_weight + remaining < best_weight - prune_slack) return;
            const int pos = candidates[i];
            const int id = order[static_cast<std::size_t>(pos)];
            const double w = graph.vertices[static_cast<std::size_t>(id)].weight_bps;

            std::vector<int> next;
            next.reserve(candidates.size() - i - 1);
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                const int other = order[static_cast<std::size_t>(candidates[j])];
                if (graph.adjacent(id, other)) next.push_back(candidates[j]);
            }
            current.push_back(id);
            expand(next, current_weight + w);
            current.pop_back();
            remaining -= w;
        }
        // All extensions of `current` skipped a candidate; the maximal clique
        // through this node was still visited via the inclusion branches.
    }

    void run() {
        best.clear();
        std::vector<int> all(order.size());
        std::iota(all.begin(), all.end(), 0);
        expand(all, 0.0);
    }
};

}  // namespace

CliqueSolution solve_exact(const RaidncGraph& graph, int size_limit) {
    if (graph.vertex_count() > size_limit)
        throw std::length_error("graph exceeds the exact clique solver size limit");
    ExactSearch search(graph);
    if (graph.vertex_count() > 0) search.run();
    return {search.best, search.best_weight, SolverTag::Exact};
}

CliqueSolution solve_greedy(const RaidncGraph& graph) {
    const int count = graph.vertex_count();
    std::vector<char> candidate(static_cast<std::size_t>(count), 1);
    std::vector<int> members;
    for (;;) {
        int pick = -1;
        for (int i = 0; i < count; ++i) {
            if (!candidate[static_cast<std::size_t>(i)]) continue;
            if (pick < 0 || graph.vertices[static_cast<std::size_t>(i)].weight_bps >
                                graph.vertices[static_cast<std::size_t>(pick)].weight_bps)
                pick = i;
        }
        if (pick < 0) break;
        members.push_back(pick);
        candidate[static_cast<std::size_t>(pick)] = 0;
        for (int i = 0; i < count; ++i)
            if (candidate[static_cast<std::size_t>(i)] && !graph.adjacent(pick, i))
                candidate[static_cast<std::size_t>(i)] = 0;
    }
    std::sort(members.begin(), members.end());
    return {members, canonical_weight(graph, members), SolverTag::Greedy};
}

CliqueSolution solve_group_greedy(const RaidncGraph& graph) {
    const int count = graph.vertex_count();
    const std::size_t words = graph.adjacency.words_per_row();
    // Vertices are laid out with (transmitter, rate) blocks contiguous.
    struct Block {
        int begin;
        int end;
    };
    std::vector<Block> blocks;
    for (int i = 0; i < count;) {
        int j = i + 1;
        while (j < count && graph.vertices[static_cast<std::size_t>(j)].tx ==
                                graph.vertices[static_cast<std::size_t>(i)].tx &&
               graph.vertices[static_cast<std::size_t>(j)].rate_bps ==
                   graph.vertices[static_cast<std::size_t>(i)].rate_bps)
            ++j;
        blocks.push_back({i, j});
        i = j;
    }

    std::vector<std::uint64_t> remaining(words, ~0ULL);
    if (count % 64 != 0 && !remaining.empty())
        remaining[words - 1] = (1ULL << (count % 64)) - 1;

    // Blocks are contiguous, so growth only ever touches their word span.
    // Every member of a block carries the same weight, so a single greedy
    // pass can strand itself on a vertex without coding partners; growth is
    // therefore tried from every start vertex and the best group kept.
    std::vector<std::uint64_t> base;
    std::vector<std::uint64_t> cand;
    const auto grow_block = [&](const Block& block, std::vector<int>& members) {
        const std::size_t w0 = static_cast<std::size_t>(block.begin) / 64;
        const std::size_t w1 = (static_cast<std::size_t>(block.end) + 63) / 64;
        base.assign(remaining.begin() + static_cast<std::ptrdiff_t>(w0),
                    remaining.begin() + static_cast<std::ptrdiff_t>(w1));
        if (block.begin % 64 != 0) base.front() &= ~0ULL << (block.begin % 64);
        if (block.end % 64 != 0) base.back() &= (1ULL << (block.end % 64)) - 1;

        double value = 0.0;
        std::vector<int> grown;
        for (std::size_t sw = 0; sw < base.size(); ++sw) {
            std::uint64_t starts = base[sw];
            while (starts != 0) {
                const int start = static_cast<int>(
                    (w0 + sw) * 64 + static_cast<std::size_t>(std::countr_zero(starts)));
                starts &= starts - 1;
                grown.assign(1, start);
                double grown_value = graph.vertices[static_cast<std::size_t>(start)].weight_bps;
                cand = base;
                {
                    const auto row = graph.adjacency.row(start);
                    for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= row[w0 + w];
                }
                for (;;) {
                    int pick = -1;
                    for (std::size_t w = 0; w < cand.size(); ++w) {
                        std::uint64_t bits = cand[w];
                        while (bits != 0) {
                            const int pos = static_cast<int>(
                                (w0 + w) * 64 +
                                static_cast<std::size_t>(std::countr_zero(bits)));
                            bits &= bits - 1;
                            if (pick < 0 ||
                                graph.vertices[static_cast<std::size_t>(pos)].weight_bps >
                                    graph.vertices[static_cast<std::size_t>(pick)].weight_bps)
                                pick = pos;
                        }
                    }
                    if (pick < 0) break;
                    grown.push_back(pick);
                    grown_value += graph.vertices[static_cast<std::size_t>(pick)].weight_bps;
                    const auto row = graph.adjacency.row(pick);
                    for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= row[w0 + w];
                }
                if (grown_value > value) {
                    value = grown_value;
                    members = grown;
                }
            }
        }
        return value;
    };

    std::vector<int> clique;
    for (;;) {
        double best_value = 0.0;
        std::vector<int> best_members;
        for (const auto& block : blocks) {
            std::vector<int> members;
            const double value = grow_block(block, members);
            if (value > best_value) {
                best_value = value;
                best_members = std::move(members);
            }
        }
        if (best_value <= 0.0) break;
        for (const int v : best_members) {
            clique.push_back(v);
            const auto row = graph.adjacency.row(v);
            for (std::size_t w = 0; w < words; ++w) remaining[w] &= row[w];
        }
    }
    std::sort(clique.begin(), clique.end());
    return {clique, canonical_weight(graph, clique), SolverTag::Greedy};
}

bool verify_clique(const RaidncGraph& graph, const std::vector<int>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!graph.adjacent(vertices[i], vertices[j])) return false;
    return true;
}

}  // namespace ncsched
