/*
 * Two-layered rate-aware IDNC graph. Vertices are (user, file, transmitter,
 * adopted rate) associations; cliques are exactly the feasible network-coded
 * schedules, so scheduling reduces to maximum-weight clique search.
 *
 * Layer 1 holds associations whose file sits in the transmitter's cache;
 * layer 2 holds cache-miss users served by an SBS over the fronthaul (their
 * rates already carry the fronthaul cap).
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ncsched/channel.hpp"
#include "ncsched/model.hpp"
#include "ncsched/schedule.hpp"

namespace ncsched {

struct GraphVertex {
    int user = 0;
    int file = 0;  // always the user's wanted file
    int tx = 0;
    int layer = 0;  // 1: cached at tx, 2: SBS fronthaul service
    double rate_bps = 0.0;
    double weight_bps = 0.0;
};

// Symmetric, irreflexive adjacency stored as bitset rows.
class AdjacencyBits {
  public:
    AdjacencyBits() = default;
    explicit AdjacencyBits(int count)
        : count_(count),
          words_per_row_((static_cast<std::size_t>(count) + 63) / 64),
          bits_(words_per_row_ * static_cast<std::size_t>(count), 0) {}

    int count() const { return count_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool test(int i, int j) const {
        return (row(i)[static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1ULL;
    }

    void set(int i, int j) {
        row(i)[static_cast<std::size_t>(j) / 64] |= 1ULL << (j % 64);
        row(j)[static_cast<std::size_t>(i) / 64] |= 1ULL << (i % 64);
    }

    std::span<const std::uint64_t> row(int i) const {
        return {bits_.data() + static_cast<std::size_t>(i) * words_per_row_, words_per_row_};
    }

    std::span<std::uint64_t> row(int i) {
        return {bits_.data() + static_cast<std::size_t>(i) * words_per_row_, words_per_row_};
    }

  private:
    int count_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct RaidncGraph {
    std::vector<GraphVertex> vertices;
    AdjacencyBits adjacency;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    bool adjacent(int i, int j) const { return i != j && adjacency.test(i, j); }
};

// Edge structure variants share one vertex/edge engine. Proposed is the full
// two-layered construction; Uncoded drops same-transmitter edges (one user
// per transmitter); Classical drops the rate dimension and weights every
// vertex 1 (serve as many users as possible); FixedRate keeps only a single
// network-wide rate level.
enum class GraphMode { Proposed, Uncoded, Classical };

// Distinct achievable rates of all users at one transmitter, descending.
std::vector<double> candidate_rates(const RateMatrix& rates, int tx);

RaidncGraph build_graph(const Instance& instance, const RateMatrix& rates,
                        GraphMode mode = GraphMode::Proposed);

// Vertex count the Proposed construction would produce, without assembling
// any edges; used to pick the clique solver before work starts.
int proposed_vertex_count(const Instance& instance, const RateMatrix& rates);

// Subgraph of associations able to carry exactly `rate_bps`; used to solve
// the network-wide equal-rate scheme one rate level at a time.
RaidncGraph build_fixed_rate_graph(const Instance& instance, const RateMatrix& rates,
                                   double rate_bps);

// Maps a verified clique to the schedule it encodes. Throws on cliques that
// mix adopted rates at one transmitter or break instant decodability (cannot
// happen for cliques of a correctly built graph).
Schedule schedule_from_clique(const std::vector<int>& clique, const RaidncGraph& graph,
                              int num_tx);

// Adjacency-list text dump for external cross-checks.
void export_graph(std::ostream& out, const RaidncGraph& graph);

}  // namespace ncsched
