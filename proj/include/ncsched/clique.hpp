/*
 * Maximum-weight clique search on the RA-IDNC graph: an exact
 * branch-and-bound solver for oracle-grade small graphs and a greedy
 * heuristic for everything larger, plus a verifier guarding both.
 */
#pragma once

#include <vector>

#include "ncsched/graph.hpp"

namespace ncsched {

enum class SolverTag { Exact, Greedy };

struct CliqueSolution {
    std::vector<int> vertices;  // sorted ascending
    double weight = 0.0;
    SolverTag tag = SolverTag::Exact;
};

inline constexpr int kDefaultExactLimit = 25;

// Globally optimal maximum-weight clique; ties resolved toward the
// lexicographically smallest vertex id set. Throws std::length_error when the
// graph exceeds size_limit (callers should fall back to solve_greedy).
CliqueSolution solve_exact(const RaidncGraph& graph, int size_limit = kDefaultExactLimit);

// Repeatedly adds the heaviest vertex adjacent to all members (ties: smaller
// id). Never beats solve_exact, always returns a valid clique.
CliqueSolution solve_greedy(const RaidncGraph& graph);

// Group-aware heuristic: repeatedly grows the most valuable same-transmitter
// equal-rate coded group compatible with the members picked so far. Plain
// vertex-by-vertex greedy never codes on this graph family (the top-rate
// vertex of a transmitter has no equal-rate partner), so the schedulers take
// the better of the two heuristics on large graphs.
CliqueSolution solve_group_greedy(const RaidncGraph& graph);

// True iff the vertex set is pairwise adjacent (empty set included).
bool verify_clique(const RaidncGraph& graph, const std::vector<int>& vertices);

}  // namespace ncsched
