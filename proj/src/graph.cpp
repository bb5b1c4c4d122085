#include "ncsched/graph.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

namespace ncsched {

namespace {

// Packed file sets, one word per 64 files.
struct FileBits {
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;

    FileBits(int num_files, const std::vector<std::vector<int>>& sets)
        : words((static_cast<std::size_t>(num_files) + 63) / 64),
          bits(words * sets.size(), 0) {
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (int f : sets[i]) bits[i * words + static_cast<std::size_t>(f) / 64] |=
                1ULL << (f % 64);
    }

    bool test(std::size_t set, int f) const {
        return (bits[set * words + static_cast<std::size_t>(f) / 64] >> (f % 64)) & 1ULL;
    }
};

// 0: no association allowed; 1: file cached at tx; 2: SBS fronthaul service.
int association_layer(const Instance& instance, const FileBits& caches, int user, int tx) {
    const int wanted = instance.side.wants[static_cast<std::size_t>(user)];
    if (caches.test(static_cast<std::size_t>(tx), wanted)) return 1;
    if (instance.classes[static_cast<std::size_t>(user)] == UserClass::CacheMiss &&
        instance.kinds[static_cast<std::size_t>(tx)] == TransmitterKind::SBS)
        return 2;
    return 0;
}

// users n, m can share a coded transmission: same wanted file, or each holds
// the other's wanted file (the XOR is instantly decodable for both).
std::vector<std::uint64_t> user_compat_matrix(const Instance& instance, const FileBits& has) {
    const int num_users = instance.scenario.num_users;
    const std::size_t words = (static_cast<std::size_t>(num_users) + 63) / 64;
    std::vector<std::uint64_t> compat(words * static_cast<std::size_t>(num_users), 0);
    for (int n = 0; n < num_users; ++n) {
        for (int m = n + 1; m < num_users; ++m) {
            const int wn = instance.side.wants[static_cast<std::size_t>(n)];
            const int wm = instance.side.wants[static_cast<std::size_t>(m)];
            const bool ok = wn == wm || (has.test(static_cast<std::size_t>(m), wn) &&
                                         has.test(static_cast<std::size_t>(n), wm));
            if (!ok) continue;
            compat[static_cast<std::size_t>(n) * words + static_cast<std::size_t>(m) / 64] |=
                1ULL << (m % 64);
            compat[static_cast<std::size_t>(m) * words + static_cast<std::size_t>(n) / 64] |=
                1ULL << (n % 64);
        }
    }
    return compat;
}

struct VertexSeed {
    int user;
    int tx;
    int layer;
    double rate;
    double weight;
    int group;  // same-transmitter equal-rate block (or tx block)
};

RaidncGraph assemble(const Instance& instance, std::vector<VertexSeed> seeds,
                     bool same_tx_edges) {
    const int num_users = instance.scenario.num_users;
    const int num_tx = instance.scenario.num_transmitters();
    const int count = static_cast<int>(seeds.size());

    RaidncGraph graph;
    graph.vertices.reserve(seeds.size());
    for (const auto& seed : seeds)
        graph.vertices.push_back({seed.user, instance.side.wants[static_cast<std::size_t>(seed.user)],
                                  seed.tx, seed.layer, seed.rate, seed.weight});
    graph.adjacency = AdjacencyBits(count);
    if (count == 0) return graph;

    const std::size_t words = graph.adjacency.words_per_row();
    std::vector<std::uint64_t> user_mask(words * static_cast<std::size_t>(num_users), 0);
    std::vector<std::uint64_t> tx_mask(words * static_cast<std::size_t>(num_tx), 0);
    int num_groups = 0;
    for (const auto& seed : seeds) num_groups = std::max(num_groups, seed.group + 1);
    std::vector<std::uint64_t> group_mask(words * static_cast<std::size_t>(num_groups), 0);

    for (int i = 0; i < count; ++i) {
        const auto& seed = seeds[static_cast<std::size_t>(i)];
        const std::uint64_t bit = 1ULL << (i % 64);
        const std::size_t word = static_cast<std::size_t>(i) / 64;
        user_mask[static_cast<std::size_t>(seed.user) * words + word] |= bit;
        tx_mask[static_cast<std::size_t>(seed.tx) * words + word] |= bit;
        group_mask[static_cast<std::size_t>(seed.group) * words + word] |= bit;
    }

    // Vertices whose user can be coded together with a given user.
    const FileBits has(instance.scenario.num_files, instance.side.has);
    const auto compat_users = user_compat_matrix(instance, has);
    const std::size_t user_words = (static_cast<std::size_t>(num_users) + 63) / 64;
    std::vector<std::uint64_t> compat_vertices;
    if (same_tx_edges) {
        compat_vertices.assign(words * static_cast<std::size_t>(num_users), 0);
        for (int n = 0; n < num_users; ++n) {
            const std::uint64_t* row =
                compat_users.data() + static_cast<std::size_t>(n) * user_words;
            for (int m = 0; m < num_users; ++m) {
                if (!((row[static_cast<std::size_t>(m) / 64] >> (m % 64)) & 1ULL)) continue;
                const std::uint64_t* src =
                    user_mask.data() + static_cast<std::size_t>(m) * words;
                std::uint64_t* dst =
                    compat_vertices.data() + static_cast<std::size_t>(n) * words;
                for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
            }
        }
    }

    // Bits at positions >= count must stay clear.
    std::vector<std::uint64_t> valid(words, ~0ULL);
    if (count % 64 != 0) valid[words - 1] = (1ULL << (count % 64)) - 1;

    // adj(i) = different transmitter and different user, plus (optionally)
    // same equal-rate block with a coding-compatible different user.
    for (int i = 0; i < count; ++i) {
        const auto& seed = seeds[static_cast<std::size_t>(i)];
        auto row = graph.adjacency.row(i);
        const std::uint64_t* u = user_mask.data() + static_cast<std::size_t>(seed.user) * words;
        const std::uint64_t* t = tx_mask.data() + static_cast<std::size_t>(seed.tx) * words;
        const std::uint64_t* g =
            group_mask.data() + static_cast<std::size_t>(seed.group) * words;
        const std::uint64_t* c =
            same_tx_edges ? compat_vertices.data() + static_cast<std::size_t>(seed.user) * words
                          : nullptr;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = ~t[w] & ~u[w];
            if (same_tx_edges) bits |= g[w] & c[w] & ~u[w];
            row[w] = bits & valid[w];
        }
        row[static_cast<std::size_t>(i) / 64] &= ~(1ULL << (i % 64));
    }
    return graph;
}

}  // namespace

std::vector<double> candidate_rates(const RateMatrix& rates, int tx) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(rates.num_users));
    for (int n = 0; n < rates.num_users; ++n) values.push_back(rates.at(n, tx));
    std::sort(values.begin(), values.end(), std::greater<>());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

RaidncGraph build_graph(const Instance& instance, const RateMatrix& rates, GraphMode mode) {
    const int num_users = instance.scenario.num_users;
    const int num_tx = instance.scenario.num_transmitters();
    const FileBits caches(instance.scenario.num_files, instance.caches.files);

    std::vector<VertexSeed> seeds;
    int group = 0;
    for (int t = 0; t < num_tx; ++t) {
        if (mode == GraphMode::Classical) {
            // Network-layer view: one vertex per servable user, unit weight.
            for (int n = 0; n < num_users; ++n) {
                const int layer = association_layer(instance, caches, n, t);
                if (layer == 0) continue;
                seeds.push_back({n, t, layer, 0.0, 1.0, group});
            }
            ++group;
            continue;
        }
        for (const double rate : candidate_rates(rates, t)) {
            if (rate <= 0.0) break;  // zero-rate associations carry nothing
            for (int n = 0; n < num_users; ++n) {
                const int layer = association_layer(instance, caches, n, t);
                if (layer == 0) continue;
                if (rate > rates.at(n, t)) continue;
                seeds.push_back({n, t, layer, rate, rate, group});
            }
            ++group;
        }
    }
    return assemble(instance, std::move(seeds), mode != GraphMode::Uncoded);
}

int proposed_vertex_count(const Instance& instance, const RateMatrix& rates) {
    const int num_users = instance.scenario.num_users;
    const int num_tx = instance.scenario.num_transmitters();
    const FileBits caches(instance.scenario.num_files, instance.caches.files);
    int count = 0;
    for (int t = 0; t < num_tx; ++t) {
        for (const double rate : candidate_rates(rates, t)) {
            if (rate <= 0.0) break;
            for (int n = 0; n < num_users; ++n) {
                if (association_layer(instance, caches, n, t) == 0) continue;
                if (rate > rates.at(n, t)) continue;
                ++count;
            }
        }
    }
    return count;
}

RaidncGraph build_fixed_rate_graph(const Instance& instance, const RateMatrix& rates,
                                   double rate_bps) {
    const int num_users = instance.scenario.num_users;
    const int num_tx = instance.scenario.num_transmitters();
    const FileBits caches(instance.scenario.num_files, instance.caches.files);

    std::vector<VertexSeed> seeds;
    for (int t = 0; t < num_tx; ++t) {
        for (int n = 0; n < num_users; ++n) {
            const int layer = association_layer(instance, caches, n, t);
            if (layer == 0) continue;
            if (rate_bps <= 0.0 || rate_bps > rates.at(n, t)) continue;
            seeds.push_back({n, t, layer, rate_bps, rate_bps, t});
        }
    }
    return assemble(instance, std::move(seeds), true);
}

Schedule schedule_from_clique(const std::vector<int>& clique, const RaidncGraph& graph,
                              int num_tx) {
    Schedule schedule;
    schedule.per_tx.resize(static_cast<std::size_t>(num_tx));
    for (const int id : clique) {
        const auto& vertex = graph.vertices[static_cast<std::size_t>(id)];
        auto& plan = schedule.per_tx[static_cast<std::size_t>(vertex.tx)];
        if (plan.active() && plan.adopted_rate_bps != vertex.rate_bps)
            throw std::invalid_argument(
                "invalid clique: mixed adopted rates at one transmitter");
        plan.adopted_rate_bps = vertex.rate_bps;
        plan.targeted_users.push_back(vertex.user);
        plan.coded_files.push_back(vertex.file);
    }
    for (auto& plan : schedule.per_tx) {
        std::sort(plan.targeted_users.begin(), plan.targeted_users.end());
        if (std::adjacent_find(plan.targeted_users.begin(), plan.targeted_users.end()) !=
            plan.targeted_users.end())
            throw std::invalid_argument("invalid clique: user targeted twice at a transmitter");
        std::sort(plan.coded_files.begin(), plan.coded_files.end());
        plan.coded_files.erase(std::unique(plan.coded_files.begin(), plan.coded_files.end()),
                               plan.coded_files.end());
    }
    return schedule;
}

void export_graph(std::ostream& out, const RaidncGraph& graph) {
    out << "# raidnc-graph vertices " << graph.vertex_count() << '\n';
    for (int i = 0; i < graph.vertex_count(); ++i) {
        const auto& v = graph.vertices[static_cast<std::size_t>(i)];
        out << "v " << i << " user " << v.user << " file " << v.file << " tx " << v.tx
            << " layer " << v.layer << " rate " << v.rate_bps << " weight " << v.weight_bps
            << '\n';
    }
    for (int i = 0; i < graph.vertex_count(); ++i)
        for (int j = i + 1; j < graph.vertex_count(); ++j)
            if (graph.adjacent(i, j)) out << "e " << i << ' ' << j << '\n';
}

}  // namespace ncsched
