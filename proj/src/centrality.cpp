#include "semrec/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <ostream>
#include <thread>

namespace semrec {

const char* to_string(CentralityMeasure m) {
    switch (m) {
        case CentralityMeasure::degree: return "degree";
        case CentralityMeasure::closeness: return "closeness";
        case CentralityMeasure::betweenness: return "betweenness";
    }
    return "degree";
}

CentralityMeasure centrality_measure_from_string(const std::string& s) {
    if (s == "degree") return CentralityMeasure::degree;
    if (s == "closeness") return CentralityMeasure::closeness;
    if (s == "betweenness") return CentralityMeasure::betweenness;
    throw ConfigError("unknown centrality measure '" + s + "' (degree|closeness|betweenness)");
}

namespace {

// Runs fn(chunk_index) over fixed-size chunks of sources. Chunking depends
// only on n, so per-chunk results reduce to the same totals for any worker
// count.
constexpr std::size_t kChunkSources = 64;

template <typename Fn>
void run_chunked(std::size_t chunk_count, unsigned workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunk_count));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunk_count; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                std::size_t c = next.fetch_add(1);
                if (c >= chunk_count) break;
                fn(c);
            }
        });
    for (auto& t : pool) t.join();
}

struct BfsScratch {
    std::vector<int> dist;
    std::vector<int> queue;
};

// Unweighted BFS from source; returns number of reached nodes (incl. source)
// and the distance sum. dist entries are -1 for unreached nodes.
std::pair<std::size_t, long long> bfs(const SocialGraph& g, int source, BfsScratch& s) {
    const std::size_t n = g.node_count();
    s.dist.assign(n, -1);
    s.queue.clear();
    s.queue.push_back(source);
    s.dist[static_cast<std::size_t>(source)] = 0;
    std::size_t head = 0;
    long long dist_sum = 0;
    while (head < s.queue.size()) {
        int v = s.queue[head++];
        int dv = s.dist[static_cast<std::size_t>(v)];
        dist_sum += dv;
        for (const auto& nb : g.neighbors(v)) {
            if (s.dist[static_cast<std::size_t>(nb.node)] >= 0) continue;
            s.dist[static_cast<std::size_t>(nb.node)] = dv + 1;
            s.queue.push_back(nb.node);
        }
    }
    return {s.queue.size(), dist_sum};
}

}  // namespace

CentralityScores degree_centrality(const SocialGraph& g, bool normalized) {
    const std::size_t n = g.node_count();
    CentralityScores out{CentralityMeasure::degree, normalized, std::vector<double>(n, 0.0)};
    for (std::size_t v = 0; v < n; ++v) {
        double d = static_cast<double>(g.degree(static_cast<int>(v)));
        out.score[v] = normalized && n > 1 ? d / static_cast<double>(n - 1) : d;
    }
    return out;
}

CentralityScores closeness_centrality(const SocialGraph& g, unsigned workers) {
    const std::size_t n = g.node_count();
    CentralityScores out{CentralityMeasure::closeness, true, std::vector<double>(n, 0.0)};
    if (n == 0) return out;

    const std::size_t chunks = (n + kChunkSources - 1) / kChunkSources;
    run_chunked(chunks, workers, [&](std::size_t c) {
        BfsScratch scratch;
        std::size_t begin = c * kChunkSources;
        std::size_t end = std::min(n, begin + kChunkSources);
        for (std::size_t v = begin; v < end; ++v) {
            auto [reached, dist_sum] = bfs(g, static_cast<int>(v), scratch);
            if (reached <= 1 || dist_sum == 0) continue;  // isolated node
            double reach = static_cast<double>(reached - 1);
            double score = reach / static_cast<double>(dist_sum);
            if (n > 1) score *= reach / static_cast<double>(n - 1);
            out.score[v] = score;
        }
    });
    return out;
}

CentralityScores betweenness_centrality(const SocialGraph& g, unsigned workers) {
    const std::size_t n = g.node_count();
    CentralityScores out{CentralityMeasure::betweenness, false, std::vector<double>(n, 0.0)};
    if (n < 3) return out;

    // Brandes accumulation per source; per-chunk partial sums keep the final
    // reduction order fixed regardless of worker count.
    const std::size_t chunks = (n + kChunkSources - 1) / kChunkSources;
    std::vector<std::vector<double>> partial(chunks);

    run_chunked(chunks, workers, [&](std::size_t c) {
        std::vector<double>& acc = partial[c];
        acc.assign(n, 0.0);
        std::vector<int> dist(n);
        std::vector<double> sigma(n);
        std::vector<double> delta(n);
        std::vector<std::vector<int>> preds(n);
        std::vector<int> order;
        order.reserve(n);

        std::size_t begin = c * kChunkSources;
        std::size_t end = std::min(n, begin + kChunkSources);
        for (std::size_t sidx = begin; sidx < end; ++sidx) {
            int s = static_cast<int>(sidx);
            std::fill(dist.begin(), dist.end(), -1);
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto& p : preds) p.clear();
            order.clear();

            dist[sidx] = 0;
            sigma[sidx] = 1.0;
            order.push_back(s);
            std::size_t head = 0;
            while (head < order.size()) {
                int v = order[head++];
                for (const auto& nb : g.neighbors(v)) {
                    std::size_t w = static_cast<std::size_t>(nb.node);
                    if (dist[w] < 0) {
                        dist[w] = dist[static_cast<std::size_t>(v)] + 1;
                        order.push_back(nb.node);
                    }
                    if (dist[w] == dist[static_cast<std::size_t>(v)] + 1) {
                        sigma[w] += sigma[static_cast<std::size_t>(v)];
                        preds[w].push_back(v);
                    }
                }
            }
            for (std::size_t i = order.size(); i-- > 1;) {
                std::size_t w = static_cast<std::size_t>(order[i]);
                double coeff = (1.0 + delta[w]) / sigma[w];
                for (int v : preds[w]) delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] * coeff;
                if (static_cast<int>(w) != s) acc[w] += delta[w];
            }
        }
    });

    for (std::size_t c = 0; c < chunks; ++c)
        for (std::size_t v = 0; v < n; ++v) out.score[v] += partial[c][v];
    // Each unordered pair was visited from both endpoints.
    for (double& s : out.score) s /= 2.0;
    return out;
}

CentralityScores compute_centrality(const SocialGraph& g, CentralityMeasure measure) {
    switch (measure) {
        case CentralityMeasure::degree: return degree_centrality(g, true);
        case CentralityMeasure::closeness: return closeness_centrality(g);
        case CentralityMeasure::betweenness: return betweenness_centrality(g);
    }
    return degree_centrality(g, true);
}

std::vector<int> influence_order(const SocialGraph& g, const CentralityScores& scores) {
    std::vector<int> order(g.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    // Node indexes are already in ascending id order, so a stable sort by
    // descending score realizes the id tie-break.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores.of(a) > scores.of(b); });
    return order;
}

std::vector<UserId> influence_ranking(const SocialGraph& g, CentralityMeasure measure) {
    CentralityScores scores = compute_centrality(g, measure);
    std::vector<UserId> out;
    out.reserve(g.node_count());
    for (int idx : influence_order(g, scores)) out.push_back(g.node_id(idx));
    return out;
}

void write_centrality(std::ostream& out, const SocialGraph& g, const CentralityScores& scores) {
    out << "node,measure,score\n";
    char buf[64];
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        std::snprintf(buf, sizeof(buf), "%.9g", scores.score[v]);
        out << g.node_id(static_cast<int>(v)) << "," << to_string(scores.measure) << "," << buf << "\n";
    }
}

}  // namespace semrec
