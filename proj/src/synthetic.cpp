#include "semrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

#include "semrec/ingest.hpp"

namespace semrec {

namespace {

// splitmix64: portable across standard libraries, unlike <random>
// distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::size_t next(std::size_t bound) { return static_cast<std::size_t>(next_u64() % bound); }

    // First k elements of a Fisher-Yates pass over [0, n).
    std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        k = std::min(k, n);
        for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + next(n - i)]);
        pool.resize(k);
        return pool;
    }
};

std::string padded_id(char prefix, std::size_t idx, std::size_t total) {
    int width = 1;
    for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++width;
    width = std::max(width, 4);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%0*zu", prefix, width, idx);
    return buf;
}

// Contiguous balanced blocks: member i of n goes to block i*k/n.
std::size_t block_of(std::size_t idx, std::size_t n, std::size_t k) {
    return idx * k / n;
}

std::pair<std::size_t, std::size_t> block_range(std::size_t block, std::size_t n, std::size_t k) {
    // First index with block_of == block is ceil(block * n / k).
    std::size_t begin = (block * n + k - 1) / k;
    std::size_t end = ((block + 1) * n + k - 1) / k;
    return {begin, std::min(end, n)};
}

}  // namespace

void SyntheticParams::check() const {
    if (n_users < 1 || n_items < 1 || n_concepts < 1)
        throw ConfigError("synthetic: user, item and concept counts must be >= 1");
    if (community_count < 1) throw ConfigError("synthetic: community_count must be >= 1");
    if (community_count > n_users)
        throw ConfigError("synthetic: community_count exceeds n_users");
    if (community_count > n_items)
        throw ConfigError("synthetic: community_count exceeds n_items");
    if (community_count > n_concepts)
        throw ConfigError("synthetic: community_count exceeds n_concepts");
    if (query_count < 1 || query_count > n_items)
        throw ConfigError("synthetic: query_count must lie in [1, n_items]");
    if (active_fraction <= 0.0 || active_fraction > 1.0)
        throw ConfigError("synthetic: active_fraction must lie in (0, 1]");
    if (withheld_fraction <= 0.0 || withheld_fraction > 1.0)
        throw ConfigError("synthetic: withheld_fraction must lie in (0, 1]");
    if (in_ratings_active < 1) throw ConfigError("synthetic: in_ratings_active must be >= 1");
    if (concepts_per_item_min < 1 || concepts_per_item_max < concepts_per_item_min)
        throw ConfigError("synthetic: bad concepts_per_item range");
}

SyntheticDataset generate_synthetic(const SyntheticParams& p) {
    p.check();
    Rng rng(p.seed);

    const std::size_t cc = p.community_count;
    std::vector<UserId> user_ids(p.n_users);
    for (std::size_t u = 0; u < p.n_users; ++u) user_ids[u] = padded_id('u', u, p.n_users);
    std::vector<ItemId> item_ids(p.n_items);
    for (std::size_t i = 0; i < p.n_items; ++i) item_ids[i] = padded_id('p', i, p.n_items);
    std::vector<ConceptId> concept_ids(p.n_concepts);
    for (std::size_t c = 0; c < p.n_concepts; ++c) concept_ids[c] = padded_id('c', c, p.n_concepts);

    // Items: base overall score and home-pool concepts.
    SyntheticDataset out;
    std::vector<double> item_base(p.n_items);
    for (std::size_t i = 0; i < p.n_items; ++i) {
        item_base[i] = rng.next(2) == 0 ? 4.0 : 5.0;
        std::size_t home = block_of(i, p.n_items, cc);
        auto [cb, ce] = block_range(home, p.n_concepts, cc);
        std::size_t pool = ce - cb;
        std::size_t want = p.concepts_per_item_min +
                           rng.next(p.concepts_per_item_max - p.concepts_per_item_min + 1);
        want = std::min(want, pool);
        for (std::size_t offset : rng.sample(pool, want))
            out.catalog.add(item_ids[i], concept_ids[cb + offset]);
    }

    // Query items: round-robin across communities, the block order shuffled.
    std::vector<std::vector<std::size_t>> shuffled_blocks(cc);
    for (std::size_t c = 0; c < cc; ++c) {
        auto [ib, ie] = block_range(c, p.n_items, cc);
        std::vector<std::size_t> offsets = rng.sample(ie - ib, ie - ib);
        shuffled_blocks[c].reserve(offsets.size());
        for (std::size_t o : offsets) shuffled_blocks[c].push_back(ib + o);
    }
    std::vector<std::size_t> cursor(cc, 0);
    std::set<std::size_t> query_set;
    for (std::size_t q = 0; q < p.query_count; ++q) {
        // Walk communities round-robin; fall through to any community with
        // items left when one is exhausted.
        for (std::size_t step = 0; step < cc; ++step) {
            std::size_t c = (q + step) % cc;
            if (cursor[c] < shuffled_blocks[c].size()) {
                std::size_t item = shuffled_blocks[c][cursor[c]++];
                out.query_items.push_back(item_ids[item]);
                query_set.insert(item);
                break;
            }
        }
    }

    // Activity classes: leading share of each community block is active.
    std::vector<bool> active(p.n_users, false);
    for (std::size_t c = 0; c < cc; ++c) {
        auto [ub, ue] = block_range(c, p.n_users, cc);
        std::size_t n_active = static_cast<std::size_t>(
            std::ceil(p.active_fraction * static_cast<double>(ue - ub)));
        for (std::size_t u = ub; u < ub + n_active && u < ue; ++u) active[u] = true;
    }

    // Planted ground truth: withheld active members per query item.
    std::set<std::pair<std::size_t, std::size_t>> withheld;  // (user, item)
    for (const ItemId& qid : out.query_items) {
        std::size_t item = static_cast<std::size_t>(
            std::find(item_ids.begin(), item_ids.end(), qid) - item_ids.begin());
        std::size_t home = block_of(item, p.n_items, cc);
        auto [ub, ue] = block_range(home, p.n_users, cc);
        std::vector<std::size_t> actives;
        for (std::size_t u = ub; u < ue; ++u)
            if (active[u]) actives.push_back(u);
        if (actives.empty()) continue;
        std::size_t hold = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::llround(p.withheld_fraction * static_cast<double>(actives.size()))));
        hold = std::min(hold, actives.size());
        for (std::size_t offset : rng.sample(actives.size(), hold)) {
            std::size_t u = actives[offset];
            withheld.insert({u, item});
            out.truth.add(item_ids[item], user_ids[u], item_base[item]);
        }
    }

    // Ratings. K = 3 attributes on the default 1..5 scale; the overall
    // attribute (3) carries the exact community agreement.
    RatingsStore store(RatingScale{}, 3);
    auto rate = [&](std::size_t u, std::size_t item, double overall) {
        for (AttributeId a = 1; a <= 2; ++a) {
            double delta = static_cast<double>(rng.next(3)) - 1.0;
            store.add(user_ids[u], item_ids[item], a, RatingScale{}.clamp(overall + delta));
        }
        store.add(user_ids[u], item_ids[item], 3, overall);
    };

    for (std::size_t u = 0; u < p.n_users; ++u) {
        std::size_t home = block_of(u, p.n_users, cc);
        auto [ib, ie] = block_range(home, p.n_items, cc);
        std::size_t block_items = ie - ib;
        std::size_t r_in = std::min(active[u] ? p.in_ratings_active : p.in_ratings_casual, block_items);
        for (std::size_t offset : rng.sample(block_items, r_in)) {
            std::size_t item = ib + offset;
            if (withheld.count({u, item})) continue;
            rate(u, item, item_base[item]);
        }
        // Out-of-community ratings: skewed low so foreign concepts stay out
        // of the semantic profiles.
        std::size_t outside = p.n_items - block_items;
        if (outside == 0 || p.out_ratings == 0) continue;
        std::size_t r_out = std::min(p.out_ratings, outside);
        for (std::size_t offset : rng.sample(outside, r_out)) {
            std::size_t item = offset < ib ? offset : offset + block_items;
            if (withheld.count({u, item})) continue;
            rate(u, item, 1.0 + static_cast<double>(rng.next(3)));
        }
    }
    store.finalize();
    out.store = std::move(store);
    out.truth.check_disjoint(out.store);
    return out;
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
    out << "item,user,score\n";
    for (const auto& [item, users] : truth.all())
        for (const auto& [user, score] : users) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", score);
            out << item << "," << user << "," << buf << "\n";
        }
}

GroundTruth read_ground_truth(std::istream& in) {
    GroundTruth truth;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && line == "item,user,score") {
            first = false;
            continue;
        }
        first = false;
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError(lineno, "expected item,user,score");
        try {
            truth.add(line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1),
                      std::stod(line.substr(c2 + 1)));
        } catch (const std::exception&) {
            throw ParseError(lineno, "non-numeric score");
        }
    }
    return truth;
}

void write_queries(std::ostream& out, const std::vector<ItemId>& items) {
    out << "item\n";
    for (const ItemId& i : items) out << i << "\n";
}

std::vector<ItemId> read_queries(std::istream& in) {
    std::vector<ItemId> items;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (first && line == "item") {
            first = false;
            continue;
        }
        first = false;
        items.push_back(line);
    }
    return items;
}

}  // namespace semrec
