#include <xaikg/metrics.hpp>

#include <xaikg/error.hpp>
#include <xaikg/feedback.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace xaikg {

namespace {

/// Compressed undirected adjacency over dense node indices (NodeId seq - 1), without
/// self-loops or duplicate neighbours.
class UndirectedView {
public:
    explicit UndirectedView(const Graph& graph) : offsets_(graph.node_count() + 1, 0) {
        const std::size_t n = graph.node_count();
        std::vector<std::vector<std::uint32_t>> lists(n);
        for (const Edge& e : graph.edges()) {
            if (e.src == e.dst) continue;
            auto s = static_cast<std::uint32_t>(e.src.seq - 1);
            auto d = static_cast<std::uint32_t>(e.dst.seq - 1);
            lists[s].push_back(d);
            lists[d].push_back(s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto& l = lists[i];
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            offsets_[i + 1] = offsets_[i] + l.size();
        }
        targets_.reserve(offsets_.back());
        for (auto& l : lists) targets_.insert(targets_.end(), l.begin(), l.end());
    }

    std::size_t size() const noexcept { return offsets_.size() - 1; }

    std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
        return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> targets_;
};

struct SourceStats {
    std::uint64_t length_sum = 0;
    std::uint64_t reached = 0;  // excluding the source itself
    std::uint64_t eccentricity = 0;
};

class BreadthFirst {
public:
    explicit BreadthFirst(const UndirectedView& view) : view_(view), dist_(view.size(), kUnseen) {
        queue_.reserve(view.size());
    }

    SourceStats run(std::uint32_t source) {
        SourceStats stats;
        queue_.clear();
        queue_.push_back(source);
        dist_[source] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const std::uint32_t v = queue_[head];
            const std::uint32_t next = dist_[v] + 1;
            for (std::uint32_t w : view_.neighbors(v)) {
                if (dist_[w] != kUnseen) continue;
                dist_[w] = next;
                queue_.push_back(w);
                stats.length_sum += next;
                ++stats.reached;
                stats.eccentricity = std::max<std::uint64_t>(stats.eccentricity, next);
            }
        }
        for (std::uint32_t v : queue_) dist_[v] = kUnseen;
        return stats;
    }

private:
    static constexpr std::uint32_t kUnseen = UINT32_MAX;
    const UndirectedView& view_;
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> queue_;
};

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

GraphMetrics exact_metrics(const Graph& graph) {
    GraphMetrics m;
    m.node_count = graph.node_count();
    m.path_count = graph.edge_count();
    UndirectedView view(graph);
    BreadthFirst bfs(view);
    for (std::uint32_t s = 0; s < view.size(); ++s) {
        SourceStats st = bfs.run(s);
        m.tpl += st.length_sum;
        m.reachable_pair_count += st.reached;
        m.mpl = std::max(m.mpl, st.eccentricity);
    }
    const std::uint64_t n = m.node_count;
    m.unreachable_pair_count = (n < 2 ? 0 : n * (n - 1)) - m.reachable_pair_count;
    m.apl = ratio(m.tpl, m.reachable_pair_count);
    return m;
}

std::uint64_t sample_size(double fraction, std::uint64_t node_count) {
    // The relative slack keeps fractions such as 0.3 * 10 (3.0000000000000004) from rounding up.
    const double scaled = fraction * static_cast<double>(node_count);
    const auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(scaled - 1e-9 * std::max(1.0, scaled))));
    return std::max<std::uint64_t>(1, std::min(m, node_count));
}

GraphMetrics sampled_metrics(const Graph& graph, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "sample fraction must be in (0, 1]");
    }
    if (graph.node_count() == 0) throw Error(ErrorCode::invalid_argument, "cannot sample an empty graph");

    GraphMetrics m;
    m.node_count = graph.node_count();
    m.path_count = graph.edge_count();
    m.sampled = true;
    m.sample_fraction = fraction;
    m.seed = seed;

    const std::uint64_t n = m.node_count;
    std::vector<std::uint32_t> remaining(n);
    for (std::uint32_t i = 0; i < n; ++i) remaining[i] = i;
    SplitMix64 rng(seed);
    const std::uint64_t sources = sample_size(fraction, n);

    UndirectedView view(graph);
    BreadthFirst bfs(view);
    std::uint64_t length_sum = 0;
    for (std::uint64_t i = 0; i < sources; ++i) {
        const std::uint64_t idx = rng.next() % remaining.size();
        const std::uint32_t source = remaining[idx];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
        SourceStats st = bfs.run(source);
        length_sum += st.length_sum;
        m.reachable_pair_count += st.reached;
        m.mpl = std::max(m.mpl, st.eccentricity);
    }
    m.unreachable_pair_count = sources * (n - 1) - m.reachable_pair_count;
    m.apl = ratio(length_sum, m.reachable_pair_count);
    m.tpl = static_cast<std::uint64_t>(std::llround(m.apl * static_cast<double>(n) * static_cast<double>(n - 1)));
    return m;
}

nlohmann::json to_json(const GraphMetrics& metrics) {
    nlohmann::json out{
        {"node_count", metrics.node_count},
        {"path_count", metrics.path_count},
        {"tpl", metrics.tpl},
        {"mpl", metrics.mpl},
        {"apl", metrics.apl},
        {"reachable_pair_count", metrics.reachable_pair_count},
        {"unreachable_pair_count", metrics.unreachable_pair_count},
        {"sampled", metrics.sampled},
        {"sample_fraction", metrics.sample_fraction},
    };
    if (metrics.seed) out["seed"] = *metrics.seed;
    return out;
}

}  // namespace xaikg
