#ifndef TEXWEAVE_WARD_HPP
#define TEXWEAVE_WARD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace texweave {

/// One agglomeration step. cluster ids 0..n-1 are the leaves; the merge at
/// position k of the sequence creates cluster id n+k. cluster_a < cluster_b
/// always holds.
struct merge_step {
    int cluster_a = 0;
    int cluster_b = 0;
    double cost = 0.0; // Ward objective increment of this merge
    int new_size = 0;
};

struct dendrogram {
    int leaf_count = 0;
    std::vector<merge_step> merges;
};

namespace detail {

// Increase in total within-cluster sum of squares when merging two clusters
// with the given sizes and sums. Both the optimized path and the naive test
// reference evaluate this exact expression, so tie comparisons see
// bit-identical costs.
inline double ward_cost(int size_a, double sum_a, int size_b, double sum_b)
{
    const double mean_a = sum_a / size_a;
    const double mean_b = sum_b / size_b;
    const double d = mean_a - mean_b;
    return static_cast<double>(size_a) * size_b / (static_cast<double>(size_a) + size_b) * d * d;
}

struct pair_candidate {
    double cost;
    int a, b;
    bool operator>(const pair_candidate& o) const
    {
        if (cost != o.cost) return cost > o.cost;
        if (a != o.a) return a > o.a;
        return b > o.b;
    }
};

} // namespace detail

/// Agglomerative clustering with Ward's minimum-variance linkage over scalar
/// features. Repeatedly merges the pair of active clusters with the least
/// cost; ties go to the lexicographically lowest (a, b) id pair in creation
/// order. Candidate pairs sit in a lazy-deletion min-heap: a popped entry is
/// stale iff one of its clusters has already been merged away, because a
/// pair's cost never changes while both clusters exist.
inline dendrogram ward_cluster(std::span<const double> features)
{
    const int n = static_cast<int>(features.size());
    if (n < 2)
        throw std::invalid_argument("ward clustering needs at least 2 features");

    std::vector<int> size(static_cast<std::size_t>(n) * 2 - 1, 0);
    std::vector<double> sum(size.size(), 0.0);
    std::vector<char> active(size.size(), 0);
    for (int i = 0; i < n; ++i) {
        size[i] = 1;
        sum[i] = features[i];
        active[i] = 1;
    }

    std::priority_queue<detail::pair_candidate, std::vector<detail::pair_candidate>,
                        std::greater<detail::pair_candidate>> heap;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            heap.push({detail::ward_cost(size[a], sum[a], size[b], sum[b]), a, b});

    dendrogram result;
    result.leaf_count = n;
    result.merges.reserve(static_cast<std::size_t>(n) - 1);
    std::vector<int> live;
    live.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) live.push_back(i);

    int next_id = n;
    while (static_cast<int>(live.size()) > 1) {
        detail::pair_candidate top = heap.top();
        heap.pop();
        if (!active[top.a] || !active[top.b])
            continue;

        active[top.a] = active[top.b] = 0;
        size[next_id] = size[top.a] + size[top.b];
        sum[next_id] = sum[top.a] + sum[top.b];
        active[next_id] = 1;

        live.erase(std::remove_if(live.begin(), live.end(),
                                  [&](int id) { return id == top.a || id == top.b; }),
                   live.end());
        for (int id : live)
            heap.push({detail::ward_cost(size[id], sum[id], size[next_id], sum[next_id]),
                       id, next_id});
        live.push_back(next_id);

        result.merges.push_back({top.a, top.b, top.cost, size[next_id]});
        ++next_id;
    }
    return result;
}

/// The two leaf sets obtained by undoing the dendrogram's final merge.
/// `lower` descends from the final merge's lower-id child.
struct two_cluster_partition {
    std::vector<int> lower;
    std::vector<int> upper;
};

inline two_cluster_partition cut_two(const dendrogram& d)
{
    if (d.leaf_count < 2 || d.merges.empty())
        throw std::invalid_argument("dendrogram has no merge to undo");

    auto collect_leaves = [&](int id) {
        std::vector<int> leaves;
        std::vector<int> stack{id};
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            if (cur < d.leaf_count) {
                leaves.push_back(cur);
            } else {
                const auto& m = d.merges[static_cast<std::size_t>(cur - d.leaf_count)];
                stack.push_back(m.cluster_a);
                stack.push_back(m.cluster_b);
            }
        }
        std::sort(leaves.begin(), leaves.end());
        return leaves;
    };

    const auto& last = d.merges.back();
    return {collect_leaves(last.cluster_a), collect_leaves(last.cluster_b)};
}

/// Per-leaf labels (0 = from the partition's lower side, 1 = upper) plus the
/// id of the cluster designated defective.
struct cluster_assignment {
    std::vector<std::uint8_t> labels;
    int defective_cluster = 0;
    std::array<int, 2> sizes{0, 0};
};

namespace detail {

inline double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// Designates the minority cluster defective (defective periodic units are
/// assumed fewer than defect-free ones). On an exact size tie the cluster
/// whose mean energy deviates more from the global median energy wins; if
/// even that ties, the lower cluster id does.
inline cluster_assignment select_defective(const two_cluster_partition& partition,
                                           std::span<const double> energies)
{
    if (partition.lower.empty() || partition.upper.empty())
        throw std::invalid_argument("both clusters must be nonempty");

    cluster_assignment out;
    out.labels.assign(energies.size(), 0);
    for (int leaf : partition.upper)
        out.labels[static_cast<std::size_t>(leaf)] = 1;
    out.sizes = {static_cast<int>(partition.lower.size()),
                 static_cast<int>(partition.upper.size())};

    if (out.sizes[0] != out.sizes[1]) {
        out.defective_cluster = out.sizes[0] < out.sizes[1] ? 0 : 1;
        return out;
    }

    const double med = detail::median({energies.begin(), energies.end()});
    auto mean_of = [&](const std::vector<int>& leaves) {
        double s = 0.0;
        for (int leaf : leaves) s += energies[static_cast<std::size_t>(leaf)];
        return s / static_cast<double>(leaves.size());
    };
    const double dev_lower = std::abs(mean_of(partition.lower) - med);
    const double dev_upper = std::abs(mean_of(partition.upper) - med);
    out.defective_cluster = dev_upper > dev_lower ? 1 : 0;
    return out;
}

} // namespace texweave

#endif
