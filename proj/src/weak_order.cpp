#include "hyper_ricci/weak_order.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace hyper_ricci {

WeakOrder::WeakOrder(std::size_t n, std::vector<std::vector<VertexIndex>> blocks)
    : blocks_(std::move(blocks)), rank_(n, n) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].empty()) throw InvalidInput("weak order has an empty block");
        std::sort(blocks_[i].begin(), blocks_[i].end());
        for (VertexIndex v : blocks_[i]) {
            if (v >= n || rank_[v] != n) throw InvalidInput("weak order blocks must partition the vertices");
            rank_[v] = i;
        }
    }
    for (std::size_t r : rank_)
        if (r == n) throw InvalidInput("weak order blocks must cover the vertices");
}

std::string WeakOrder::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i > 0) out += '>';
        out += '{';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j > 0) out += ',';
            out += std::to_string(blocks_[i][j]);
        }
        out += '}';
    }
    return out;
}

std::size_t fubini_number(std::size_t n) {
    // a(n) = sum_{k=1}^{n} C(n,k) a(n-k), a(0) = 1
    std::vector<std::size_t> a(n + 1, 0);
    a[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        std::size_t binom = 1;
        for (std::size_t k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            a[m] += binom * a[m - k];
        }
    }
    return a[n];
}

namespace {

// Chooses the next block as a nonempty subset of the remaining vertices (bitmask).
bool enumerate(std::size_t n, std::uint32_t remaining, std::vector<std::vector<VertexIndex>>& prefix,
               const std::function<bool(const WeakOrder&)>& visit) {
    if (remaining == 0) return visit(WeakOrder(n, prefix));
    for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
        std::vector<VertexIndex> block;
        for (std::size_t v = 0; v < n; ++v)
            if (sub & (1u << v)) block.push_back(v);
        prefix.push_back(std::move(block));
        bool go_on = enumerate(n, remaining & ~sub, prefix, visit);
        prefix.pop_back();
        if (!go_on) return false;
    }
    return true;
}

}  // namespace

void for_each_weak_order(std::size_t n, const std::function<bool(const WeakOrder&)>& visit) {
    if (n == 0 || n > 20) throw InvalidInput("weak-order enumeration needs 1 <= n <= 20");
    std::vector<std::vector<VertexIndex>> prefix;
    enumerate(n, (1u << n) - 1u, prefix, visit);
}

std::vector<WeakOrder> all_weak_orders(std::size_t n) {
    std::vector<WeakOrder> out;
    out.reserve(fubini_number(n));
    for_each_weak_order(n, [&](const WeakOrder& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

template <class S>
WeakOrder weak_order_of(const std::vector<S>& values, const S& tol) {
    const std::size_t n = values.size();
    std::vector<VertexIndex> order(n);
    std::iota(order.begin(), order.end(), VertexIndex{0});
    std::stable_sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) { return values[a] > values[b]; });
    std::vector<std::vector<VertexIndex>> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || values[order[i - 1]] - values[order[i]] > tol) blocks.emplace_back();
        blocks.back().push_back(order[i]);
    }
    return WeakOrder(n, std::move(blocks));
}

template WeakOrder weak_order_of<double>(const std::vector<double>&, const double&);
template WeakOrder weak_order_of<Rational>(const std::vector<Rational>&, const Rational&);

}  // namespace hyper_ricci
