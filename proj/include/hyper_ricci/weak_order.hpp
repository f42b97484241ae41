#pragma once

#include "hyper_ricci/system.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace hyper_ricci {

/// Ordered partition I_0 > I_1 > ... > I_{l-1} of the vertex indices. A
/// function g lies in the region of the order when D^{-1} g is constant on
/// blocks and strictly decreasing from block to block.
class WeakOrder {
public:
    WeakOrder() = default;
    /// Throws InvalidInput unless the blocks are nonempty, disjoint and cover 0..n-1.
    WeakOrder(std::size_t n, std::vector<std::vector<VertexIndex>> blocks);

    std::size_t size() const { return rank_.size(); }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<VertexIndex>>& blocks() const { return blocks_; }
    const std::vector<VertexIndex>& block(std::size_t i) const { return blocks_[i]; }
    /// Index of the block containing v; 0 is the highest block.
    std::size_t rank(VertexIndex v) const { return rank_[v]; }

    /// e.g. "{0,2}>{1}"
    std::string to_string() const;

    friend bool operator==(const WeakOrder& a, const WeakOrder& b) { return a.rank_ == b.rank_; }

private:
    std::vector<std::vector<VertexIndex>> blocks_;
    std::vector<std::size_t> rank_;
};

/// Number of weak orders on n elements (ordered Bell / Fubini number).
std::size_t fubini_number(std::size_t n);

/// Calls `visit` once per weak order on {0..n-1}; stops early when it returns false.
void for_each_weak_order(std::size_t n, const std::function<bool(const WeakOrder&)>& visit);

/// All weak orders on {0..n-1}, in the enumeration order of for_each_weak_order.
std::vector<WeakOrder> all_weak_orders(std::size_t n);

/// Weak order of `values` (descending), merging consecutive sorted values
/// whose gap is at most `tol`.
template <class S>
WeakOrder weak_order_of(const std::vector<S>& values, const S& tol);

}  // namespace hyper_ricci
