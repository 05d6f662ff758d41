#pragma once

// Set partitions of {1..n} in restricted-growth-string (RGS) order, with the
// incremental extension step and Bell/Stirling counts.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fdb/errors.hpp"

namespace fdb {

// Hard cap on the ground-set size / differentiation order. B(12) = 4213597
// partitions and a 4096-coefficient algebra downstream stay at desk scale.
inline constexpr int kMaxOrder = 12;

inline void check_order_cap(int n, const char* what) {
    if (n < 0) throw contract_error(std::string(what) + ": negative size " + std::to_string(n));
    if (n > kMaxOrder)
        throw size_error(std::string(what) + ": n=" + std::to_string(n) +
                         " exceeds cap kMaxOrder=" + std::to_string(kMaxOrder));
}

// A set partition of {1..n} in canonical form: blocks ordered by minimal
// element, each block strictly increasing. n=0 has zero blocks.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }

    bool operator==(const Partition& other) const = default;

    // Canonical-form validation: disjoint, covering, non-empty, min-ordered.
    bool is_canonical() const {
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        int prev_min = 0;
        for (const auto& block : blocks) {
            if (block.empty()) return false;
            if (block.front() <= prev_min) return false;  // min-element ordering
            prev_min = block.front();
            int prev = 0;
            for (int e : block) {
                if (e < 1 || e > n || e <= prev || seen[static_cast<std::size_t>(e)]) return false;
                seen[static_cast<std::size_t>(e)] = 1;
                prev = e;
            }
        }
        for (int e = 1; e <= n; ++e)
            if (!seen[static_cast<std::size_t>(e)]) return false;
        return true;
    }

    // Restricted growth string "a1a2...an": a_i is the 0-based block index of i.
    std::string to_rgs() const {
        std::vector<int> label(static_cast<std::size_t>(n) + 1, -1);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int e : blocks[b]) label[static_cast<std::size_t>(e)] = static_cast<int>(b);
        std::string out;
        for (int i = 1; i <= n; ++i) out += std::to_string(label[static_cast<std::size_t>(i)]);
        return out;
    }

    // Block form "{1,2}{3}", whitespace-free.
    std::string to_block_form() const {
        std::string out;
        for (const auto& block : blocks) {
            out += '{';
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(block[i]);
            }
            out += '}';
        }
        return out;
    }

    static Partition from_rgs(const std::vector<int>& rgs) {
        Partition p;
        p.n = static_cast<int>(rgs.size());
        int nblocks = rgs.empty() ? 0 : 1 + *std::max_element(rgs.begin(), rgs.end());
        p.blocks.resize(static_cast<std::size_t>(nblocks));
        for (int i = 0; i < p.n; ++i)
            p.blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
        return p;
    }
};

// All set partitions of {1..n}, each exactly once, in RGS-lexicographic order.
// Length equals bell_number(n); n=0 yields the single empty partition.
inline std::vector<Partition> enumerate_partitions(int n) {
    check_order_cap(n, "enumerate_partitions");
    std::vector<Partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    // Recursive RGS generation: position i may take 0..1+max(prefix).
    auto rec = [&](auto&& self, int i, int maxv) -> void {
        if (i == n) {
            out.push_back(Partition::from_rgs(rgs));
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, std::max(maxv, v));
        }
    };
    rec(rec, 0, -1);
    return out;
}

// Successors of a partition over {1..n+1}: element n+1 appended to each
// existing block in order, then as a new singleton block.
inline std::vector<Partition> extend_partition(const Partition& p) {
    check_order_cap(p.n + 1, "extend_partition");
    std::vector<Partition> out;
    out.reserve(p.blocks.size() + 1);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        Partition q = p;
        q.n = p.n + 1;
        q.blocks[b].push_back(p.n + 1);
        out.push_back(std::move(q));
    }
    Partition q = p;
    q.n = p.n + 1;
    q.blocks.push_back({p.n + 1});
    out.push_back(std::move(q));
    return out;
}

inline std::vector<Partition> extend_partitions(const std::vector<Partition>& parts) {
    std::vector<Partition> out;
    for (const auto& p : parts) {
        if (!parts.empty() && p.n != parts.front().n)
            throw contract_error("extend_partitions: mixed ground-set sizes " +
                                 std::to_string(parts.front().n) + " and " + std::to_string(p.n));
        auto succ = extend_partition(p);
        out.insert(out.end(), succ.begin(), succ.end());
    }
    return out;
}

// S(n,k): partitions of {1..n} into exactly k blocks, via the recursion
// S(n+1,k) = k*S(n,k) + S(n,k-1).
inline std::uint64_t stirling2(int n, int k) {
    check_order_cap(n, "stirling2");
    check_order_cap(k, "stirling2");
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;  // S(0,0) = 1
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j >= 1; --j)
            row[static_cast<std::size_t>(j)] =
                static_cast<std::uint64_t>(j) * row[static_cast<std::size_t>(j)] +
                row[static_cast<std::size_t>(j - 1)];
        row[0] = 0;  // S(i,0) = 0 for i >= 1
    }
    return row[static_cast<std::size_t>(k)];
}

inline std::uint64_t bell_number(int n) {
    check_order_cap(n, "bell_number");
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) total += stirling2(n, k);
    return total;
}

}  // namespace fdb
