#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsmax {

using Item = int;

// Sorted, duplicate-free vector of item ids. All public APIs taking an
// ItemSet expect this canonical form; set_insert / set_erase preserve it.
using ItemSet = std::vector<Item>;

inline bool set_contains(const ItemSet& s, Item x) {
    return std::binary_search(s.begin(), s.end(), x);
}

inline ItemSet set_insert(const ItemSet& s, Item x) {
    ItemSet out;
    out.reserve(s.size() + 1);
    auto it = std::lower_bound(s.begin(), s.end(), x);
    out.insert(out.end(), s.begin(), it);
    out.push_back(x);
    out.insert(out.end(), it, s.end());
    return out;
}

inline ItemSet set_erase(const ItemSet& s, Item x) {
    ItemSet out;
    out.reserve(s.size());
    for (Item v : s)
        if (v != x) out.push_back(v);
    return out;
}

inline ItemSet set_canonical(ItemSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Full ground set {0, ..., n-1}.
inline ItemSet full_set(int n) {
    ItemSet s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[i] = i;
    return s;
}

inline ItemSet set_complement(const ItemSet& s, int n) {
    ItemSet out;
    out.reserve(static_cast<std::size_t>(n) - s.size());
    std::size_t j = 0;
    for (int i = 0; i < n; ++i) {
        if (j < s.size() && s[j] == i) {
            ++j;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

// Subset-mask helpers for brute-force enumeration (n <= 31).
inline ItemSet set_from_mask(std::uint32_t mask) {
    ItemSet s;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1u) s.push_back(i);
    return s;
}

inline std::uint32_t mask_from_set(const ItemSet& s) {
    std::uint32_t m = 0;
    for (Item x : s) {
        if (x < 0 || x >= 31) throw std::domain_error("mask_from_set: item out of mask range");
        m |= 1u << x;
    }
    return m;
}

struct GroundSet {
    int n = 0;

    explicit GroundSet(int count) : n(count) {
        if (n <= 0) throw std::invalid_argument("GroundSet: n must be positive");
    }

    ItemSet items() const { return full_set(n); }
    bool contains(Item x) const { return x >= 0 && x < n; }
};

inline void require_subset_of_ground(const ItemSet& s, int n, const char* who) {
    for (Item x : s)
        if (x < 0 || x >= n)
            throw std::domain_error(std::string(who) + ": item outside ground set");
}

}  // namespace rsmax
