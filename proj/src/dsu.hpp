#pragma once

#include <numeric>
#include <vector>

namespace cuspmin::detail {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        // smaller root wins so class representatives are deterministic
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace cuspmin::detail
