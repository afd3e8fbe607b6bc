#include "cuspmin/perm4.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuspmin {

namespace {
const std::array<Perm4, 24>& all_perms() {
    static const std::array<Perm4, 24> table = [] {
        std::array<Perm4, 24> t{};
        std::array<int, 4> a{0, 1, 2, 3};
        int n = 0;
        do {
            t[n++] = Perm4(a[0], a[1], a[2], a[3]);
        } while (std::next_permutation(a.begin(), a.end()));
        return t;
    }();
    return table;
}
}  // namespace

Perm4 Perm4::from_index(int idx) {
    if (idx < 0 || idx >= 24) throw std::out_of_range("Perm4 index");
    return all_perms()[idx];
}

Perm4 Perm4::transposition(int a, int b) {
    Perm4 p;
    std::array<int, 4> im{0, 1, 2, 3};
    std::swap(im[a], im[b]);
    return Perm4(im[0], im[1], im[2], im[3]);
}

int Perm4::index() const {
    // Lehmer code
    int idx = 0;
    static const int fact[4] = {6, 2, 1, 1};
    for (int i = 0; i < 4; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < 4; ++j)
            if (img_[j] < img_[i]) ++smaller;
        idx += smaller * fact[i];
    }
    return idx;
}

bool Perm4::valid() const {
    int seen = 0;
    for (auto v : img_) {
        if (v > 3) return false;
        seen |= 1 << v;
    }
    return seen == 15;
}

Perm4 Perm4::inverse() const {
    std::array<int, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[img_[i]] = i;
    return Perm4(inv[0], inv[1], inv[2], inv[3]);
}

int Perm4::sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (img_[i] > img_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::string Perm4::str() const {
    std::string s;
    for (auto v : img_) s += char('0' + v);
    return s;
}

int edge_index(int u, int w) {
    if (u > w) std::swap(u, w);
    if (u == w || u < 0 || w > 3) throw std::invalid_argument("edge_index: bad vertex pair");
    static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[u][w];
}

std::array<int, 2> edge_vertices(int e) {
    static const std::array<std::array<int, 2>, 6> v{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return v.at(e);
}

}  // namespace cuspmin
