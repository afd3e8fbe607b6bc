#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace cuspmin {

// Permutation of the four vertices of a tetrahedron, stored as its image table.
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    static Perm4 from_index(int idx);  // 0..23, lexicographic on image tuples
    static Perm4 transposition(int a, int b);

    constexpr int operator[](int i) const { return img_[i]; }
    int index() const;
    bool valid() const;

    // (p * q)(i) = p(q(i))
    Perm4 operator*(const Perm4& q) const {
        return Perm4(img_[q[0]], img_[q[1]], img_[q[2]], img_[q[3]]);
    }
    Perm4 inverse() const;
    int sign() const;
    bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3; }

    bool operator==(const Perm4& o) const { return img_ == o.img_; }
    bool operator!=(const Perm4& o) const { return !(*this == o); }
    bool operator<(const Perm4& o) const { return img_ < o.img_; }

    std::string str() const;

private:
    std::array<std::uint8_t, 4> img_;
};

// Edge index of the unordered vertex pair {u, w}:
// 0:{0,1} 1:{0,2} 2:{0,3} 3:{1,2} 4:{1,3} 5:{2,3}
int edge_index(int u, int w);
std::array<int, 2> edge_vertices(int e);
// The edge with the complementary pair of vertices.
inline int opposite_edge(int e) { return 5 - e; }

}  // namespace cuspmin
