// Acceptance run: one line per criterion, nonzero exit if any fails.
//
// Pinned tolerances (set in src/verify.cpp, never loosened):
//   1  exact counts; constructive < 10 s, brute-force oracle < 300 s
//   2  exact group orders and relations
//   3  exact isomorphism and cell counts
//   4  |vol(M_2) - 18.2689489153/2| < 1e-9; closed vs Ushijima <= 1e-10 (k <= 24);
//      |Z1 - 1|, |Z2 + e^{-2 pi i/3k}| <= 1e-12; 9k/2 <= vol <= pi^2 k (k <= 100); < 30 s
//   5  exact; < 120 s
//   6  exact Euler characteristic and word length; exact vs float Gram <= 1e-10;
//      eigenvalues within 1e-8 of zero count as zero

#include <iostream>

#include "cuspmin/verify.hpp"

int main() {
    bool ok = true;
    for (const auto& r : cuspmin::run_acceptance({})) {
        std::cout << cuspmin::format_line(r) << std::endl;
        ok = ok && r.pass;
    }
    std::cout << (ok ? "all criteria pass" : "SOME CRITERIA FAIL") << std::endl;
    return ok ? 0 : 1;
}
