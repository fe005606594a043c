// Prints the combined upper bound next to the computed Betti number for small n.
#include <iostream>

#include "hcvr/bounds.hpp"
#include "hcvr/homology.hpp"

int main()
{
    using namespace hcvr;
    const auto seeds = load_seeds(HCVR_DEFAULT_SEEDS);
    std::cout << "n r q  bound  betti  decomposition\n";
    for (auto [r, q] : {std::pair{1, 1}, std::pair{2, 3}}) {
        for (int n = r + 2; n <= 6; ++n) {
            const auto b = combined_bound(n, r, q, seeds);
            const auto h = betti(n, r, q);
            std::cout << n << ' ' << r << ' ' << q << "  " << b.value << "  " << h.betti << "  " << b.decomposition()
                      << '\n';
        }
    }
}
