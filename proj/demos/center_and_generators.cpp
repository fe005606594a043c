// Cross-polytopal generators in VR(Q_n; 2) and which cube centers a diameter-2 set covers.
#include <iostream>

#include "hcvr/generators.hpp"
#include "hcvr/geometric.hpp"

int main()
{
    using namespace hcvr;
    for (int n = 3; n <= 5; ++n) {
        const auto fam = build_family(n, 2);
        const auto rep = family_rank(fam);
        std::cout << "n=" << n << " family size " << fam.size() << ", independent classes " << rep.certified_rank()
                  << (rep.ok() ? "" : " (checks failed)") << '\n';
    }
    for (int n = 2; n <= 5; ++n) {
        const auto c = center_coverable(n, 2);
        std::cout << "center of [0,1]^" << n << " with diameter 2: " << to_string(c.status) << " (" << c.certificate
                  << ")\n";
    }
    const auto nr = n_of_r(2);
    std::cout << "least uncovered n for r=2: " << *nr.least_uncovered << (nr.certified ? " (certified)" : "") << '\n';
}
