// Shows the Fourier side of one subset: triple counts from both backends,
// the flattest character direction, and the coset density profile there.
//
//   ./fourier_profile [group] [subset]   default Z_21, the middle third

#include "sumfree/sumfree.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace sumfree;
    AbelianGroup g = parse_group_spec(argc > 1 ? argv[1] : "21");
    Subset f = argc > 2 ? parse_subset_spec(g, argv[2])
                        : parse_subset_spec(g, "8,9,10,11,12,13");

    SchurStats brute = schur_count_bruteforce(f);
    SchurStats fast = schur_count_fourier(f);
    std::cout << "group " << g.spec() << ", subset " << f.spec() << " (|F| = " << f.size()
              << ")\n";
    std::cout << "triples: bruteforce " << brute.triples << ", fourier " << fast.triples
              << ", delta = " << format_rational(brute.density) << "\n";

    auto [chi, re_min] = special_direction(f);
    std::cout << "flattest direction: chi = " << chi.spec() << " (order " << chi.order()
              << "), Re F_hat = " << format_double(re_min) << "\n";

    CosetProfile prof = coset_profile(f, chi);
    std::cout << "coset densities along chi:\n";
    for (std::uint64_t j = 0; j < prof.q; ++j) {
        std::cout << "  j = " << j << "  |F_j| = " << prof.count(j)
                  << "  alpha_j = " << format_rational(prof.alpha(j)) << "\n";
    }
    return 0;
}
