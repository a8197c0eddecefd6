// Plancherel density on the Heisenberg group: Schur orthogonality and Fourier inversion.
//
//   heisenberg_plancherel [d]     (d = 1 or 2, default 1)

#include "rrlie/sqint.hpp"

#include <cstdlib>
#include <string>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace rrlie::sqint;
    const int d = argc > 1 ? std::atoi(argv[1]) : 1;
    if (d != 1 && d != 2) {
        std::cerr << "d must be 1 or 2\n";
        return 2;
    }
    std::cout.precision(12);

    const auto orth = orthogonality_suite(d, 1.0);
    std::cout << "||c_{u,v}||^2 |lambda|^d / (||u|| ||v||)^2 over " << orth.samples.size() << " samples\n";
    auto label = [](const std::vector<int>& n) {
        std::string out;
        for (int k : n)
            out += std::to_string(k);
        return out;
    };
    for (const auto& s : orth.samples)
        std::cout << "  u=" << label(s.u) << " v=" << label(s.v) << " lambda=" << s.lambda << "  ratio=" << s.ratio << "\n";
    std::cout << "kappa = " << orth.kappa << "  (2 pi)^d = " << orth.expected << "\n\n";

    const auto f = TestFunction::gaussian(d);
    const auto inv = inversion_check(d, f);
    std::cout << "f(0) = " << inv.expected << ", reconstructed " << inv.value << ", relative error " << inv.error
              << "\n";
    return 0;
}
