// Walk through the cascade of a split form: roots, layers, Pfaffian and the symbol.
//
//   cascade_tour [form]     (default split-A3)

#include "rrlie/pfaffian.hpp"
#include "rrlie/realform.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace rrlie;
    const auto form = load_form(argc > 1 ? argv[1] : "split-A3");
    const auto dec = decompose(form.system);

    std::cout << form.descriptor.name << " (" << form.descriptor.restricted_type.label() << ")\n";
    std::cout << "dim n = " << dec.dim_n() << ", dim s = " << dec.dim_s() << ", c = " << dec.c << "\n\n";
    for (std::size_t r = 0; r < dec.m(); ++r) {
        std::cout << "beta_" << r + 1 << " = " << dec.betas[r].str() << "  d = " << dec.d[r] << "  layer:";
        for (const auto& a : dec.layers[r])
            std::cout << " " << a.str();
        std::cout << "\n";
    }

    if (!is_split(form.system)) {
        std::cout << "\nnot split: polynomial invariants are not computed\n";
        return 0;
    }
    const auto alg = build_nilradical(dec);
    const auto dp = dp_symbol(alg);
    std::cout << "\nPf  = " << dp.pf.to_string() << "\n";
    std::cout << "Det = " << dp.det.to_string() << "\n";
    std::cout << "Pf * Det = " << dp.symbol.to_string() << "  (degree " << dp.degree << ")\n";
    return dp.report.passed ? 0 : 1;
}
