// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "rrlie/document.hpp"
#include "rrlie/sqint.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rrlie;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && passed) {
            passed = false;
            detail = what;
        }
    }
};

std::vector<RealForm> split_forms(int max_rank)
{
    std::vector<RealForm> out;
    for (const auto& n : builtin_split_names()) {
        auto f = load_form(n);
        if (static_cast<int>(f.system.rank()) <= max_rank)
            out.push_back(std::move(f));
    }
    return out;
}

std::vector<RealForm> datafile_forms()
{
    std::vector<RealForm> out;
    for (const auto& [name, path] : list_datafiles())
        out.push_back(load_form_file(path));
    return out;
}

std::vector<CartanType> all_supported_types()
{
    std::vector<CartanType> out;
    for (int n = 1; n <= 7; ++n) {
        for (auto f : {Family::A, Family::B, Family::C, Family::BC})
            out.push_back({f, n});
        if (n >= 2)
            out.push_back({Family::D, n});
    }
    out.push_back({Family::E, 6});
    out.push_back({Family::E, 7});
    out.push_back({Family::E, 8});
    out.push_back({Family::F, 4});
    out.push_back({Family::G, 2});
    return out;
}

std::string first_failure(const CheckReport& r) { return r.name + ": " + (r.failures.empty() ? "" : r.failures.front()); }

Outcome cascade_partition()
{
    Outcome o;
    auto forms = split_forms(5);
    for (auto& f : datafile_forms())
        forms.push_back(std::move(f));
    for (const auto& f : forms) {
        const auto dec = decompose(f.system);
        for (const auto& rep : {check_partition(dec), check_strong_orthogonality(dec), check_pairing_lemma(dec),
                                check_neg_extension(dec)})
            o.require(rep.passed, f.descriptor.name + " " + first_failure(rep));
    }
    o.detail = o.passed ? std::to_string(forms.size()) + " forms" : o.detail;
    return o;
}

Outcome weyl_identities()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coef(0, 6), den(1, 5);
    std::size_t weights = 0;
    for (const auto& t : all_supported_types()) {
        auto sys = generate(t);
        // Unit multiplicities on BC_n leave e_i paired with itself; su(n+1, n) is a genuine form.
        if (t.family == Family::BC)
            sys = sys.with_multiplicities([&](const Root& r) { return root_kind(t, r) == "2e_i" ? 1 : 2; });
        const auto dec = decompose(sys);
        const auto rep = check_longest_element(dec);
        o.require(rep.passed, t.label() + " " + first_failure(rep));
        const auto gens = integral_dominant_generators(sys);
        for (int k = 0; k < 100; ++k) {
            RationalVector nu(sys.ambient_dim(), 0);
            for (const auto& g : gens)
                nu = nu + Rational(coef(rng)) * g;
            try {
                const auto res = nu_plus_nu_star(sys, dec.betas, nu);
                o.require(res.integral, t.label() + ": non-integral coefficient at " + format_vector(nu));
            } catch (const structural_error& e) {
                o.require(false, t.label() + ": " + e.what());
            }
            ++weights;
        }
        // Non-integral dominant weights: the identity is still exact, coefficients are rational.
        const auto fund = fundamental_weights(sys);
        for (int k = 0; k < 100; ++k) {
            RationalVector nu(sys.ambient_dim(), 0);
            for (const auto& w : fund)
                nu = nu + make_rational(coef(rng), den(rng)) * w;
            try {
                nu_plus_nu_star(sys, dec.betas, nu);
            } catch (const structural_error& e) {
                o.require(false, t.label() + ": " + e.what());
            }
            ++weights;
        }
    }
    if (o.passed)
        o.detail = std::to_string(all_supported_types().size()) + " systems, " + std::to_string(weights) + " weights";
    return o;
}

Outcome structure_constants()
{
    Outcome o;
    std::size_t triples = 0;
    for (const auto& f : split_forms(5)) {
        const auto dec = decompose(f.system);
        const auto alg = build_nilradical(dec);
        const auto jac = check_jacobi(alg.sc);
        o.require(jac.passed, f.descriptor.name + " " + first_failure(jac));
        triples += alg.sc.size() * alg.sc.size() * alg.sc.size();
        const auto prop = check_chevalley_property(alg.sc);
        o.require(prop.passed, f.descriptor.name + " " + first_failure(prop));
        const auto setup = verify_brackets(alg);
        o.require(setup.passed, f.descriptor.name + " " + first_failure(setup));
    }
    if (o.passed)
        o.detail = std::to_string(triples) + " Jacobi triples";
    return o;
}

Outcome pfaffian_suite()
{
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    auto rational = [&](bool nonzero) {
        for (;;) {
            const Rational q = make_rational(num(rng), den(rng));
            if (!nonzero || q != 0)
                return q;
        }
    };
    for (const auto& f : split_forms(5)) {
        const auto& name = f.descriptor.name;
        const auto alg = build_nilradical(decompose(f.system));
        const auto res = layer_pfaffians(alg);
        for (std::size_t r = 0; r < alg.decomp.m(); ++r) {
            const auto& pf = res.per_layer[r];
            o.require(pf * pf == determinant(b_matrix(alg, r)), name + ": Pf^2 != det on layer " + std::to_string(r + 1));
            o.require(!pf.is_zero(), name + ": vanishing layer Pfaffian");
            o.require(pf.homogeneous() && pf.degree() == alg.decomp.d[r],
                      name + ": layer Pfaffian not homogeneous of degree d_r");
            for (std::size_t s = 0; s < alg.decomp.m(); ++s)
                if (s != r)
                    o.require(pf.degree_in(s) <= 0, name + ": layer Pfaffian depends on another layer");
        }
        o.require(!res.total.is_zero(), name + ": Pf vanishes");
        const long deg = alg.decomp.pfaffian_degree();
        for (int k = 0; k < 20; ++k) {
            const Rational c = rational(true);
            RationalVector l, cl;
            for (std::size_t r = 0; r < alg.decomp.m(); ++r) {
                l.push_back(rational(false));
                cl.push_back(c * l.back());
            }
            o.require(res.total.evaluate(cl) == pow(c, static_cast<unsigned long>(deg)) * res.total.evaluate(l),
                      name + ": Pf(c l) != c^deg Pf(l)");
        }
    }
    return o;
}

Outcome symbol_ledger()
{
    Outcome o;
    std::vector<RealForm> forms = split_forms(8);
    for (auto& f : datafile_forms())
        forms.push_back(std::move(f));
    for (const auto& f : forms) {
        const auto& name = f.descriptor.name;
        const auto dec = decompose(f.system);
        const auto mod = check_modular(dec);
        o.require(mod.passed, name + " " + first_failure(mod));
        const auto t1 = tier1_report(f);
        o.require(2 * t1.deg_dp == t1.dim_n + t1.dim_s, name + ": degree identity");
        if (is_split(f.system)) {
            const auto dp = dp_symbol(build_nilradical(dec));
            o.require(dp.report.passed, name + " " + first_failure(dp.report));
            o.require(dp.degree == t1.deg_dp, name + ": deg(Pf Det) mismatch");
            o.require(dp.weights == dec.modular_exponents(), name + ": weight != modular exponents");
        }
    }
    if (o.passed)
        o.detail = std::to_string(forms.size()) + " forms";
    return o;
}

Outcome numeric_d1()
{
    using namespace rrlie::sqint;
    Outcome o;
    try {
        const auto orth = orthogonality_suite(1, 1.0);
        const double kerr = std::abs(orth.kappa - 2 * std::numbers::pi) / (2 * std::numbers::pi);
        o.require(orth.samples.size() >= 10, "fewer than 10 triples");
        o.require(orth.spread < 1e-5, "ratio spread " + std::to_string(orth.spread));
        o.require(kerr < 1e-4, "kappa differs from 2 pi by " + std::to_string(kerr));
        const auto ch = character_value(HeisenbergModel{1, 1.0, Grid{}, 1e-6}, TestFunction::gaussian(1));
        o.require(ch.relative_difference < 1e-6, "character mismatch " + std::to_string(ch.relative_difference));
        const auto inv = inversion_check(1, TestFunction::gaussian(1));
        o.require(inv.error < 1e-6, "inversion error " + std::to_string(inv.error));
        if (o.passed) {
            std::ostringstream s;
            s.precision(3);
            s << "kappa=" << orth.kappa << " spread=" << orth.spread << " character=" << ch.relative_difference
              << " inversion=" << inv.error;
            o.detail = s.str();
        }
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    return o;
}

Outcome numeric_d2()
{
    using namespace rrlie::sqint;
    Outcome o;
    try {
        // c = 2^2 2! = 8 for the 5-dimensional layer of split A3
        const auto dec = decompose(generate({Family::A, 3}));
        o.require(dec.c == 8 && dec.d[0] == 2, "split A3 first layer is not d = 2 with c = 8");
        const auto inv = inversion_check(2, TestFunction::gaussian(2), 12.0, 241, 161, 1e-5);
        o.require(inv.error < 1e-5, "inversion error " + std::to_string(inv.error));
        if (o.passed) {
            std::ostringstream s;
            s.precision(3);
            s << "inversion=" << inv.error;
            o.detail = s.str();
        }
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    return o;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome golden_reports()
{
    Outcome o;
    const std::filesystem::path dir = RRLIE_GOLDEN_DIR;
    struct Expect {
        std::string form;
        std::vector<std::string> betas;
        std::vector<long> d;
        std::string c;
        std::vector<std::string> pf;
        long deg_dp;
    };
    const std::vector<Expect> expects = {
        {"split-A3", {"e1-e4", "e2-e3"}, {2, 0}, "8", {"l1^2", "-l1^2"}, 4},
        {"split-C2", {"2e1", "2e2"}, {1, 0}, "2", {"2*l1", "-2*l1"}, 3},
    };
    for (const auto& e : expects) {
        const auto stored = read_file(dir / (e.form + ".json"));
        const auto fresh = to_json(build_report(load_form(e.form), std::vector<std::string>{})).dump(2) + "\n";
        o.require(stored == fresh, e.form + ": regenerated report differs from golden file");
        const auto j = Json::parse(stored);
        o.require(j["beta_names"].get<std::vector<std::string>>() == e.betas, e.form + ": betas");
        o.require(j["d"].get<std::vector<long>>() == e.d, e.form + ": d");
        o.require(j["c"] == e.c, e.form + ": c");
        const auto pf = j["pfaffian"].get<std::string>();
        o.require(pf == e.pf[0] || pf == e.pf[1], e.form + ": Pf = " + pf);
        o.require(j["det"] == "l1*l2", e.form + ": Det");
        o.require(j["degrees"]["dp_symbol"] == e.deg_dp, e.form + ": DP degree");
    }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string title;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "cascade and layer partition", 5, cascade_partition},
        {2, "Weyl identities", 30, weyl_identities},
        {3, "structure constants and setup brackets", 600, structure_constants},
        {4, "Pfaffian suite", 60, pfaffian_suite},
        {5, "symbol degree, weight and modular exponents", 600, symbol_ledger},
        {6, "numeric d = 1", 120, numeric_d1},
        {7, "numeric d = 2", 600, numeric_d2},
        {8, "golden reports for split A3 and C2", 60, golden_reports},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            o.passed = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
        }
        all = all && o.passed;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << t.str()
                  << " s]" << (o.detail.empty() ? "" : " " + o.detail) << std::endl;
    }
    return all ? 0 : 1;
}
