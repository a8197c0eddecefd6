#pragma once

// Pfaffians of the layer forms b_lambda, the quasi-centre determinant, their product (the
// symbol of the Dixmier-Pukanszky operator) and the scaling identities they satisfy.
//
// Polynomials are in the variables l1..lm, where l_r = lambda(x_{beta_r}).

#include "rrlie/cascade.hpp"
#include "rrlie/errors.hpp"
#include "rrlie/nilalg.hpp"
#include "rrlie/polynomial.hpp"
#include "rrlie/rational.hpp"
#include "rrlie/report.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace rrlie {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

namespace detail {

inline void require_antisymmetric(const PolyMatrix& m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw domain_error("Pfaffian needs a square matrix");
    if (n % 2 != 0)
        throw domain_error("Pfaffian of an odd-sized matrix");
    if (n > 64)
        throw domain_error("Pfaffian limited to 64x64 matrices");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!(m[i][j] == -m[j][i]))
                throw domain_error("matrix is not antisymmetric at (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")");
}

inline std::vector<std::string> matrix_vars(const PolyMatrix& m)
{
    for (const auto& row : m)
        for (const auto& p : row)
            if (p.nvars() > 0)
                return p.vars();
    return {};
}

} // namespace detail

/// Pfaffian by expansion along the first remaining row, memoized on the set of remaining indices.
inline Polynomial pfaffian(const PolyMatrix& m)
{
    detail::require_antisymmetric(m);
    const auto vars = detail::matrix_vars(m);
    const std::size_t n = m.size();
    std::unordered_map<std::uint64_t, Polynomial> memo;

    std::function<Polynomial(std::uint64_t)> pf = [&](std::uint64_t set) -> Polynomial {
        if (set == 0)
            return Polynomial::constant(vars, 1);
        if (auto it = memo.find(set); it != memo.end())
            return it->second;
        const int s0 = std::countr_zero(set);
        const std::uint64_t rest = set & ~(std::uint64_t{1} << s0);
        Polynomial total(vars);
        int k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(rest >> j & 1))
                continue;
            ++k; // position of j among the remaining indices after s0
            if (m[s0][j].is_zero())
                continue;
            Polynomial term = m[s0][j] * pf(rest & ~(std::uint64_t{1} << j));
            if (k % 2 == 0)
                term = -term;
            total += term;
        }
        memo.emplace(set, total);
        return total;
    };
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return pf(all);
}

/// Determinant by fraction-free (Bareiss) elimination with exact polynomial division.
inline Polynomial determinant(PolyMatrix a)
{
    const std::size_t n = a.size();
    const auto vars = detail::matrix_vars(a);
    if (n == 0)
        return Polynomial::constant(vars, 1);
    Polynomial prev = Polynomial::constant(vars, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero())
                ++p;
            if (p == n)
                return Polynomial(vars);
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divide_exact(prev);
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Matrix of b_lambda on v_r = l_r / z_r in the given basis of layer-r roots (default: the
/// layer's own descending-lex order). Entry (i,j) is lambda of the z_r-component of
/// [x_{a_i}, x_{a_j}], i.e. N(a_i, a_j) l_r when a_i + a_j = beta_r.
inline PolyMatrix b_matrix(const NilradicalAlgebra& alg, std::size_t r,
                           const std::optional<std::vector<Root>>& basis = std::nullopt)
{
    const auto& dec = alg.decomp;
    if (r >= dec.m())
        throw domain_error("layer index out of range");
    const auto& sys = dec.system;
    const std::vector<Root>& b = basis ? *basis : dec.layers[r];
    for (const auto& a : b)
        if (!sys.contains(a.coords()) || dec.layer_of(a) != static_cast<int>(r) || a == dec.betas[r])
            throw domain_error(a.str() + " is not in v_" + std::to_string(r + 1));
    if (b.size() != dec.layers[r].size())
        throw domain_error("basis of v_" + std::to_string(r + 1) + " has the wrong size");
    if (b.size() % 2 != 0)
        throw structural_error("v_" + std::to_string(r + 1) + " is odd-dimensional");
    const auto vars = Polynomial::default_vars(dec.m());
    const auto beta = sys.index_of_root(dec.betas[r]);
    PolyMatrix m(b.size(), std::vector<Polynomial>(b.size(), Polynomial(vars)));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto ai = sys.index_of_root(b[i]), aj = sys.index_of_root(b[j]);
            const auto s = alg.sc.sum(ai, aj);
            if (!s)
                continue;
            if (*s != beta)
                throw structural_error("[v_r, v_r] not contained in z_r at " + b[i].str() + ", " + b[j].str());
            m[i][j] = Polynomial::variable(vars, r, alg.sc.N(ai, aj));
        }
    return m;
}

struct PfaffianResult {
    std::vector<Polynomial> per_layer;
    Polynomial total;
    long degree = 0;
};

inline PfaffianResult layer_pfaffians(const NilradicalAlgebra& alg)
{
    PfaffianResult res;
    const auto vars = Polynomial::default_vars(alg.decomp.m());
    res.total = Polynomial::constant(vars, 1);
    for (std::size_t r = 0; r < alg.decomp.m(); ++r) {
        auto p = pfaffian(b_matrix(alg, r));
        if (p.nvars() == 0)
            p = Polynomial::constant(vars, p.is_zero() ? 0 : 1);
        res.total *= p;
        res.per_layer.push_back(std::move(p));
    }
    res.degree = res.total.degree();
    if (res.total.is_zero())
        throw structural_error("Pfaffian vanishes identically");
    return res;
}

/// prod_r l_r^{dim z_r}; only defined when every dim z_r = 1.
inline Polynomial quasicenter_det(const CascadeDecomposition& dec)
{
    const auto vars = Polynomial::default_vars(dec.m());
    Polynomial det = Polynomial::constant(vars, 1);
    for (std::size_t r = 0; r < dec.m(); ++r) {
        if (dec.dim_z[r] != 1)
            throw domain_error("quasi-centre determinant is unsupported when dim z_" + std::to_string(r + 1) +
                               " = " + std::to_string(dec.dim_z[r]) + " > 1");
        det *= Polynomial::variable(vars, r);
    }
    return det;
}

struct DPSymbol {
    Polynomial pf;
    Polynomial det;
    Polynomial symbol;
    long degree = 0;
    long expected_degree = 0;
    std::vector<long> weights; ///< exponent of l_r in the scaling of the symbol
    CheckReport report{"dp_symbol"};
};

/// Exponent of t_r when l_r -> t_r l_r, read off a polynomial that scales by a monomial.
inline std::vector<long> scaling_weights(const Polynomial& p)
{
    std::vector<long> w(p.nvars(), -1);
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (first)
                w[i] = mono[i];
            else if (w[i] != static_cast<long>(mono[i]))
                w[i] = -1;
        }
        first = false;
    }
    return w;
}

inline DPSymbol dp_symbol(const NilradicalAlgebra& alg)
{
    const auto& dec = alg.decomp;
    DPSymbol out;
    out.pf = layer_pfaffians(alg).total;
    out.det = quasicenter_det(dec);
    out.symbol = out.pf * out.det;
    out.degree = out.symbol.degree();
    out.expected_degree = (dec.dim_n() + dec.dim_s()) / 2;
    out.weights = scaling_weights(out.symbol);
    if (out.degree != out.expected_degree || (dec.dim_n() + dec.dim_s()) % 2 != 0)
        out.report.fail("degree " + std::to_string(out.degree) + " != (dim n + dim s)/2 = " +
                        std::to_string(out.expected_degree));
    const auto expo = dec.modular_exponents();
    for (std::size_t r = 0; r < dec.m(); ++r)
        if (out.weights[r] != expo[r])
            out.report.fail("weight of l_" + std::to_string(r + 1) + " is " + std::to_string(out.weights[r]) +
                            ", modular exponent is " + std::to_string(expo[r]));
    return out;
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, bool nonzero)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    for (;;) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        if (!nonzero || q != 0)
            return q;
    }
}

inline Rational product_of_powers(const RationalVector& t, const std::vector<long>& e)
{
    Rational f = 1;
    for (std::size_t r = 0; r < t.size(); ++r)
        f *= pow(t[r], static_cast<unsigned long>(e[r]));
    return f;
}

} // namespace detail

/// With layer scale factors t_r standing for e^{beta_r(xi)}: Pf(t.l) = prod t_r^{d_r} Pf(l),
/// Det(t.l) = prod t_r^{dim z_r} Det(l), (Pf Det)(t.l) = prod t_r^{(dim l_r + dim z_r)/2} (Pf Det)(l).
/// Checked both as polynomial identities and at random rational points.
inline CheckReport semiinvariance_check(const NilradicalAlgebra& alg, const std::vector<RationalVector>& scales)
{
    CheckReport rep("semi_invariance");
    const auto& dec = alg.decomp;
    const auto pfr = layer_pfaffians(alg);
    const auto det = quasicenter_det(dec);
    const auto sym = pfr.total * det;
    std::vector<long> d, z(dec.dim_z.begin(), dec.dim_z.end());
    for (const auto& x : dec.d)
        d.push_back(x.get_num().get_si());
    const auto expo = dec.modular_exponents();
    std::mt19937_64 rng(12345);
    for (const auto& t : scales) {
        if (t.size() != dec.m())
            throw domain_error("scale vector needs one entry per layer");
        const struct {
            const char* name;
            const Polynomial& p;
            const std::vector<long>& w;
        } cases[] = {{"Pf", pfr.total, d}, {"Det", det, z}, {"Pf*Det", sym, expo}};
        for (const auto& c : cases) {
            const Rational f = detail::product_of_powers(t, c.w);
            if (!(c.p.scale_variables(t) == c.p * f))
                rep.fail(std::string(c.name) + " does not scale by " + to_string(f) + " at t = " + format_vector(t));
            RationalVector lambda;
            for (std::size_t r = 0; r < dec.m(); ++r)
                lambda.push_back(detail::random_rational(rng, false));
            RationalVector scaled = lambda;
            for (std::size_t r = 0; r < dec.m(); ++r)
                scaled[r] *= t[r];
            if (c.p.evaluate(scaled) != f * c.p.evaluate(lambda))
                rep.fail(std::string(c.name) + " scaling fails at lambda = " + format_vector(lambda));
        }
    }
    return rep;
}

/// Seeded random nonzero rational scale vectors.
inline CheckReport semiinvariance_check(const NilradicalAlgebra& alg, int trials, unsigned seed = 1)
{
    std::mt19937_64 rng(seed);
    std::vector<RationalVector> scales;
    for (int k = 0; k < trials; ++k) {
        RationalVector t;
        for (std::size_t r = 0; r < alg.decomp.m(); ++r)
            t.push_back(detail::random_rational(rng, true));
        scales.push_back(std::move(t));
    }
    return semiinvariance_check(alg, scales);
}

/// Exponent of delta(exp xi) = exp(sum_r (dim l_r + dim z_r)/2 beta_r(xi)), given the values
/// beta_r(xi). Asserts agreement with the trace of ad(xi) on n.
inline Rational modular_function(const CascadeDecomposition& dec, const RationalVector& beta_values)
{
    if (beta_values.size() != dec.m())
        throw domain_error("expected one value beta_r(xi) per layer");
    const auto expo = dec.modular_exponents();
    Rational e = 0;
    for (std::size_t r = 0; r < dec.m(); ++r)
        e += Rational(expo[r]) * beta_values[r];
    const auto xi = xi_from_beta_values(dec, beta_values);
    const Rational tr = ad_trace_from_roots(dec.system, xi);
    if (tr != e)
        throw structural_error("modular exponent " + to_string(e) + " differs from tr ad(xi) = " + to_string(tr));
    return e;
}

/// As above, with the trace taken from the explicit ad(xi) matrix on n.
inline Rational modular_function(const NilradicalAlgebra& alg, const RationalVector& beta_values)
{
    const Rational e = modular_function(alg.decomp, beta_values);
    const Rational tr = trace(ad_matrix(alg, xi_from_beta_values(alg.decomp, beta_values)));
    if (tr != e)
        throw structural_error("modular exponent " + to_string(e) + " differs from trace of ad matrix " +
                               to_string(tr));
    return e;
}

/// Bracket conditions of the setup plus nonvanishing of every layer Pfaffian.
inline CheckReport verify_setup(const NilradicalAlgebra& alg)
{
    CheckReport rep = verify_brackets(alg);
    for (std::size_t r = 0; r < alg.decomp.m(); ++r)
        if (pfaffian(b_matrix(alg, r)).is_zero())
            rep.fail("Pfaffian of layer " + std::to_string(r + 1) + " vanishes");
    return rep;
}

} // namespace rrlie
