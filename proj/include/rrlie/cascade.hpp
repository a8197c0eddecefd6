#pragma once

// Kostant cascade of strongly orthogonal roots, the layer partition of the positive
// roots it induces, and the Weyl-group identities that come with it.
//
// Layer indices are 0-based in this API (layer r holds beta_r); reports print them 1-based.

#include "rrlie/errors.hpp"
#include "rrlie/rational.hpp"
#include "rrlie/report.hpp"
#include "rrlie/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rrlie {

struct CascadeDecomposition {
    RestrictedRootSystem system;
    std::vector<Root> betas;
    /// layers[r] = Delta^+_r, the positive roots of layer r other than beta_r (descending lex).
    std::vector<std::vector<Root>> layers;
    /// layer index of each root of `system` (indexed like system.roots()); -1 for negative roots.
    std::vector<int> layer_index;
    std::vector<Rational> d;
    std::vector<int> dim_z;
    std::vector<int> dim_l;
    Integer c;

    std::size_t m() const { return betas.size(); }

    int layer_of(const Root& alpha) const
    {
        const int r = layer_index.at(system.index_of_root(alpha));
        if (r < 0)
            throw domain_error(alpha.str() + " is not a positive root");
        return r;
    }

    /// (dim l_r + dim z_r) / 2, the exponent of e^{beta_r} in the modular function.
    std::vector<long> modular_exponents() const
    {
        std::vector<long> e;
        for (std::size_t r = 0; r < m(); ++r)
            e.push_back((dim_l[r] + dim_z[r]) / 2);
        return e;
    }

    long dim_n() const { return system.dim_nilradical(); }

    long dim_s() const
    {
        long s = 0;
        for (int z : dim_z)
            s += z;
        return s;
    }

    long pfaffian_degree() const
    {
        Rational s = 0;
        for (const auto& x : d)
            s += x;
        return s.get_num().get_si();
    }
};

/// beta_1 is a maximal positive root; beta_{r+1} is maximal among positive roots orthogonal
/// to beta_1..beta_r. Among several maximal candidates the lexicographically largest wins.
inline std::vector<Root> build_cascade(const RestrictedRootSystem& sys)
{
    std::vector<Root> betas;
    for (;;) {
        std::vector<const Root*> cands;
        for (const auto& a : sys.positives()) {
            bool orth = true;
            for (const auto& b : betas)
                if (dot(a.coords(), b.coords()) != 0) {
                    orth = false;
                    break;
                }
            if (orth)
                cands.push_back(&a);
        }
        if (cands.empty())
            break;
        const Root* best = nullptr;
        for (const Root* g : cands) {
            const bool maximal = std::none_of(cands.begin(), cands.end(), [&](const Root* h) {
                return h != g && sys.dominates(h->coords(), g->coords());
            });
            if (maximal && (!best || *g > *best))
                best = g;
        }
        betas.push_back(*best);
    }
    return betas;
}

inline CascadeDecomposition build_layers(const RestrictedRootSystem& sys, const std::vector<Root>& betas)
{
    CascadeDecomposition dec{sys, betas, {}, {}, {}, {}, {}, 0};
    const std::size_t m = betas.size();
    dec.layer_index.assign(sys.roots().size(), -1);
    dec.layers.resize(m);

    std::vector<bool> is_beta(sys.roots().size(), false);
    for (std::size_t r = 0; r < m; ++r) {
        const auto i = sys.index_of_root(betas[r]);
        if (!sys.positive_at(i))
            throw structural_error("cascade root " + betas[r].str() + " is not positive");
        is_beta[i] = true;
        dec.layer_index[i] = static_cast<int>(r);
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < sys.roots().size(); ++i) {
            if (!sys.positive_at(i) || is_beta[i] || dec.layer_index[i] >= 0)
                continue;
            const Root& a = sys.roots()[i];
            if (sys.positive((betas[r].coords() - a.coords()))) {
                dec.layer_index[i] = static_cast<int>(r);
                dec.layers[r].push_back(a);
            }
        }
    }
    for (std::size_t i = 0; i < sys.roots().size(); ++i)
        if (sys.positive_at(i) && dec.layer_index[i] < 0)
            throw structural_error("positive root " + sys.roots()[i].str() + " lies in no layer");

    dec.c = 1;
    long dsum = 0;
    for (std::size_t r = 0; r < m; ++r) {
        long v = 0;
        for (const auto& a : dec.layers[r])
            v += sys.mult(a);
        const int z = sys.mult(betas[r]);
        dec.d.push_back(make_rational(v, 2));
        dec.dim_z.push_back(z);
        dec.dim_l.push_back(static_cast<int>(v) + z);
        if (v % 2 != 0)
            throw structural_error("layer " + std::to_string(r + 1) +
                                   " has odd-dimensional complement to its centre");
        if ((v + 2 * z) % 2 != 0)
            throw structural_error("(dim l_r + dim z_r)/2 not integral in layer " + std::to_string(r + 1));
        dec.c *= factorial(static_cast<unsigned long>(v / 2));
        dsum += v / 2;
    }
    dec.c *= pow2(static_cast<unsigned long>(dsum));
    return dec;
}

inline CascadeDecomposition decompose(const RestrictedRootSystem& sys)
{
    return build_layers(sys, build_cascade(sys));
}

/// sigma_r(alpha) = -s_{beta_r}(alpha) for alpha in layer r.
inline Root sigma(const CascadeDecomposition& dec, std::size_t r, const Root& alpha)
{
    if (r >= dec.m())
        throw domain_error("layer index out of range");
    const auto i = dec.system.index_of(alpha.coords());
    if (!i || dec.layer_index[*i] != static_cast<int>(r))
        throw domain_error(alpha.str() + " is not in layer " + std::to_string(r + 1));
    return Root(-reflect_vector(dec.betas[r].coords(), alpha.coords()));
}

// ---------------------------------------------------------------------------
// Checks

inline CheckReport check_strong_orthogonality(const CascadeDecomposition& dec)
{
    CheckReport rep("strong_orthogonality");
    for (std::size_t i = 0; i < dec.m(); ++i)
        for (std::size_t j = i + 1; j < dec.m(); ++j) {
            const auto& a = dec.betas[i].coords();
            const auto& b = dec.betas[j].coords();
            if (dot(a, b) != 0)
                rep.fail(dec.betas[i].str() + " not orthogonal to " + dec.betas[j].str());
            if (dec.system.contains(a + b) || dec.system.contains(a - b))
                rep.fail(dec.betas[i].str() + " +- " + dec.betas[j].str() + " is a root");
        }
    return rep;
}

/// Every positive root is some beta_r or lies in exactly one Delta^+_r; also the
/// orthogonality description of each layer.
inline CheckReport check_partition(const CascadeDecomposition& dec)
{
    CheckReport rep("partition");
    const auto& sys = dec.system;
    std::size_t total = 0;
    for (std::size_t r = 0; r < dec.m(); ++r)
        total += dec.layers[r].size() + 1;
    if (total != sys.positives().size())
        rep.fail("layer sizes sum to " + std::to_string(total) + ", expected " +
                 std::to_string(sys.positives().size()));
    for (const auto& a : sys.positives()) {
        int hits = 0;
        for (std::size_t r = 0; r < dec.m(); ++r) {
            if (a == dec.betas[r])
                ++hits;
            hits += static_cast<int>(std::count(dec.layers[r].begin(), dec.layers[r].end(), a));
        }
        if (hits != 1)
            rep.fail(a.str() + " appears in " + std::to_string(hits) + " layers");
        // Layer r = {alpha > 0 : alpha _|_ beta_i (i < r), <alpha, beta_r> > 0}.
        const int r = dec.layer_of(a);
        for (int i = 0; i < r; ++i)
            if (dot(a.coords(), dec.betas[i].coords()) != 0)
                rep.fail(a.str() + " in layer " + std::to_string(r + 1) + " is not orthogonal to beta_" +
                         std::to_string(i + 1));
        if (dot(a.coords(), dec.betas[r].coords()) <= 0)
            rep.fail(a.str() + " has non-positive product with its layer root");
    }
    long d2 = 0;
    for (const auto& x : dec.d)
        d2 += Rational(2 * x).get_num().get_si();
    if (d2 != dec.dim_n() - dec.dim_s())
        rep.fail("sum of d_r does not equal (dim n - dim s)/2");
    for (std::size_t r = 0; r < dec.m(); ++r)
        if (2 * dec.d[r] + dec.dim_z[r] != dec.dim_l[r])
            rep.fail("dim l_r != 2 d_r + dim z_r in layer " + std::to_string(r + 1));
    return rep;
}

/// alpha + sigma_r(alpha) = beta_r on Delta^+_r, and sums of two layer roots that are
/// roots equal beta_r.
inline CheckReport check_pairing_lemma(const CascadeDecomposition& dec)
{
    CheckReport rep("pairing");
    const auto& sys = dec.system;
    for (std::size_t r = 0; r < dec.m(); ++r) {
        const auto& layer = dec.layers[r];
        for (const auto& a : layer) {
            const Root s = sigma(dec, r, a);
            if (!sys.contains(s.coords()) || dec.layer_of(s) != static_cast<int>(r))
                rep.fail("sigma_" + std::to_string(r + 1) + "(" + a.str() + ") leaves the layer");
            if (a.coords() + s.coords() != dec.betas[r].coords())
                rep.fail("r=" + std::to_string(r + 1) + ", alpha=" + a.str());
            const Root back = sigma(dec, r, s);
            if (back != a)
                rep.fail("sigma_" + std::to_string(r + 1) + " is not an involution at " + a.str());
        }
        for (std::size_t i = 0; i < layer.size(); ++i)
            for (std::size_t j = i; j < layer.size(); ++j) {
                const auto sum = layer[i].coords() + layer[j].coords();
                if (sys.contains(sum) && sum != dec.betas[r].coords())
                    rep.fail("r=" + std::to_string(r + 1) + ": " + layer[i].str() + " + " + layer[j].str() +
                             " is a root other than beta_r");
            }
    }
    return rep;
}

/// Layer r together with beta_r is exactly {alpha in Delta : alpha _|_ beta_i (i<r),
/// <alpha, beta_r> > 0}, scanning negative roots as well.
inline CheckReport check_neg_extension(const CascadeDecomposition& dec)
{
    CheckReport rep("neg_extension");
    const auto& sys = dec.system;
    for (std::size_t r = 0; r < dec.m(); ++r) {
        for (std::size_t i = 0; i < sys.roots().size(); ++i) {
            const Root& a = sys.roots()[i];
            bool cond = dot(a.coords(), dec.betas[r].coords()) > 0;
            for (std::size_t k = 0; k < r && cond; ++k)
                cond = dot(a.coords(), dec.betas[k].coords()) == 0;
            const bool in_layer = dec.layer_index[i] == static_cast<int>(r);
            if (cond != in_layer)
                rep.fail("r=" + std::to_string(r + 1) + ", alpha=" + a.str() +
                         (cond ? " satisfies the condition but is outside the layer"
                               : " is in the layer but fails the condition"));
        }
    }
    return rep;
}

/// Applies s_{beta_1} ... s_{beta_k} (rightmost first) to v.
inline RationalVector apply_cascade_word(const std::vector<Root>& betas, std::size_t k, RationalVector v)
{
    for (std::size_t i = k; i-- > 0;)
        v = reflect_vector(betas[i].coords(), v);
    return v;
}

/// s_{beta_1}...s_{beta_m} maps Delta^+ to -Delta^+, and each partial product
/// s_{beta_1}...s_{beta_r} maps Delta^+_1 u ... u Delta^+_r (with the betas) to its negative.
inline CheckReport check_longest_element(const CascadeDecomposition& dec)
{
    CheckReport rep("longest_element");
    const auto& sys = dec.system;
    for (const auto& a : sys.positives()) {
        const auto img = apply_cascade_word(dec.betas, dec.m(), a.coords());
        if (!sys.contains(img) || sys.positive(img))
            rep.fail("w0(" + a.str() + ") is not a negative root");
    }
    for (std::size_t r = 1; r <= dec.m(); ++r) {
        for (const auto& a : sys.positives()) {
            if (dec.layer_of(a) >= static_cast<int>(r))
                continue;
            const auto img = apply_cascade_word(dec.betas, r, a.coords());
            const auto j = sys.index_of((-img));
            if (!j || dec.layer_index[*j] < 0 || dec.layer_index[*j] >= static_cast<int>(r))
                rep.fail("s_beta_1..s_beta_" + std::to_string(r) + " does not negate " + a.str() +
                         " within the first layers");
        }
    }
    return rep;
}

inline bool longest_element_check(const RestrictedRootSystem& sys, const std::vector<Root>& betas)
{
    return check_longest_element(build_layers(sys, betas)).passed;
}

struct DualWeightResult {
    RationalVector coefficients; ///< (nu, beta_i)
    RationalVector sum;          ///< sum_i (nu, beta_i) beta_i = nu + nu*
    bool integral = true;
};

/// nu + nu* = nu - w0(nu) = sum_i (nu, beta_i) beta_i for dominant nu.
inline DualWeightResult nu_plus_nu_star(const RestrictedRootSystem& sys, const std::vector<Root>& betas,
                                        const RationalVector& nu)
{
    if (nu.size() != sys.ambient_dim())
        throw domain_error("weight has wrong dimension");
    if (!is_dominant(sys, nu))
        throw domain_error("weight " + format_vector(nu) + " is not dominant");
    DualWeightResult res;
    res.sum.assign(sys.ambient_dim(), 0);
    for (const auto& b : betas) {
        const Rational p = pairing(sys, nu, b);
        res.integral = res.integral && is_integer(p);
        res.coefficients.push_back(p);
        res.sum = res.sum + p * b.coords();
    }
    const auto w0nu = apply_cascade_word(betas, betas.size(), nu);
    if (nu - w0nu != res.sum)
        throw structural_error("nu - w0(nu) differs from sum of (nu, beta_i) beta_i for nu = " +
                               format_vector(nu));
    return res;
}

/// Modular-function bookkeeping: integrality of (dim l_r + dim z_r)/2 and the vector identity
/// sum_{alpha > 0} mult(alpha) alpha = sum_r (dim l_r + dim z_r)/2 beta_r.
inline CheckReport check_modular(const CascadeDecomposition& dec)
{
    CheckReport rep("modular");
    const auto& sys = dec.system;
    RationalVector lhs(sys.ambient_dim(), 0), rhs(sys.ambient_dim(), 0);
    for (const auto& a : sys.positives())
        lhs = lhs + Rational(sys.mult(a)) * a.coords();
    for (std::size_t r = 0; r < dec.m(); ++r) {
        if ((dec.dim_l[r] + dec.dim_z[r]) % 2 != 0)
            rep.fail("(dim l + dim z)/2 not integral in layer " + std::to_string(r + 1));
        rhs = rhs + make_rational(dec.dim_l[r] + dec.dim_z[r], 2) * dec.betas[r].coords();
    }
    if (lhs != rhs)
        rep.fail("2 rho = " + format_vector(lhs) + " but cascade sum = " + format_vector(rhs));
    return rep;
}

/// Trace of ad(xi) on n computed from the root data: sum over positive roots of mult(alpha) alpha(xi),
/// where xi is given by its values on the simple roots.
inline Rational ad_trace_from_roots(const RestrictedRootSystem& sys, const RationalVector& simple_values)
{
    Rational t = 0;
    for (std::size_t i = 0; i < sys.roots().size(); ++i) {
        if (!sys.positive_at(i))
            continue;
        t += sys.mult_at(i) * dot(sys.simple_coordinates_at(i), simple_values);
    }
    return t;
}

/// Some xi (as values on the simple roots) with prescribed values beta_r(xi).
inline RationalVector xi_from_beta_values(const CascadeDecomposition& dec, const RationalVector& beta_values)
{
    if (beta_values.size() != dec.m())
        throw domain_error("expected one value per cascade root");
    RationalMatrix rows;
    for (const auto& b : dec.betas)
        rows.push_back(dec.system.simple_coordinates(b.coords()));
    return solve_any(rows, beta_values, dec.system.rank());
}

/// Basis of a_diamond = {xi in span(roots) : beta_r(xi) = 0 for all r}, as ambient vectors.
inline RationalMatrix a_diamond(const RestrictedRootSystem& sys, const std::vector<Root>& betas)
{
    const auto& s = sys.simples();
    const std::size_t n = s.size();
    // xi = sum_k c_k alpha_k; constraint <beta_r, xi> = 0.
    RationalMatrix cons;
    for (const auto& b : betas) {
        RationalVector row(n);
        for (std::size_t k = 0; k < n; ++k)
            row[k] = dot(b.coords(), s[k].coords());
        cons.push_back(std::move(row));
    }
    RationalMatrix out;
    for (const auto& c : null_space(cons, n)) {
        RationalVector v(sys.ambient_dim(), 0);
        for (std::size_t k = 0; k < n; ++k)
            v = v + c[k] * s[k].coords();
        out.push_back(primitive_integer(std::move(v)));
    }
    return out;
}

} // namespace rrlie
