#pragma once

// Chevalley structure constants for split (reduced) root systems and the nilradical
// n = l_1 + ... + l_m assembled from them.
//
// Convention: [x_a, x_b] = N(a,b) x_{a+b} when a+b is a root, [x_a, x_{-a}] = h_a with
// h_a the coroot 2a/<a,a>, [h, x_b] = <b,h> x_b. Signs come from the extraspecial-pair
// algorithm: positive roots are ordered by height, then descending lexicographic order, and
// N = +(p+1) on every extraspecial pair. Any other consistent sign choice changes the
// Pfaffians below only by a sign.

#include "rrlie/cascade.hpp"
#include "rrlie/errors.hpp"
#include "rrlie/rational.hpp"
#include "rrlie/report.hpp"
#include "rrlie/rootsys.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rrlie {

class StructureConstants {
public:
    explicit StructureConstants(const RestrictedRootSystem& sys) : sys_(sys)
    {
        const std::size_t n = sys.roots().size();
        sum_.assign(n * n, -1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto k = sys.index_of(sys.roots()[i].coords() + sys.roots()[j].coords());
                if (k)
                    sum_[i * n + j] = static_cast<int>(*k);
            }
        neg_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            neg_[i] = sys.index_of_root(-sys.roots()[i]);
        cartan_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto& a = sys.roots()[i].coords();
                const auto& b = sys.roots()[j].coords();
                const Rational c = 2 * dot(a, b) / dot(b, b);
                if (!is_integer(c))
                    throw structural_error("non-integral Cartan number");
                cartan_[i * n + j] = static_cast<int>(c.get_num().get_si());
            }
        table_.assign(n * n, 0);
    }

    const RestrictedRootSystem& system() const { return sys_; }
    std::size_t size() const { return sys_.roots().size(); }

    /// N(a,b) by root index.
    int N(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }

    int N(const Root& a, const Root& b) const { return N(sys_.index_of_root(a), sys_.index_of_root(b)); }

    /// Index of roots()[i] + roots()[j], if that is a root.
    std::optional<std::size_t> sum(std::size_t i, std::size_t j) const
    {
        const int k = sum_[i * size() + j];
        if (k < 0)
            return std::nullopt;
        return static_cast<std::size_t>(k);
    }

    std::size_t negative(std::size_t i) const { return neg_[i]; }

    /// 2<a_i, a_j>/<a_j, a_j>
    int cartan(std::size_t i, std::size_t j) const { return cartan_[i * size() + j]; }

    /// p = max{k : b - k a is a root}.
    int string_p(std::size_t a, std::size_t b) const
    {
        int p = 0;
        RationalVector v = sys_.roots()[b].coords();
        for (;;) {
            v = v - sys_.roots()[a].coords();
            if (!sys_.contains(v))
                return p;
            ++p;
        }
    }

private:
    friend StructureConstants chevalley(const RestrictedRootSystem&);

    void set(std::size_t i, std::size_t j, int v) { table_[i * size() + j] = v; }

    RestrictedRootSystem sys_;
    std::vector<int> sum_;
    std::vector<std::size_t> neg_;
    std::vector<int> cartan_;
    std::vector<int> table_;
};

namespace detail {

// Sum of Lie brackets of root vectors: root-vector coefficients plus a Cartan part.
struct BracketSum {
    std::map<std::size_t, long> roots;
    RationalVector cartan;

    bool zero() const
    {
        return std::all_of(roots.begin(), roots.end(), [](const auto& kv) { return kv.second == 0; }) &&
               is_zero(cartan);
    }
};

// Accumulates coef * [x_a, [x_b, x_c]].
inline void add_double_bracket(const StructureConstants& sc, std::size_t a, std::size_t b, std::size_t c,
                               BracketSum& acc)
{
    const auto& sys = sc.system();
    if (sc.negative(b) == c) {
        // [x_b, x_{-b}] = h_b ; [x_a, h_b] = -<a, h_b> x_a
        acc.roots[a] -= sc.cartan(a, b);
        return;
    }
    const auto e = sc.sum(b, c);
    if (!e)
        return;
    const long nbc = sc.N(b, c);
    if (sc.negative(a) == *e) {
        const auto& r = sys.roots()[a].coords();
        const Rational f = Rational(2 * nbc) / dot(r, r);
        acc.cartan = acc.cartan + f * r;
        return;
    }
    const auto f = sc.sum(a, *e);
    if (f)
        acc.roots[*f] += nbc * sc.N(a, *e);
}

} // namespace detail

/// Jacobi identity on the triple of root vectors (a, b, c).
inline bool jacobi_holds(const StructureConstants& sc, std::size_t a, std::size_t b, std::size_t c)
{
    detail::BracketSum acc;
    acc.cartan.assign(sc.system().ambient_dim(), 0);
    detail::add_double_bracket(sc, a, b, c, acc);
    detail::add_double_bracket(sc, b, c, a, acc);
    detail::add_double_bracket(sc, c, a, b, acc);
    return acc.zero();
}

/// Jacobi over root-vector triples: exhaustive when `sample` is 0, otherwise the triples
/// containing a simple root vector (or its negative) plus `sample` seeded random triples.
inline CheckReport check_jacobi(const StructureConstants& sc, std::size_t sample = 0, unsigned seed = 1,
                                bool positive_only = false)
{
    CheckReport rep("jacobi");
    const auto& sys = sc.system();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sc.size(); ++i)
        if (!positive_only || sys.positive_at(i))
            idx.push_back(i);
    auto test = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (!jacobi_holds(sc, a, b, c))
            rep.fail(sys.roots()[a].str() + ", " + sys.roots()[b].str() + ", " + sys.roots()[c].str());
    };
    if (sample == 0) {
        for (auto a : idx)
            for (auto b : idx)
                for (auto c : idx)
                    test(a, b, c);
        return rep;
    }
    std::vector<std::size_t> gens;
    for (const auto& s : sys.simples()) {
        const auto i = sys.index_of_root(s);
        gens.push_back(i);
        if (!positive_only)
            gens.push_back(sc.negative(i));
    }
    for (auto g : gens)
        for (auto b : idx)
            for (auto c : idx)
                test(g, b, c);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
    for (std::size_t t = 0; t < sample; ++t)
        test(idx[pick(rng)], idx[pick(rng)], idx[pick(rng)]);
    return rep;
}

/// |N(a,b)| = p + 1 and N(a,b) = -N(b,a) on every pair whose sum is a root.
inline CheckReport check_chevalley_property(const StructureConstants& sc)
{
    CheckReport rep("chevalley_property");
    const auto& sys = sc.system();
    for (std::size_t i = 0; i < sc.size(); ++i)
        for (std::size_t j = 0; j < sc.size(); ++j) {
            if (!sc.sum(i, j)) {
                if (sc.N(i, j) != 0)
                    rep.fail("nonzero N on a non-root sum");
                continue;
            }
            const int p = sc.string_p(i, j);
            if (std::abs(sc.N(i, j)) != p + 1)
                rep.fail("|N(" + sys.roots()[i].str() + ", " + sys.roots()[j].str() + ")| != " +
                         std::to_string(p + 1));
            if (sc.N(i, j) != -sc.N(j, i))
                rep.fail("antisymmetry fails at " + sys.roots()[i].str() + ", " + sys.roots()[j].str());
        }
    return rep;
}

inline StructureConstants chevalley(const RestrictedRootSystem& sys)
{
    if (!sys.reduced())
        throw domain_error("Chevalley structure constants need a reduced root system, got " + sys.type().label());
    StructureConstants sc(sys);
    const std::size_t n = sc.size();
    const auto& roots = sys.roots();

    std::vector<std::size_t> pos;
    std::vector<Rational> height(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& c : sys.simple_coordinates_at(i))
            height[i] += c;
        if (sys.positive_at(i))
            pos.push_back(i);
    }
    // roots() is already in descending lexicographic order, so a stable sort by height gives
    // (height, descending lex).
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return height[a] < height[b]; });
    std::vector<std::size_t> rank_of(n, 0);
    for (std::size_t k = 0; k < pos.size(); ++k)
        rank_of[pos[k]] = k;

    std::vector<Rational> len2(n);
    for (std::size_t i = 0; i < n; ++i)
        len2[i] = dot(roots[i].coords(), roots[i].coords());

    std::vector<bool> done(n * n, false);
    std::function<Rational(std::size_t, std::size_t)> full = [&](std::size_t i, std::size_t j) -> Rational {
        if (!sc.sum(i, j))
            return 0;
        const bool pi = sys.positive_at(i), pj = sys.positive_at(j);
        if (pi && pj) {
            if (!done[i * n + j])
                throw structural_error("extraspecial recursion used an uncomputed constant");
            return sc.N(i, j);
        }
        if (!pi && !pj)
            return -full(sc.negative(i), sc.negative(j));
        const std::size_t k = sc.negative(*sc.sum(i, j));
        if (sys.positive_at(k) == pj)
            return len2[k] / len2[i] * full(j, k);
        return len2[k] / len2[j] * full(k, i);
    };

    for (std::size_t xi : pos) {
        // Extraspecial pair (g, d): g the earliest positive root with xi - g positive.
        std::optional<std::size_t> g;
        for (std::size_t cand : pos) {
            const auto d = sys.index_of(roots[xi].coords() - roots[cand].coords());
            if (d && sys.positive_at(*d)) {
                g = cand;
                break;
            }
        }
        if (!g)
            continue; // simple root
        const std::size_t d = sys.index_of_root(Root(roots[xi].coords() - roots[*g].coords()));
        const int ngd = sc.string_p(*g, d) + 1;
        sc.set(*g, d, ngd);
        sc.set(d, *g, -ngd);
        done[*g * n + d] = done[d * n + *g] = true;

        for (std::size_t a : pos) {
            const auto bo = sys.index_of(roots[xi].coords() - roots[a].coords());
            if (!bo || !sys.positive_at(*bo))
                continue;
            const std::size_t b = *bo;
            if (a == *g || a == d)
                continue;
            if (rank_of[a] > rank_of[b])
                continue; // filled from (b, a)
            const std::size_t ma = sc.negative(a), mb = sc.negative(b);
            Rational acc = 0;
            if (const auto e = sc.sum(d, ma); e)
                acc += full(d, ma) * full(*g, mb) / len2[*e];
            if (const auto e = sc.sum(*g, ma); e)
                acc += full(ma, *g) * full(d, mb) / len2[*e];
            const Rational val = len2[xi] / ngd * acc;
            if (!is_integer(val) || val == 0)
                throw structural_error("extraspecial recursion produced N = " + to_string(val) + " at " +
                                       roots[a].str() + ", " + roots[b].str());
            const int v = static_cast<int>(val.get_num().get_si());
            sc.set(a, b, v);
            sc.set(b, a, -v);
            done[a * n + b] = done[b * n + a] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (sys.positive_at(i) && sys.positive_at(j))
                continue;
            const Rational v = full(i, j);
            if (!is_integer(v))
                throw structural_error("non-integral structure constant");
            sc.set(i, j, static_cast<int>(v.get_num().get_si()));
        }

    const auto prop = check_chevalley_property(sc);
    if (!prop.passed)
        throw structural_error("Chevalley property violated: " + prop.failures.front());
    const std::size_t sample = sys.rank() <= 5 ? 0 : 200000;
    const auto jac = check_jacobi(sc, sample);
    if (!jac.passed)
        throw structural_error("Jacobi identity violated at " + jac.failures.front());
    return sc;
}

// ---------------------------------------------------------------------------
// Nilradical

struct NilradicalAlgebra {
    CascadeDecomposition decomp;
    StructureConstants sc;
    std::vector<Root> v_basis; ///< layer by layer, each layer in descending lex order
    std::vector<Root> s_basis; ///< x_{beta_1}, ..., x_{beta_m}

    std::size_t dim() const { return v_basis.size() + s_basis.size(); }

    /// Basis of n: layer 1 (Delta^+_1 then beta_1), layer 2, ...
    std::vector<Root> basis() const
    {
        std::vector<Root> b;
        for (std::size_t r = 0; r < decomp.m(); ++r) {
            b.insert(b.end(), decomp.layers[r].begin(), decomp.layers[r].end());
            b.push_back(decomp.betas[r]);
        }
        return b;
    }
};

inline bool is_split(const RestrictedRootSystem& sys)
{
    for (std::size_t i = 0; i < sys.roots().size(); ++i)
        if (sys.mult_at(i) != 1)
            return false;
    return sys.reduced();
}

inline NilradicalAlgebra build_nilradical(const CascadeDecomposition& dec)
{
    if (!is_split(dec.system))
        throw domain_error("structure constants are only available for split forms");
    NilradicalAlgebra alg{dec, chevalley(dec.system), {}, dec.betas};
    for (const auto& layer : dec.layers)
        alg.v_basis.insert(alg.v_basis.end(), layer.begin(), layer.end());
    return alg;
}

/// Bracket conditions of the stepwise square-integrable setup, checked on root vectors:
///   each n_r = l_1 + ... + l_r is an ideal of n;
///   [l_r, z_s] = 0 and [l_r, l_s] in v for r > s;
///   [l_r, l_s] in l_{min(r,s)};
///   [l_r, l_r] in z_r and z_r central in l_r;
///   Jacobi on n.
inline CheckReport verify_brackets(const NilradicalAlgebra& alg)
{
    CheckReport rep("setup");
    const auto& dec = alg.decomp;
    const auto& sys = dec.system;
    const auto& sc = alg.sc;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < sys.roots().size(); ++i)
        if (sys.positive_at(i))
            pos.push_back(i);
    std::vector<bool> is_beta(sys.roots().size(), false);
    for (const auto& b : dec.betas)
        is_beta[sys.index_of_root(b)] = true;

    auto name = [&](std::size_t i) { return sys.roots()[i].str(); };
    for (auto a : pos)
        for (auto b : pos) {
            const auto s = sc.sum(a, b);
            if (!s || sc.N(a, b) == 0)
                continue;
            const int ra = dec.layer_index[a], rb = dec.layer_index[b], rs = dec.layer_index[*s];
            const std::string pair = "[" + name(a) + ", " + name(b) + "]";
            if (rs > std::max(ra, rb) || rs > rb)
                rep.fail(pair + " leaves the ideal n_" + std::to_string(rb + 1));
            if (rs != std::min(ra, rb))
                rep.fail(pair + " not in l_" + std::to_string(std::min(ra, rb) + 1));
            if (ra != rb) {
                if (is_beta[a] || is_beta[b]) {
                    // one side is z_s with s < r
                    const bool z_lower = (is_beta[a] && ra < rb) || (is_beta[b] && rb < ra);
                    if (z_lower)
                        rep.fail(pair + " != 0 although z_s is central for later layers");
                }
                if (is_beta[*s])
                    rep.fail(pair + " has a component in the quasi-centre");
            } else {
                if (is_beta[a] || is_beta[b])
                    rep.fail(pair + " != 0 although z_r is central in l_r");
                if (*s != sys.index_of_root(dec.betas[ra]))
                    rep.fail(pair + " not in z_" + std::to_string(ra + 1));
            }
        }
    rep.merge(check_jacobi(sc, 0, 1, true));
    return rep;
}

/// Values alpha(xi) for every root, from xi's values on the simple roots.
inline RationalVector root_values(const RestrictedRootSystem& sys, const RationalVector& simple_values)
{
    if (simple_values.size() != sys.rank())
        throw domain_error("xi must be given by one value per simple root");
    RationalVector out;
    for (std::size_t i = 0; i < sys.roots().size(); ++i)
        out.push_back(dot(sys.simple_coordinates_at(i), simple_values));
    return out;
}

/// Diagonal matrix of ad(xi) on n in the basis NilradicalAlgebra::basis(). Asserts that the
/// trace on each layer l_r is (dim l_r + dim z_r)/2 * beta_r(xi).
inline RationalMatrix ad_matrix(const NilradicalAlgebra& alg, const RationalVector& simple_values)
{
    const auto& sys = alg.decomp.system;
    const auto vals = root_values(sys, simple_values);
    const auto basis = alg.basis();
    RationalMatrix m(basis.size(), RationalVector(basis.size(), 0));
    std::vector<Rational> trace(alg.decomp.m(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto i = sys.index_of_root(basis[k]);
        m[k][k] = vals[i];
        trace[static_cast<std::size_t>(alg.decomp.layer_index[i])] += vals[i];
    }
    const auto expo = alg.decomp.modular_exponents();
    for (std::size_t r = 0; r < alg.decomp.m(); ++r) {
        const Rational expect = Rational(expo[r]) * vals[sys.index_of_root(alg.decomp.betas[r])];
        if (trace[r] != expect)
            throw structural_error("trace of ad(xi) on l_" + std::to_string(r + 1) + " is " + to_string(trace[r]) +
                                   ", expected " + to_string(expect));
    }
    return m;
}

inline Rational trace(const RationalMatrix& m)
{
    Rational t = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        t += m[i][i];
    return t;
}

} // namespace rrlie
