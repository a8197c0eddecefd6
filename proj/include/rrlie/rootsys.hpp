#pragma once

// Exact root systems in their standard Euclidean realizations.
//
//   A_n      in R^{n+1}   e_i - e_j
//   B_n      in R^n       +-e_i +- e_j, +-e_i
//   C_n      in R^n       +-e_i +- e_j, +-2e_i
//   D_n      in R^n       +-e_i +- e_j
//   BC_n     in R^n       union of B_n and C_n (e_i and 2e_i are distinct roots)
//   G_2      in R^3       sum-zero plane
//   F_4      in R^4
//   E_6,7,8  in R^8       Bourbaki simple roots, E_n uses the first n
//
// Roots are generated as the orbit of the simple roots (plus 2e_n for BC_n) under the
// simple reflections, so every system is closed under its Weyl group by construction.

#include "rrlie/errors.hpp"
#include "rrlie/rational.hpp"
#include "rrlie/report.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rrlie {

enum class Family { A, B, C, D, BC, E, F, G };

struct CartanType {
    Family family = Family::A;
    int rank = 1;

    std::string label() const
    {
        static constexpr const char* names[] = {"A", "B", "C", "D", "BC", "E", "F", "G"};
        return names[static_cast<int>(family)] + std::to_string(rank);
    }

    /// Accepts "A3", "BC2", "E8" (case-insensitive family).
    static CartanType parse(const std::string& text)
    {
        std::string fam;
        std::size_t i = 0;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
            fam += static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
        const std::string digits = text.substr(i);
        if (fam.empty() || digits.empty() ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw input_error("malformed Cartan label '" + text + "'");
        return make(fam, std::stoi(digits));
    }

    static CartanType make(const std::string& fam, int rank)
    {
        static const std::pair<const char*, Family> table[] = {
            {"A", Family::A}, {"B", Family::B}, {"C", Family::C}, {"D", Family::D},
            {"BC", Family::BC}, {"E", Family::E}, {"F", Family::F}, {"G", Family::G}};
        for (const auto& [name, f] : table)
            if (fam == name)
                return CartanType{f, rank};
        throw input_error("unknown Cartan family '" + fam + "'");
    }

    friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Nonzero vector of rational coordinates. Ordering is lexicographic on coordinates.
class Root {
public:
    Root() = default;

    explicit Root(RationalVector coords) : coords_(std::move(coords))
    {
        if (is_zero(coords_))
            throw domain_error("a root cannot be the zero vector");
    }

    const RationalVector& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }

    Root operator-() const { return Root(rrlie::operator-(coords_)); }

    friend bool operator==(const Root& a, const Root& b) { return a.coords_ == b.coords_; }

    friend std::strong_ordering operator<=>(const Root& a, const Root& b)
    {
        for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i) {
            const int c = cmp(a.coords_[i], b.coords_[i]);
            if (c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a.dim() <=> b.dim();
    }

    /// Human-readable form: "e1-e4", "2e2", "-2e1+e2+e3", "1/2(e1-e2-e3-e4)".
    std::string str() const
    {
        const bool halves = std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) {
            return x == make_rational(1, 2) || x == make_rational(-1, 2);
        });
        if (halves && coords_.size() > 1) {
            std::string s = "1/2(";
            for (std::size_t i = 0; i < coords_.size(); ++i) {
                if (coords_[i] < 0)
                    s += "-";
                else if (i)
                    s += "+";
                s += "e" + std::to_string(i + 1);
            }
            return s + ")";
        }
        std::string s;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            const Rational& x = coords_[i];
            if (x == 0)
                continue;
            Rational mag = abs(x);
            if (x < 0)
                s += "-";
            else if (!s.empty())
                s += "+";
            if (mag != 1)
                s += to_string(mag);
            s += "e" + std::to_string(i + 1);
        }
        return s;
    }

private:
    RationalVector coords_;
};

/// Integer key for a vector whose coordinates lie in (1/2)Z; used for hash lookups.
inline std::string root_key(std::span<const Rational> v)
{
    std::string key(v.size(), '\0');
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational twice = 2 * v[i];
        if (!is_integer(twice) || abs(twice) > 120)
            return {};
        key[i] = static_cast<char>(twice.get_num().get_si());
    }
    return key;
}

class RestrictedRootSystem {
public:
    RestrictedRootSystem(CartanType type, std::size_t ambient, std::vector<Root> roots,
                         std::vector<Root> simples)
        : type_(type), ambient_(ambient), roots_(std::move(roots)), simples_(std::move(simples))
    {
        std::sort(roots_.begin(), roots_.end(), std::greater<>());
        for (std::size_t i = 0; i < roots_.size(); ++i)
            index_.emplace(root_key(roots_[i].coords()), i);
        mult_.assign(roots_.size(), 1);

        RationalMatrix gram(simples_.size(), RationalVector(simples_.size()));
        for (std::size_t i = 0; i < simples_.size(); ++i)
            for (std::size_t j = 0; j < simples_.size(); ++j)
                gram[i][j] = dot(simples_[i].coords(), simples_[j].coords());
        gram_inverse_ = invert(gram);

        simple_coords_.reserve(roots_.size());
        for (const auto& r : roots_) {
            simple_coords_.push_back(simple_coordinates(r.coords()));
            bool pos = false;
            for (const auto& c : simple_coords_.back())
                if (c != 0) {
                    pos = c > 0;
                    break;
                }
            positive_flag_.push_back(pos);
            if (pos)
                positives_.push_back(r);
        }
    }

    const CartanType& type() const { return type_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return simples_.size(); }
    const std::vector<Root>& roots() const { return roots_; }
    const std::vector<Root>& positives() const { return positives_; }
    const std::vector<Root>& simples() const { return simples_; }

    std::optional<std::size_t> index_of(std::span<const Rational> v) const
    {
        if (v.size() != ambient_)
            return std::nullopt;
        const auto key = root_key(v);
        if (key.empty())
            return std::nullopt;
        auto it = index_.find(key);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index_of_root(const Root& r) const
    {
        auto i = index_of(r.coords());
        if (!i)
            throw domain_error(r.str() + " is not a root of " + type_.label());
        return *i;
    }

    bool contains(std::span<const Rational> v) const { return index_of(v).has_value(); }

    bool positive(std::span<const Rational> v) const
    {
        auto i = index_of(v);
        return i && positive_flag_[*i];
    }

    bool positive_at(std::size_t i) const { return positive_flag_[i]; }

    int mult(const Root& r) const { return mult_[index_of_root(r)]; }
    int mult_at(std::size_t i) const { return mult_[i]; }

    /// Coefficients of v over the simple roots (v must lie in their span).
    RationalVector simple_coordinates(std::span<const Rational> v) const
    {
        RationalVector proj(simples_.size());
        for (std::size_t i = 0; i < simples_.size(); ++i)
            proj[i] = dot(simples_[i].coords(), v);
        RationalVector c(simples_.size(), 0);
        for (std::size_t i = 0; i < simples_.size(); ++i)
            for (std::size_t j = 0; j < simples_.size(); ++j)
                c[i] += gram_inverse_[i][j] * proj[j];
        return c;
    }

    const RationalVector& simple_coordinates_at(std::size_t i) const { return simple_coords_[i]; }

    Rational height(const Root& r) const
    {
        Rational h = 0;
        for (const auto& c : simple_coords_[index_of_root(r)])
            h += c;
        return h;
    }

    /// True iff v - w is a nonnegative combination of simple roots.
    bool dominates(std::span<const Rational> v, std::span<const Rational> w) const
    {
        RationalVector diff(v.begin(), v.end());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] -= w[i];
        for (const auto& c : simple_coordinates(diff))
            if (c < 0)
                return false;
        return true;
    }

    bool reduced() const
    {
        for (const auto& r : roots_)
            if (contains((make_rational(2) * r.coords())))
                return false;
        return true;
    }

    /// dim n = sum of multiplicities over positive roots.
    long dim_nilradical() const
    {
        long d = 0;
        for (std::size_t i = 0; i < roots_.size(); ++i)
            if (positive_flag_[i])
                d += mult_[i];
        return d;
    }

    /// Returns a copy whose multiplicity function is given by `mult_of`.
    RestrictedRootSystem with_multiplicities(const std::function<int(const Root&)>& mult_of) const
    {
        RestrictedRootSystem copy = *this;
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            const int m = mult_of(roots_[i]);
            if (m <= 0)
                throw input_error("multiplicity of " + roots_[i].str() + " must be positive");
            copy.mult_[i] = m;
        }
        return copy;
    }

private:
    static RationalMatrix invert(RationalMatrix m)
    {
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            m[i].resize(2 * n, 0);
            m[i][n + i] = 1;
        }
        const auto piv = row_reduce(m);
        if (piv.size() != n || (n && piv.back() >= n))
            throw structural_error("simple roots are linearly dependent");
        RationalMatrix inv(n, RationalVector(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                inv[i][j] = m[i][n + j];
        return inv;
    }

    CartanType type_;
    std::size_t ambient_;
    std::vector<Root> roots_;
    std::vector<Root> positives_;
    std::vector<Root> simples_;
    std::vector<int> mult_;
    std::vector<bool> positive_flag_;
    std::vector<RationalVector> simple_coords_;
    RationalMatrix gram_inverse_;
    std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Reflections and pairings

/// s_alpha(v) = v - 2<v,alpha>/<alpha,alpha> alpha, on arbitrary vectors.
inline RationalVector reflect_vector(std::span<const Rational> alpha, std::span<const Rational> v)
{
    const Rational f = 2 * dot(v, alpha) / dot(alpha, alpha);
    RationalVector r(v.begin(), v.end());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= f * alpha[i];
    return r;
}

inline Root reflect(const RestrictedRootSystem& sys, const Root& alpha, const Root& beta)
{
    if (!sys.contains(alpha.coords()))
        throw domain_error(alpha.str() + " is not a root of " + sys.type().label());
    return Root(reflect_vector(alpha.coords(), beta.coords()));
}

/// Cartan pairing 2<nu,beta>/<beta,beta>.
inline Rational pairing(const RestrictedRootSystem& sys, std::span<const Rational> nu, const Root& beta)
{
    if (!sys.contains(beta.coords()))
        throw domain_error(beta.str() + " is not a root of " + sys.type().label());
    return 2 * dot(nu, beta.coords()) / dot(beta.coords(), beta.coords());
}

inline bool is_root(const RestrictedRootSystem& sys, std::span<const Rational> v)
{
    return sys.contains(v);
}

inline bool is_positive(const RestrictedRootSystem& sys, std::span<const Rational> v)
{
    return sys.positive(v);
}

// ---------------------------------------------------------------------------
// Generation

namespace detail {

inline Root unit(std::size_t n, std::initializer_list<std::pair<std::size_t, Rational>> entries)
{
    RationalVector v(n, 0);
    for (const auto& [i, x] : entries)
        v[i] = x;
    return Root(std::move(v));
}

inline std::vector<Root> e8_simples(int count)
{
    const Rational h = make_rational(1, 2);
    std::vector<Root> s;
    s.push_back(Root(RationalVector{h, -h, -h, -h, -h, -h, -h, h}));
    s.push_back(unit(8, {{0, 1}, {1, 1}}));
    for (std::size_t i = 1; i < 7; ++i)
        s.push_back(unit(8, {{i - 1, -1}, {i, 1}}));
    s.resize(static_cast<std::size_t>(count), s.front());
    return s;
}

inline std::vector<Root> orbit_closure(const std::vector<Root>& simples, std::vector<Root> seeds)
{
    std::unordered_map<std::string, bool> seen;
    std::vector<Root> out;
    std::deque<Root> queue;
    for (auto& s : seeds) {
        if (seen.emplace(root_key(s.coords()), true).second) {
            out.push_back(s);
            queue.push_back(std::move(s));
        }
    }
    while (!queue.empty()) {
        Root r = std::move(queue.front());
        queue.pop_front();
        for (const auto& s : simples) {
            Root img(reflect_vector(s.coords(), r.coords()));
            if (seen.emplace(root_key(img.coords()), true).second) {
                out.push_back(img);
                queue.push_back(std::move(img));
            }
        }
    }
    return out;
}

} // namespace detail

/// Rank limits of the supported catalogue.
inline bool supported(const CartanType& t)
{
    switch (t.family) {
    case Family::A: return t.rank >= 1 && t.rank <= 7;
    case Family::B:
    case Family::C:
    case Family::BC: return t.rank >= 1 && t.rank <= 7;
    case Family::D: return t.rank >= 2 && t.rank <= 7;
    case Family::E: return t.rank >= 6 && t.rank <= 8;
    case Family::F: return t.rank == 4;
    case Family::G: return t.rank == 2;
    }
    return false;
}

/// Number of positive roots, from the classification.
inline std::size_t classical_positive_count(const CartanType& t)
{
    const std::size_t n = static_cast<std::size_t>(t.rank);
    switch (t.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::BC: return n * n + n;
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
    }
    return 0;
}

/// Full system with canonical simple roots and all multiplicities 1.
inline RestrictedRootSystem generate(const CartanType& t)
{
    using detail::unit;
    if (!supported(t))
        throw input_error("unsupported root system " + t.label());
    const std::size_t n = static_cast<std::size_t>(t.rank);
    std::size_t ambient = n;
    std::vector<Root> simples;
    std::vector<Root> extra;
    switch (t.family) {
    case Family::A:
        ambient = n + 1;
        for (std::size_t i = 0; i < n; ++i)
            simples.push_back(unit(ambient, {{i, 1}, {i + 1, -1}}));
        break;
    case Family::B:
    case Family::C:
    case Family::BC:
        for (std::size_t i = 0; i + 1 < n; ++i)
            simples.push_back(unit(n, {{i, 1}, {i + 1, -1}}));
        simples.push_back(unit(n, {{n - 1, t.family == Family::C ? 2 : 1}}));
        if (t.family == Family::BC)
            extra.push_back(unit(n, {{n - 1, 2}}));
        break;
    case Family::D:
        for (std::size_t i = 0; i + 1 < n; ++i)
            simples.push_back(unit(n, {{i, 1}, {i + 1, -1}}));
        simples.push_back(unit(n, {{n - 2, 1}, {n - 1, 1}}));
        break;
    case Family::G:
        ambient = 3;
        simples.push_back(unit(3, {{0, 1}, {1, -1}}));
        simples.push_back(unit(3, {{0, -2}, {1, 1}, {2, 1}}));
        break;
    case Family::F: {
        const Rational h = make_rational(1, 2);
        simples.push_back(unit(4, {{1, 1}, {2, -1}}));
        simples.push_back(unit(4, {{2, 1}, {3, -1}}));
        simples.push_back(unit(4, {{3, 1}}));
        simples.push_back(Root(RationalVector{h, -h, -h, -h}));
        break;
    }
    case Family::E:
        ambient = 8;
        simples = detail::e8_simples(t.rank);
        break;
    }
    std::vector<Root> seeds = simples;
    seeds.insert(seeds.end(), extra.begin(), extra.end());
    auto roots = detail::orbit_closure(simples, std::move(seeds));
    RestrictedRootSystem sys(t, ambient, std::move(roots), std::move(simples));
    if (sys.positives().size() != classical_positive_count(t))
        throw structural_error("generated " + std::to_string(sys.positives().size()) +
                               " positive roots for " + t.label());
    return sys;
}

// ---------------------------------------------------------------------------
// Weights

/// omega_i with (omega_i, alpha_j^vee) = delta_ij, inside the span of the roots.
inline std::vector<RationalVector> fundamental_weights(const RestrictedRootSystem& sys)
{
    const auto& s = sys.simples();
    const std::size_t n = s.size();
    RationalMatrix m(n, RationalVector(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            m[j][k] = 2 * dot(s[k].coords(), s[j].coords()) / dot(s[j].coords(), s[j].coords());
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector rhs(n, 0);
        rhs[i] = 1;
        const auto c = solve_any(m, rhs, n);
        RationalVector w(sys.ambient_dim(), 0);
        for (std::size_t k = 0; k < n; ++k)
            w = w + c[k] * s[k].coords();
        out.push_back(std::move(w));
    }
    return out;
}

/// Generators of the dominant weights integral against every coroot of the system
/// (for BC_n this includes the coroot of 2e_i).
inline std::vector<RationalVector> integral_dominant_generators(const RestrictedRootSystem& sys)
{
    auto ws = fundamental_weights(sys);
    for (auto& w : ws) {
        Integer l = 1;
        for (const auto& r : sys.roots()) {
            const Rational p = pairing(sys, w, r);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_den().get_mpz_t());
        }
        w = Rational(l) * w;
    }
    return ws;
}

inline bool is_dominant(const RestrictedRootSystem& sys, std::span<const Rational> nu)
{
    for (const auto& s : sys.simples())
        if (pairing(sys, nu, s) < 0)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Invariants

inline CheckReport validate(const RestrictedRootSystem& sys)
{
    CheckReport rep("root_system");
    std::size_t pos = 0;
    for (std::size_t i = 0; i < sys.roots().size(); ++i) {
        const Root& r = sys.roots()[i];
        const auto neg = sys.index_of((-r).coords());
        if (!neg) {
            rep.fail("-" + r.str() + " missing");
            continue;
        }
        if (sys.positive_at(i) == sys.positive_at(*neg))
            rep.fail(r.str() + " and its negative have the same sign");
        if (sys.mult_at(i) != sys.mult_at(*neg))
            rep.fail("mult(" + r.str() + ") != mult(-" + r.str() + ")");
        if (sys.positive_at(i)) {
            ++pos;
            for (const auto& c : sys.simple_coordinates_at(i))
                if (c < 0 || !is_integer(c))
                    rep.fail(r.str() + " is not a nonnegative integer combination of simples");
        }
        for (const Root& a : sys.roots())
            if (!sys.contains(reflect_vector(a.coords(), r.coords())))
                rep.fail("s_" + a.str() + "(" + r.str() + ") is not a root");
    }
    if (2 * pos != sys.roots().size())
        rep.fail("positive roots are not half of all roots");
    return rep;
}

} // namespace rrlie
