#include "rrlie/rootsys.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace rrlie;

namespace {

std::vector<CartanType> all_supported()
{
    std::vector<CartanType> out;
    for (int n = 1; n <= 7; ++n) {
        out.push_back({Family::A, n});
        out.push_back({Family::B, n});
        out.push_back({Family::C, n});
        out.push_back({Family::BC, n});
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

RationalVector vec(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> e)
{
    RationalVector v(n, 0);
    for (auto [i, x] : e)
        v[i] = x;
    return v;
}

// Classical roots written down from their defining formulas, independent of the
// reflection-orbit generator.
std::set<RationalVector> classical_roots(const CartanType& t)
{
    const std::size_t n = static_cast<std::size_t>(t.rank);
    std::set<RationalVector> s;
    if (t.family == Family::A) {
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j)
                if (i != j)
                    s.insert(vec(n + 1, {{i, 1}, {j, -1}}));
        return s;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (long a : {-1L, 1L})
                for (long b : {-1L, 1L})
                    s.insert(vec(n, {{i, a}, {j, b}}));
    for (std::size_t i = 0; i < n; ++i)
        for (long a : {-1L, 1L}) {
            if (t.family == Family::B || t.family == Family::BC)
                s.insert(vec(n, {{i, a}}));
            if (t.family == Family::C || t.family == Family::BC)
                s.insert(vec(n, {{i, 2 * a}}));
        }
    return s;
}

std::size_t total_roots(const CartanType& t)
{
    const std::size_t n = static_cast<std::size_t>(t.rank);
    switch (t.family) {
    case Family::A: return n * (n + 1);
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::BC: return 2 * n * n + 2 * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Family::F: return 48;
    case Family::G: return 12;
    }
    return 0;
}

} // namespace

TEST(RootSystem, RootCountsMatchClassification)
{
    for (const auto& t : all_supported()) {
        const auto sys = generate(t);
        EXPECT_EQ(sys.roots().size(), total_roots(t)) << t.label();
        EXPECT_EQ(sys.rank(), static_cast<std::size_t>(t.rank)) << t.label();
    }
}

TEST(RootSystem, ClassicalRootsMatchFormulas)
{
    for (const auto& t : all_supported()) {
        if (t.family == Family::E || t.family == Family::F || t.family == Family::G)
            continue;
        const auto sys = generate(t);
        std::set<RationalVector> got;
        for (const auto& r : sys.roots())
            got.insert(r.coords());
        EXPECT_EQ(got, classical_roots(t)) << t.label();
    }
}

TEST(RootSystem, ExceptionalRootLengths)
{
    // E: all roots have squared length 2. F4: 24 long (2), 24 short (1). G2: 6 and 6 (6 and 2).
    for (int n : {6, 7, 8}) {
        const auto e = generate({Family::E, n});
        for (const auto& r : e.roots())
            EXPECT_EQ(dot(r.coords(), r.coords()), 2);
    }
    std::map<std::string, int> f4, g2;
    const auto f = generate({Family::F, 4});
    const auto g = generate({Family::G, 2});
    for (const auto& r : f.roots())
        ++f4[to_string(dot(r.coords(), r.coords()))];
    for (const auto& r : g.roots())
        ++g2[to_string(dot(r.coords(), r.coords()))];
    EXPECT_EQ(f4, (std::map<std::string, int>{{"1", 24}, {"2", 24}}));
    EXPECT_EQ(g2, (std::map<std::string, int>{{"2", 6}, {"6", 6}}));
}

TEST(RootSystem, HighestRootSimpleCoordinates)
{
    auto highest = [](const RestrictedRootSystem& sys) {
        RationalVector best;
        Rational h = -1;
        for (std::size_t i = 0; i < sys.roots().size(); ++i) {
            Rational s = 0;
            for (const auto& c : sys.simple_coordinates_at(i))
                s += c;
            if (s > h) {
                h = s;
                best = sys.simple_coordinates_at(i);
            }
        }
        return best;
    };
    EXPECT_EQ(highest(generate({Family::E, 8})), (RationalVector{2, 3, 4, 6, 5, 4, 3, 2}));
    EXPECT_EQ(highest(generate({Family::E, 7})), (RationalVector{2, 2, 3, 4, 3, 2, 1}));
    EXPECT_EQ(highest(generate({Family::E, 6})), (RationalVector{1, 2, 2, 3, 2, 1}));
    EXPECT_EQ(highest(generate({Family::F, 4})), (RationalVector{2, 3, 4, 2}));
    EXPECT_EQ(highest(generate({Family::G, 2})), (RationalVector{3, 2}));
    EXPECT_EQ(highest(generate({Family::B, 3})), (RationalVector{1, 2, 2}));
    EXPECT_EQ(highest(generate({Family::C, 3})), (RationalVector{2, 2, 1}));
}

TEST(RootSystem, ValidatesAndIsWeylClosed)
{
    for (const auto& t : all_supported()) {
        const auto rep = validate(generate(t));
        EXPECT_TRUE(rep.passed) << t.label() << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    }
}

TEST(RootSystem, DescendingLexOrder)
{
    const auto sys = generate({Family::A, 2});
    std::vector<std::string> names;
    for (const auto& r : sys.roots())
        names.push_back(r.str());
    EXPECT_EQ(names, (std::vector<std::string>{"e1-e3", "e1-e2", "e2-e3", "-e2+e3", "-e1+e2", "-e1+e3"}));
    for (std::size_t i = 0; i + 1 < sys.roots().size(); ++i)
        EXPECT_GT(sys.roots()[i], sys.roots()[i + 1]);
}

TEST(RootSystem, RootNames)
{
    EXPECT_EQ(Root(RationalVector{0, 2}).str(), "2e2");
    EXPECT_EQ(Root(RationalVector{-2, 1, 1}).str(), "-2e1+e2+e3");
    const Rational h = make_rational(1, 2);
    EXPECT_EQ(Root(RationalVector{h, -h, -h, -h}).str(), "1/2(e1-e2-e3-e4)");
    EXPECT_THROW(Root(RationalVector{0, 0}), domain_error);
}

TEST(RootSystem, Reducedness)
{
    EXPECT_TRUE(generate({Family::C, 3}).reduced());
    EXPECT_FALSE(generate({Family::BC, 2}).reduced());
}

TEST(RootSystem, CartanLabels)
{
    EXPECT_EQ(CartanType::parse("bc3").label(), "BC3");
    EXPECT_EQ(CartanType::parse("E8"), (CartanType{Family::E, 8}));
    EXPECT_THROW(CartanType::parse("X3"), input_error);
    EXPECT_THROW(CartanType::parse("A"), input_error);
    EXPECT_THROW(generate({Family::A, 9}), input_error);
    EXPECT_THROW(generate({Family::E, 5}), input_error);
}

TEST(RootSystem, ReflectionsAndPairings)
{
    const auto sys = generate({Family::C, 2});
    const Root a(RationalVector{1, -1}), b(RationalVector{0, 2});
    EXPECT_EQ(reflect(sys, a, b), Root(RationalVector{2, 0}));
    EXPECT_EQ(pairing(sys, a.coords(), b), -1);
    EXPECT_EQ(pairing(sys, b.coords(), a), -2);
    EXPECT_THROW(reflect(sys, Root(RationalVector{1, 0}), b), domain_error);
    EXPECT_TRUE(is_positive(sys, b.coords()));
    EXPECT_FALSE(is_root(sys, RationalVector{1, 0}));
}

TEST(RootSystem, FundamentalWeightsAreDual)
{
    for (const auto& t : all_supported()) {
        const auto sys = generate(t);
        const auto w = fundamental_weights(sys);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < sys.rank(); ++j)
                EXPECT_EQ(pairing(sys, w[i], sys.simples()[j]), i == j ? 1 : 0) << t.label();
    }
}

TEST(RootSystem, IntegralDominantGeneratorsPairIntegrally)
{
    for (const auto& t : all_supported()) {
        const auto sys = generate(t);
        for (const auto& g : integral_dominant_generators(sys)) {
            EXPECT_TRUE(is_dominant(sys, g));
            for (const auto& r : sys.roots())
                EXPECT_TRUE(is_integer(pairing(sys, g, r))) << t.label();
        }
    }
}

TEST(RootSystem, Multiplicities)
{
    const auto sys = generate({Family::BC, 1}).with_multiplicities([](const Root& r) {
        return dot(r.coords(), r.coords()) == 1 ? 4 : 1;
    });
    EXPECT_EQ(sys.dim_nilradical(), 5);
    EXPECT_THROW(generate({Family::A, 1}).with_multiplicities([](const Root&) { return 0; }), input_error);
}
