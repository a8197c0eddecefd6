#pragma once

// Exact scalar and vector helpers shared by every structural module.

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrlie {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational number: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline std::string to_string(const Integer& z)
{
    return z.get_str();
}

inline bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RationalVector operator+(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector add: dimension mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline RationalVector operator-(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector sub: dimension mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline RationalVector operator-(const RationalVector& a)
{
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

inline RationalVector operator*(const Rational& s, const RationalVector& a)
{
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = s * a[i];
    return r;
}

inline bool is_zero(std::span<const Rational> v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

/// "(1,0,-1/2)"
inline std::string format_vector(std::span<const Rational> v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer pow2(unsigned long n)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
    return r;
}

inline Rational pow(const Rational& base, unsigned long e)
{
    Rational r = 1;
    for (unsigned long i = 0; i < e; ++i)
        r *= base;
    return r;
}

using RationalMatrix = std::vector<RationalVector>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix& m)
{
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[sel], m[row]);
        const Rational inv = 1 / m[row][col];
        for (auto& x : m[row])
            x *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of {x : m x = 0}, one vector per free column.
inline RationalMatrix null_space(RationalMatrix m, std::size_t cols)
{
    RationalMatrix basis;
    if (m.empty()) {
        for (std::size_t c = 0; c < cols; ++c) {
            RationalVector e(cols, 0);
            e[c] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m[i][free];
        basis.push_back(v);
    }
    return basis;
}

/// One solution of m x = rhs (free variables set to zero); throws if inconsistent.
inline RationalVector solve_any(const RationalMatrix& m, const RationalVector& rhs, std::size_t cols)
{
    RationalMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(rhs.at(i));
    const auto pivots = row_reduce(aug);
    RationalVector x(cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols)
            throw std::domain_error("solve_any: inconsistent linear system");
        x[pivots[i]] = aug[i][cols];
    }
    for (std::size_t i = pivots.size(); i < aug.size(); ++i)
        if (aug[i][cols] != 0)
            throw std::domain_error("solve_any: inconsistent linear system");
    return x;
}

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
inline RationalVector primitive_integer(RationalVector v)
{
    Integer l = 1;
    for (const auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Integer g = 0;
    for (auto& x : v) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    }
    if (g == 0)
        return v;
    bool flip = false;
    for (const auto& x : v)
        if (x != 0) {
            flip = x < 0;
            break;
        }
    for (auto& x : v) {
        x /= Rational(g);
        if (flip)
            x = -x;
    }
    return v;
}

} // namespace rrlie
