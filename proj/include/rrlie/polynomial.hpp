#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// Terms are kept in graded-lex order (total degree descending, then exponent vectors
// descending lexicographically); that order is also the print order of to_string().

#include "rrlie/errors.hpp"
#include "rrlie/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace rrlie {

using Monomial = std::vector<unsigned>;

struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
        const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
        if (da != db)
            return da > db;
        return a > b;
    }
};

template <typename Coeff = Rational>
class SparsePolynomial {
public:
    using Terms = std::map<Monomial, Coeff, GradedLexGreater>;

    SparsePolynomial() = default;
    explicit SparsePolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static SparsePolynomial constant(std::vector<std::string> vars, const Coeff& c)
    {
        SparsePolynomial p(std::move(vars));
        p.add_term(Monomial(p.nvars(), 0), c);
        return p;
    }

    static SparsePolynomial variable(std::vector<std::string> vars, std::size_t i, const Coeff& c = Coeff(1))
    {
        SparsePolynomial p(std::move(vars));
        Monomial m(p.nvars(), 0);
        m.at(i) = 1;
        p.add_term(m, c);
        return p;
    }

    /// Variables l1, ..., lk.
    static std::vector<std::string> default_vars(std::size_t k)
    {
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= k; ++i)
            v.push_back("l" + std::to_string(i));
        return v;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Coeff& c)
    {
        if (m.size() != nvars())
            throw domain_error("monomial has the wrong number of variables");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Total degree; -1 for the zero polynomial.
    long degree() const
    {
        if (terms_.empty())
            return -1;
        const auto& m = terms_.begin()->first;
        return std::accumulate(m.begin(), m.end(), 0L);
    }

    /// Degree in variable i; -1 for the zero polynomial.
    long degree_in(std::size_t i) const
    {
        long d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max<long>(d, m.at(i));
        return d;
    }

    bool homogeneous() const
    {
        for (const auto& [m, c] : terms_)
            if (std::accumulate(m.begin(), m.end(), 0L) != degree())
                return false;
        return true;
    }

    Coeff evaluate(const std::vector<Coeff>& point) const
    {
        if (point.size() != nvars())
            throw domain_error("evaluation point has the wrong dimension");
        Coeff total = 0;
        for (const auto& [m, c] : terms_) {
            Coeff t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e)
                    t *= point[i];
            total += t;
        }
        return total;
    }

    /// p(t_1 x_1, ..., t_k x_k)
    SparsePolynomial scale_variables(const std::vector<Coeff>& t) const
    {
        if (t.size() != nvars())
            throw domain_error("scale vector has the wrong dimension");
        SparsePolynomial out(vars_);
        for (const auto& [m, c] : terms_) {
            Coeff f = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e)
                    f *= t[i];
            out.add_term(m, f);
        }
        return out;
    }

    SparsePolynomial operator-() const
    {
        SparsePolynomial out(vars_);
        for (const auto& [m, c] : terms_)
            out.terms_.emplace(m, -c);
        return out;
    }

    SparsePolynomial& operator+=(const SparsePolynomial& o)
    {
        adopt_vars(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    SparsePolynomial& operator-=(const SparsePolynomial& o)
    {
        adopt_vars(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    SparsePolynomial& operator*=(const Coeff& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
    friend SparsePolynomial operator*(SparsePolynomial a, const Coeff& s) { return a *= s; }
    friend SparsePolynomial operator*(const Coeff& s, SparsePolynomial a) { return a *= s; }

    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b)
    {
        SparsePolynomial out(a.nvars() ? a.vars_ : b.vars_);
        if (a.nvars() && b.nvars() && a.vars_ != b.vars_)
            throw domain_error("polynomials over different variables");
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b)
    {
        if (a.vars_ == b.vars_ || a.is_zero() || b.is_zero())
            return a.terms_ == b.terms_;
        // A polynomial in no variables is a constant in every ring.
        if (a.vars_.empty() || b.vars_.empty())
            return a.degree() <= 0 && b.degree() <= 0 && a.evaluate(std::vector<Coeff>(a.nvars())) ==
                                                              b.evaluate(std::vector<Coeff>(b.nvars()));
        return false;
    }

    SparsePolynomial pow(unsigned e) const
    {
        SparsePolynomial out = constant(vars_, Coeff(1));
        for (unsigned i = 0; i < e; ++i)
            out *= *this;
        return out;
    }

    /// Exact quotient *this / d; throws domain_error if d does not divide.
    SparsePolynomial divide_exact(const SparsePolynomial& d) const
    {
        if (d.is_zero())
            throw domain_error("division by the zero polynomial");
        SparsePolynomial q(vars_), r = *this;
        const auto& [ld, lc] = *d.terms_.begin();
        while (!r.is_zero()) {
            const auto [lr, rc] = *r.terms_.begin();
            Monomial m(lr.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (lr[i] < ld[i])
                    throw domain_error("polynomial division is not exact");
                m[i] = lr[i] - ld[i];
            }
            SparsePolynomial t(vars_);
            t.add_term(m, rc / lc);
            q += t;
            r -= t * d;
        }
        return q;
    }

    /// Canonical text, e.g. "2*l1^2*l2 - l3 + 1/2".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool neg = c < 0;
            const Coeff mag = neg ? Coeff(-c) : c;
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += vars_[i];
                if (m[i] > 1)
                    mono += "^" + std::to_string(m[i]);
            }
            if (mono.empty())
                out += coeff_string(mag);
            else if (mag == 1)
                out += mono;
            else
                out += coeff_string(mag) + "*" + mono;
        }
        return out;
    }

private:
    static std::string coeff_string(const Coeff& c) { return rrlie::to_string(c); }

    void adopt_vars(const SparsePolynomial& o)
    {
        if (vars_ == o.vars_)
            return;
        if (nvars() == 0 && terms_.empty()) {
            vars_ = o.vars_;
            return;
        }
        if (o.nvars() == 0 && o.terms_.empty())
            return;
        throw domain_error("polynomials over different variables");
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

using Polynomial = SparsePolynomial<Rational>;

} // namespace rrlie
