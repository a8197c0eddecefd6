#pragma once

// Quadrature checks of the square-integrability identities on the Heisenberg group
// H_d = R^d x R^d x R (coordinates p, q, z) in the Schrodinger model
//
//     pi_l(p, q, z) phi(t) = exp(i l (z + q.t + p.q/2)) phi(t + p),   l != 0.
//
// Haar measure is Lebesgue measure dp dq dz; the Fourier transform is
// fhat(xi) = int f(x) exp(-i <xi, x>) dx. With these conventions
//
//     |l|^d ||f_{u,v}||^2 = (2 pi)^d ||u||^2 ||v||^2,
//     trace pi_l(f) = (2 pi)^{-d} |l|^{-d} int fhat(mu, -l) dmu,
//     f(0) = (2 pi)^{-(d+1)} int trace pi_l(f) |l|^d dl.
//
// The orbit integral is written c^{-1} |l|^{-d} int fhat(mu - l e_z*) dnu(mu) with
// dnu = c (2 pi)^{-d} dmu and c = 2^d d!, so the constant c cancels in every identity.
// Test functions and Hermite states are tensor products over the d coordinate pairs, which
// lets every 2d-dimensional integral run axis by axis.

#include "rrlie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace rrlie::sqint {

using Complex = std::complex<double>;

struct Grid {
    double extent = 10.0; ///< integrate over [-extent, extent]
    int points = 81;

    double spacing() const { return 2.0 * extent / (points - 1); }
    double at(int k) const { return -extent + k * spacing(); }
    /// Same interval, half the spacing.
    Grid refined() const { return Grid{extent, 2 * points - 1}; }
};

struct HeisenbergModel {
    int d = 1;
    double lambda = 1.0;
    Grid grid{};
    double tolerance = 1e-6; ///< allowed drift between a grid and its refinement

    void validate() const
    {
        if (d != 1 && d != 2)
            throw domain_error("Heisenberg dimension parameter d must be 1 or 2");
        if (lambda == 0.0 || !std::isfinite(lambda))
            throw domain_error("lambda must be nonzero: Pf(lambda) = lambda^d vanishes at 0");
        if (grid.points < 3 || grid.extent <= 0)
            throw domain_error("quadrature grid needs a positive extent and at least 3 points");
    }
};

/// Orthonormal Hermite functions psi_0(x) .. psi_nmax(x).
inline std::vector<double> hermite_functions(int nmax, double x)
{
    std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (nmax >= 1)
        psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int n = 1; n < nmax; ++n)
        psi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * psi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[n - 1];
    return psi;
}

inline double hermite_function(int n, double x) { return hermite_functions(n, x)[static_cast<std::size_t>(n)]; }

inline double trapezoid_weight(const Grid& g, int k)
{
    return (k == 0 || k == g.points - 1) ? 0.5 * g.spacing() : g.spacing();
}

// ---------------------------------------------------------------------------
// Matrix coefficients

/// int int |<u, pi_l(p,q) v>|^2 dp dq for one coordinate pair, u, v Hermite indices.
inline double coefficient_norm_sq_1d(int u, int v, double lambda, const Grid& g)
{
    // q runs over [-extent/|l|, extent/|l|]: the coefficient decays in q on the scale 1/|l|.
    Grid gq{g.extent / std::abs(lambda), g.points};
    std::vector<double> pu(static_cast<std::size_t>(g.points));
    for (int k = 0; k < g.points; ++k)
        pu[k] = hermite_function(u, g.at(k)) * trapezoid_weight(g, k);
    std::vector<Complex> phase(static_cast<std::size_t>(gq.points) * g.points);
    for (int j = 0; j < gq.points; ++j)
        for (int k = 0; k < g.points; ++k)
            phase[static_cast<std::size_t>(j) * g.points + k] = std::polar(1.0, lambda * gq.at(j) * g.at(k));
    double total = 0;
    std::vector<double> h(static_cast<std::size_t>(g.points));
    for (int i = 0; i < g.points; ++i) {
        const double p = g.at(i);
        for (int k = 0; k < g.points; ++k)
            h[k] = pu[k] * hermite_function(v, g.at(k) + p);
        double row = 0;
        for (int j = 0; j < gq.points; ++j) {
            Complex s = 0;
            const Complex* ph = &phase[static_cast<std::size_t>(j) * g.points];
            for (int k = 0; k < g.points; ++k)
                s += h[k] * ph[k];
            // the factor exp(i l (z + p.q/2)) has modulus one
            row += std::norm(s) * trapezoid_weight(gq, j);
        }
        total += row * trapezoid_weight(g, i);
    }
    return total;
}

/// |Pf(l)| ||f_{u,v}||^2_{L^2(N/Z)} / (||u||^2 ||v||^2) with Pf(l) = l^d; u, v give one
/// Hermite index per coordinate pair. Throws refinement_error if halving the grid spacing
/// moves the value by more than the model tolerance.
inline double coefficient_norm_ratio(const HeisenbergModel& model, const std::vector<int>& u,
                                     const std::vector<int>& v)
{
    model.validate();
    if (static_cast<int>(u.size()) != model.d || static_cast<int>(v.size()) != model.d)
        throw domain_error("need one Hermite index per coordinate pair");
    auto ratio = [&](const Grid& g) {
        double r = 1;
        for (int j = 0; j < model.d; ++j) {
            if (u[j] < 0 || v[j] < 0)
                throw domain_error("Hermite indices must be nonnegative");
            r *= std::abs(model.lambda) * coefficient_norm_sq_1d(u[j], v[j], model.lambda, g);
        }
        return r;
    };
    const double coarse = ratio(model.grid);
    const double fine = ratio(model.grid.refined());
    if (std::abs(fine - coarse) > model.tolerance * std::abs(fine))
        throw refinement_error("coefficient norm changed by " + std::to_string(std::abs(fine - coarse)) +
                               " under grid refinement");
    return fine;
}

// ---------------------------------------------------------------------------
// Test functions

/// x -> pi^{1/4} psi_n(x / sigma); n = 0 is the Gaussian exp(-x^2 / (2 sigma^2)).
struct Profile {
    double sigma = 1.0;
    int n = 0;

    double operator()(double x) const { return std::pow(std::numbers::pi, 0.25) * hermite_function(n, x / sigma); }
    double reach() const { return sigma * (10.0 + std::sqrt(2.0 * n + 1.0)); }
};

/// f(p, q, z) = amplitude * prod_j P_j(p_j) Q_j(q_j) * Z(z).
struct TestFunction {
    std::vector<Profile> p;
    std::vector<Profile> q;
    Profile z;
    double amplitude = 1.0;

    static TestFunction gaussian(int d, double sigma = 1.0)
    {
        return TestFunction{std::vector<Profile>(static_cast<std::size_t>(d), Profile{sigma, 0}),
                            std::vector<Profile>(static_cast<std::size_t>(d), Profile{sigma, 0}), Profile{sigma, 0},
                            1.0};
    }

    int d() const { return static_cast<int>(p.size()); }

    double at_identity() const
    {
        double v = amplitude * z(0.0);
        for (int j = 0; j < d(); ++j)
            v *= p[j](0.0) * q[j](0.0);
        return v;
    }

    TestFunction scaled(double s) const
    {
        TestFunction f = *this;
        f.amplitude *= s;
        return f;
    }
};

/// int P(x) exp(-i w x) dx by the trapezoid rule.
inline Complex fourier(const Profile& prof, double w, int points)
{
    const Grid g{prof.reach(), points};
    Complex s = 0;
    for (int k = 0; k < g.points; ++k) {
        const double x = g.at(k);
        s += trapezoid_weight(g, k) * prof(x) * std::polar(1.0, -w * x);
    }
    return s;
}

/// int Phat(mu) dmu with Phat computed numerically.
inline Complex fourier_integral(const Profile& prof, int points)
{
    // Phat lives on the scale (sqrt(2n+1) + 10) / sigma.
    const Grid gm{prof.reach() / (prof.sigma * prof.sigma), points};
    Complex s = 0;
    for (int k = 0; k < gm.points; ++k)
        s += trapezoid_weight(gm, k) * fourier(prof, gm.at(k), points);
    return s;
}

// ---------------------------------------------------------------------------
// Characters

struct CharacterValue {
    Complex orbit;
    Complex trace;
    double relative_difference = 0;
};

namespace detail {

inline Complex orbit_integral(const HeisenbergModel& m, const TestFunction& f, int points)
{
    const double l = m.lambda;
    const int d = f.d();
    const double c = std::pow(2.0, d) * std::tgamma(d + 1.0);
    // dnu = c (2 pi)^{-d} dmu
    Complex integral = f.amplitude * c * std::pow(2 * std::numbers::pi, -d) * fourier(f.z, -l, points);
    for (int j = 0; j < d; ++j)
        integral *= fourier_integral(f.p[j], points) * fourier_integral(f.q[j], points);
    return integral / (c * std::pow(std::abs(l), d));
}

// Trace over the first `states` Hermite functions of int int P(p) Q(q) pi_l(p,q) dp dq acting
// on L^2(R). With w = t + p/2 the diagonal entry is
//   int dp P(p) int dw psi_k(w - p/2) psi_k(w + p/2) Qhat(-l w).
inline std::vector<Complex> pair_trace_partial_sums(const Profile& P, const Profile& Q, double l, int states,
                                                    const Grid& g)
{
    const Grid gw{g.extent, g.points};
    std::vector<Complex> qhat(static_cast<std::size_t>(gw.points));
    for (int k = 0; k < gw.points; ++k)
        qhat[k] = fourier(Q, -l * gw.at(k), g.points);
    std::vector<Complex> diag(static_cast<std::size_t>(states), 0.0);
    for (int i = 0; i < g.points; ++i) {
        const double p = g.at(i);
        const double wp = P(p) * trapezoid_weight(g, i);
        if (std::abs(wp) < 1e-300)
            continue;
        for (int k = 0; k < gw.points; ++k) {
            const double w = gw.at(k);
            const Complex weight = wp * qhat[k] * trapezoid_weight(gw, k);
            const auto a = hermite_functions(states - 1, w - p / 2);
            const auto b = hermite_functions(states - 1, w + p / 2);
            for (int n = 0; n < states; ++n)
                diag[n] += weight * (a[n] * b[n]);
        }
    }
    std::vector<Complex> partial(static_cast<std::size_t>(states) + 1, 0.0);
    for (int n = 0; n < states; ++n)
        partial[n + 1] = partial[n] + diag[n];
    return partial;
}

} // namespace detail

/// Hermite states kept per coordinate pair by the trace oracle.
inline int trace_states(int d) { return d == 1 ? 64 : 32; }

/// Operator trace of pi_l(f), truncated to the tensor Hermite basis; throws refinement_error if
/// dropping the last quarter of the states changes it by more than the tolerance.
inline Complex operator_trace(const HeisenbergModel& m, const TestFunction& f)
{
    m.validate();
    const int states = trace_states(m.d);
    const Grid g{15.0, 601};
    Complex full = f.amplitude * fourier(f.z, -m.lambda, g.points);
    Complex shorter = full;
    for (int j = 0; j < m.d; ++j) {
        const auto partial = detail::pair_trace_partial_sums(f.p[j], f.q[j], m.lambda, states, g);
        full *= partial.back();
        shorter *= partial[static_cast<std::size_t>(states - states / 4)];
    }
    if (std::abs(full - shorter) > m.tolerance * std::max(std::abs(full), 1e-300) && std::abs(full) > 1e-300)
        throw refinement_error("Hermite truncation of the trace has not converged");
    return full;
}

/// Character value by the orbit integral, cross-checked against the operator trace.
inline CharacterValue character_value(const HeisenbergModel& m, const TestFunction& f)
{
    m.validate();
    if (f.d() != m.d || static_cast<int>(f.q.size()) != m.d)
        throw domain_error("test function dimension does not match the model");
    CharacterValue out;
    const Complex coarse = detail::orbit_integral(m, f, m.grid.points);
    out.orbit = detail::orbit_integral(m, f, m.grid.refined().points);
    if (std::abs(out.orbit - coarse) > m.tolerance * std::abs(out.orbit))
        throw refinement_error("orbit integral changed under grid refinement");
    out.trace = operator_trace(m, f);
    const double scale = std::max(std::abs(out.trace), std::abs(out.orbit));
    out.relative_difference = scale == 0 ? 0 : std::abs(out.orbit - out.trace) / scale;
    if (out.relative_difference > m.tolerance)
        throw refinement_error("orbit integral and operator trace differ by " +
                               std::to_string(out.relative_difference) + " (relative)");
    return out;
}

// ---------------------------------------------------------------------------
// Inversion

struct InversionResult {
    double value = 0;      ///< reconstructed f(1)
    double expected = 0;   ///< f(1)
    double error = 0;      ///< relative error, absolute when f(1) = 0
    double lambda_max = 0; ///< truncation of the l-integral
    double tail = 0;       ///< |Theta_l(f)| |l|^d at the truncation point
};

/// c int Theta_l(f) |Pf(l)| dl / (c (2 pi)^{d+1}) over |l| <= lambda_max, Theta from the orbit
/// integral. `lambda_points` is the number of l nodes. Throws refinement_error when the
/// integrand at +-lambda_max exceeds tolerance * max |integrand| (the extent is too short).
inline InversionResult inversion_check(int d, const TestFunction& f, double lambda_max = 12.0,
                                       int lambda_points = 241, int points = 161, double tolerance = 1e-6)
{
    if (d != 1 && d != 2)
        throw domain_error("Heisenberg dimension parameter d must be 1 or 2");
    if (f.d() != d)
        throw domain_error("test function dimension does not match d");
    const double c = std::pow(2.0, d) * std::tgamma(d + 1.0);
    InversionResult out;
    out.lambda_max = lambda_max;
    out.expected = f.at_identity();
    // the l = 0 node is excluded from the orbit formula; its integrand value is the limit
    // |l|^d Theta_l(f) -> (2 pi)^{-d} int fhat(mu, 0) dmu.
    const Grid gl{lambda_max, lambda_points};
    Complex sum = 0;
    double peak = 0;
    for (int k = 0; k < gl.points; ++k) {
        const double l = gl.at(k);
        Complex integrand;
        if (std::abs(l) < 1e-12 * lambda_max) {
            Complex v = f.amplitude * std::pow(2 * std::numbers::pi, -d) * fourier(f.z, 0.0, points);
            for (int j = 0; j < d; ++j)
                v *= fourier_integral(f.p[j], points) * fourier_integral(f.q[j], points);
            integrand = v;
        } else {
            HeisenbergModel m{d, l, Grid{10.0, points}, tolerance};
            integrand = detail::orbit_integral(m, f, points) * std::pow(std::abs(l), d);
        }
        peak = std::max(peak, std::abs(integrand));
        if (k == 0 || k == gl.points - 1)
            out.tail = std::max(out.tail, std::abs(integrand));
        sum += c * integrand * trapezoid_weight(gl, k);
    }
    if (peak > 0 && out.tail > tolerance * peak)
        throw refinement_error("lambda extent " + std::to_string(lambda_max) + " too short: tail " +
                               std::to_string(out.tail));
    out.value = (sum / (c * std::pow(2 * std::numbers::pi, d + 1))).real();
    out.error = out.expected == 0 ? std::abs(out.value) : std::abs(out.value - out.expected) / std::abs(out.expected);
    return out;
}

// ---------------------------------------------------------------------------
// Orthogonality suite

struct RatioSample {
    std::vector<int> u;
    std::vector<int> v;
    double lambda = 0;
    double ratio = 0;
};

struct OrthogonalityResult {
    std::vector<RatioSample> samples;
    double kappa = 0;    ///< mean ratio, the measured normalization constant
    double expected = 0; ///< (2 pi)^d
    double spread = 0;   ///< max |ratio - kappa| / kappa
};

/// Ratios over 12 (u, v, l) triples built from the base value l.
inline OrthogonalityResult orthogonality_suite(int d, double lambda, const Grid& grid = Grid{}, double tolerance = 1e-6)
{
    const std::vector<std::pair<int, int>> pairs = {{0, 0}, {0, 1}, {1, 0}, {2, 3}, {4, 4}, {0, 5}};
    const std::vector<double> lambdas = {lambda, -2.5 * lambda};
    OrthogonalityResult out;
    out.expected = std::pow(2 * std::numbers::pi, d);
    for (double l : lambdas)
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            RatioSample s;
            for (int j = 0; j < d; ++j) {
                // vary the second axis so d = 2 mixes different states per pair
                const auto& [a, b] = pairs[(k + static_cast<std::size_t>(j) * 2) % pairs.size()];
                s.u.push_back(a);
                s.v.push_back(b);
            }
            s.lambda = l;
            s.ratio = coefficient_norm_ratio(HeisenbergModel{d, l, grid, tolerance}, s.u, s.v);
            out.samples.push_back(std::move(s));
        }
    double sum = 0;
    for (const auto& s : out.samples)
        sum += s.ratio;
    out.kappa = sum / static_cast<double>(out.samples.size());
    for (const auto& s : out.samples)
        out.spread = std::max(out.spread, std::abs(s.ratio - out.kappa) / out.kappa);
    return out;
}

} // namespace rrlie::sqint
