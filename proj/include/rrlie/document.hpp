#pragma once

// Verification driver and the report document emitted by the command-line tool.
//
// Checks (in run order):
//   cascade          layer partition of the positive roots, strong orthogonality of the betas
//   pairing          alpha + sigma_r(alpha) = beta_r inside each layer
//   neg_extension    layer membership scanned over negative roots too
//   longest_element  s_{beta_1}...s_{beta_m} = w0 on the positive roots
//   dual_weight      nu + nu* = sum (nu, beta_i) beta_i with integer coefficients
//   modular          modular exponents integral, 2 rho = sum exponents * beta_r
//   setup            bracket conditions of the layered nilradical, layer Pfaffians nonzero
//   pfaffian         Pf^2 = det, homogeneity, scaling, basis covariance
//   dp_symbol        degree and weight of Pf * Det, semi-invariance
// The last three need structure constants and are skipped for non-split forms.

#include "rrlie/cascade.hpp"
#include "rrlie/errors.hpp"
#include "rrlie/nilalg.hpp"
#include "rrlie/pfaffian.hpp"
#include "rrlie/realform.hpp"
#include "rrlie/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rrlie {

inline constexpr int report_schema_version = 1;

inline const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = {"cascade",  "pairing", "neg_extension", "longest_element",
                                                   "dual_weight", "modular", "setup",       "pfaffian",
                                                   "dp_symbol"};
    return names;
}

inline bool symbolic_check(const std::string& name)
{
    return name == "setup" || name == "pfaffian" || name == "dp_symbol";
}

inline std::string check_description(const std::string& name)
{
    if (name == "cascade")
        return "positive roots split into layers; cascade roots strongly orthogonal";
    if (name == "pairing")
        return "alpha + sigma_r(alpha) = beta_r on each layer";
    if (name == "neg_extension")
        return "layer membership agrees with the sign scan over all roots";
    if (name == "longest_element")
        return "product of cascade reflections is the longest Weyl element";
    if (name == "dual_weight")
        return "nu + nu* = sum (nu, beta_i) beta_i with integer coefficients";
    if (name == "modular")
        return "modular exponents integral and summing to 2 rho";
    if (name == "setup")
        return "layer bracket relations and nonvanishing layer Pfaffians";
    if (name == "pfaffian")
        return "Pf^2 = det, layer homogeneity, Pf(c l) = c^(sum d_r) Pf(l)";
    if (name == "dp_symbol")
        return "deg(Pf Det) = (dim n + dim s)/2 and its weight equals the modular exponents";
    return name;
}

struct VerificationEntry {
    std::string name;
    std::string status; ///< "pass", "fail" or "skipped(tier1)"
    std::vector<std::string> failures;
};

namespace detail {

inline Rational small_rational(std::mt19937_64& rng, bool nonzero)
{
    std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
    for (;;) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        if (!nonzero || q != 0)
            return q;
    }
}

inline CheckReport check_dual_weights(const CascadeDecomposition& dec, int samples, std::mt19937_64& rng)
{
    CheckReport rep("dual_weight");
    const auto& sys = dec.system;
    const auto gens = integral_dominant_generators(sys);
    std::uniform_int_distribution<int> coef(0, 4);
    for (int k = 0; k < samples; ++k) {
        RationalVector nu(sys.ambient_dim(), 0);
        if (k < static_cast<int>(gens.size()))
            nu = gens[static_cast<std::size_t>(k)];
        else
            for (const auto& g : gens)
                nu = nu + Rational(coef(rng)) * g;
        try {
            const auto res = nu_plus_nu_star(sys, dec.betas, nu);
            if (!res.integral)
                rep.fail("non-integral coefficients for nu = " + format_vector(nu));
        } catch (const structural_error& e) {
            rep.fail(e.what());
        }
    }
    return rep;
}

inline CheckReport check_modular_values(const CascadeDecomposition& dec, const NilradicalAlgebra* alg,
                                        std::mt19937_64& rng)
{
    CheckReport rep = check_modular(dec);
    for (int k = 0; k < 5; ++k) {
        RationalVector bv;
        for (std::size_t r = 0; r < dec.m(); ++r)
            bv.push_back(small_rational(rng, false));
        try {
            if (alg)
                modular_function(*alg, bv);
            else
                modular_function(dec, bv);
        } catch (const structural_error& e) {
            rep.fail(e.what());
        }
    }
    return rep;
}

inline int permutation_sign(std::vector<std::size_t> p)
{
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    return sign;
}

inline CheckReport check_pfaffians(const NilradicalAlgebra& alg, std::mt19937_64& rng)
{
    CheckReport rep("pfaffian");
    const auto& dec = alg.decomp;
    const auto res = layer_pfaffians(alg);
    for (std::size_t r = 0; r < dec.m(); ++r) {
        const auto layer = std::to_string(r + 1);
        const auto mat = b_matrix(alg, r);
        const auto& pf = res.per_layer[r];
        if (!(pf * pf == determinant(mat)))
            rep.fail("Pf^2 != det on layer " + layer);
        if (pf.is_zero())
            rep.fail("Pfaffian of layer " + layer + " vanishes");
        const long dr = dec.d[r].get_num().get_si();
        if (!pf.homogeneous() || pf.degree() != dr)
            rep.fail("layer " + layer + " Pfaffian is not homogeneous of degree " + std::to_string(dr));
        for (std::size_t s = 0; s < dec.m(); ++s)
            if (s != r && pf.degree_in(s) > 0)
                rep.fail("layer " + layer + " Pfaffian depends on l" + std::to_string(s + 1));
        // reorder the basis of v_r: Pf changes by the sign of the permutation
        std::vector<std::size_t> perm(dec.layers[r].size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Root> basis;
        for (auto i : perm)
            basis.push_back(dec.layers[r][i]);
        auto permuted = pfaffian(b_matrix(alg, r, basis));
        if (permuted.nvars() == 0)
            permuted = Polynomial::constant(pf.vars(), 1);
        if (!(permuted == pf * Rational(permutation_sign(perm))))
            rep.fail("basis permutation changes the layer " + layer + " Pfaffian by more than a sign");
    }
    const long total = res.total.degree();
    for (int k = 0; k < 20; ++k) {
        const Rational c = small_rational(rng, true);
        RationalVector l, cl;
        for (std::size_t r = 0; r < dec.m(); ++r) {
            l.push_back(small_rational(rng, false));
            cl.push_back(c * l.back());
        }
        if (res.total.evaluate(cl) != pow(c, static_cast<unsigned long>(total)) * res.total.evaluate(l))
            rep.fail("Pf(c l) != c^" + std::to_string(total) + " Pf(l) at c = " + to_string(c));
    }
    return rep;
}

inline CheckReport check_dp_symbol(const NilradicalAlgebra& alg, unsigned seed)
{
    const auto dp = dp_symbol(alg);
    CheckReport rep = dp.report;
    rep.merge(semiinvariance_check(alg, 5, seed));
    return rep;
}

} // namespace detail

/// Runs the selected checks (all when `selected` is empty) on a form.
inline std::vector<VerificationEntry> run_checks(const RealForm& form, std::vector<std::string> selected = {},
                                                 unsigned seed = 1)
{
    if (selected.empty())
        selected = check_names();
    for (const auto& s : selected)
        if (std::find(check_names().begin(), check_names().end(), s) == check_names().end())
            throw input_error("unknown check '" + s + "'");

    std::vector<VerificationEntry> out;
    const bool split = is_split(form.system);
    std::optional<CascadeDecomposition> dec;
    std::optional<NilradicalAlgebra> alg;
    std::string setup_error;
    try {
        dec = decompose(form.system);
        if (split)
            alg = build_nilradical(*dec);
    } catch (const structural_error& e) {
        setup_error = e.what();
    }
    std::mt19937_64 rng(seed);

    for (const auto& name : check_names()) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end())
            continue;
        VerificationEntry entry{name, "pass", {}};
        if (symbolic_check(name) && !split) {
            entry.status = "skipped(tier1)";
            out.push_back(entry);
            continue;
        }
        CheckReport rep(name);
        if (!dec || (symbolic_check(name) && !alg)) {
            rep.fail(setup_error);
        } else {
            try {
                if (name == "cascade") {
                    rep.merge(check_strong_orthogonality(*dec));
                    rep.merge(check_partition(*dec));
                } else if (name == "pairing") {
                    rep.merge(check_pairing_lemma(*dec));
                } else if (name == "neg_extension") {
                    rep.merge(check_neg_extension(*dec));
                } else if (name == "longest_element") {
                    rep.merge(check_longest_element(*dec));
                } else if (name == "dual_weight") {
                    rep.merge(detail::check_dual_weights(*dec, 100, rng));
                } else if (name == "modular") {
                    rep.merge(detail::check_modular_values(*dec, alg ? &*alg : nullptr, rng));
                } else if (name == "setup") {
                    rep.merge(verify_setup(*alg));
                } else if (name == "pfaffian") {
                    rep.merge(detail::check_pfaffians(*alg, rng));
                } else if (name == "dp_symbol") {
                    rep.merge(detail::check_dp_symbol(*alg, seed));
                }
            } catch (const structural_error& e) {
                rep.fail(e.what());
            } catch (const domain_error& e) {
                rep.fail(e.what());
            }
        }
        if (!rep.passed) {
            entry.status = "fail";
            entry.failures = rep.failures;
        }
        out.push_back(entry);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report document

struct ReportDocument {
    std::string form;
    std::string restricted_type;
    bool split = false;
    std::size_t m = 0;
    std::vector<std::string> beta_names;
    std::vector<std::vector<std::string>> betas; ///< ambient coordinates
    std::vector<std::vector<std::string>> layers;
    std::vector<long> d;
    std::vector<int> dim_z;
    std::vector<int> dim_l;
    std::string c;
    std::vector<long> modular_exponents;
    std::size_t dim_a_diamond = 0;
    long dim_n = 0;
    long dim_s = 0;
    std::optional<std::string> pfaffian;
    std::optional<std::string> det;
    std::optional<std::string> dp_symbol;
    long deg_pf = 0;
    long deg_det = 0;
    long deg_dp = 0;
    std::vector<VerificationEntry> verification;

    bool passed() const
    {
        return std::none_of(verification.begin(), verification.end(),
                            [](const VerificationEntry& e) { return e.status == "fail"; });
    }
};

/// Cascade data, polynomials (split forms) and, unless `checks` is nullopt, verification results.
inline ReportDocument build_report(const RealForm& form, const std::optional<std::vector<std::string>>& checks = {},
                                   unsigned seed = 1)
{
    const auto t1 = tier1_report(form);
    const auto& dec = t1.decomposition;
    ReportDocument doc;
    doc.form = t1.form;
    doc.restricted_type = t1.restricted_type;
    doc.split = is_split(form.system);
    doc.m = dec.m();
    for (const auto& b : dec.betas) {
        doc.beta_names.push_back(b.str());
        std::vector<std::string> coords;
        for (const auto& x : b.coords())
            coords.push_back(to_string(x));
        doc.betas.push_back(std::move(coords));
    }
    for (const auto& layer : dec.layers) {
        std::vector<std::string> names;
        for (const auto& a : layer)
            names.push_back(a.str());
        doc.layers.push_back(std::move(names));
    }
    for (const auto& x : dec.d)
        doc.d.push_back(x.get_num().get_si());
    doc.dim_z = dec.dim_z;
    doc.dim_l = dec.dim_l;
    doc.c = to_string(dec.c);
    doc.modular_exponents = t1.modular_exponents;
    doc.dim_a_diamond = t1.dim_a_diamond;
    doc.dim_n = t1.dim_n;
    doc.dim_s = t1.dim_s;
    doc.deg_pf = t1.deg_pf;
    doc.deg_det = t1.deg_det;
    doc.deg_dp = t1.deg_dp;
    if (doc.split) {
        const auto alg = build_nilradical(dec);
        const auto dp = rrlie::dp_symbol(alg);
        doc.pfaffian = dp.pf.to_string();
        doc.det = dp.det.to_string();
        doc.dp_symbol = dp.symbol.to_string();
    }
    if (checks)
        doc.verification = run_checks(form, *checks, seed);
    return doc;
}

using Json = nlohmann::ordered_json;

namespace detail {

inline Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

} // namespace detail

inline Json to_json(const ReportDocument& doc)
{
    Json j;
    j["schema_version"] = report_schema_version;
    j["form"] = doc.form;
    j["restricted_type"] = doc.restricted_type;
    j["split"] = doc.split;
    j["m"] = doc.m;
    j["beta_names"] = doc.beta_names;
    j["betas"] = doc.betas;
    j["layers"] = doc.layers;
    j["d"] = doc.d;
    j["dim_z"] = doc.dim_z;
    j["dim_l"] = doc.dim_l;
    j["c"] = doc.c;
    j["modular_exponents"] = doc.modular_exponents;
    j["dim_a_diamond"] = doc.dim_a_diamond;
    j["dim_n"] = doc.dim_n;
    j["dim_s"] = doc.dim_s;
    j["pfaffian"] = detail::optional_string(doc.pfaffian);
    j["det"] = detail::optional_string(doc.det);
    j["dp_symbol"] = detail::optional_string(doc.dp_symbol);
    j["degrees"] = Json{{"pfaffian", doc.deg_pf}, {"det", doc.deg_det}, {"dp_symbol", doc.deg_dp}};
    Json ver = Json::object(), fails = Json::object();
    for (const auto& e : doc.verification) {
        ver[e.name] = e.status;
        if (!e.failures.empty())
            fails[e.name] = e.failures;
    }
    j["verification"] = ver;
    j["failures"] = fails;
    return j;
}

inline ReportDocument report_from_json(const Json& j)
{
    if (j.at("schema_version").get<int>() != report_schema_version)
        throw input_error("unsupported report schema version");
    ReportDocument doc;
    doc.form = j.at("form").get<std::string>();
    doc.restricted_type = j.at("restricted_type").get<std::string>();
    doc.split = j.at("split").get<bool>();
    doc.m = j.at("m").get<std::size_t>();
    doc.beta_names = j.at("beta_names").get<std::vector<std::string>>();
    doc.betas = j.at("betas").get<std::vector<std::vector<std::string>>>();
    doc.layers = j.at("layers").get<std::vector<std::vector<std::string>>>();
    doc.d = j.at("d").get<std::vector<long>>();
    doc.dim_z = j.at("dim_z").get<std::vector<int>>();
    doc.dim_l = j.at("dim_l").get<std::vector<int>>();
    doc.c = j.at("c").get<std::string>();
    doc.modular_exponents = j.at("modular_exponents").get<std::vector<long>>();
    doc.dim_a_diamond = j.at("dim_a_diamond").get<std::size_t>();
    doc.dim_n = j.at("dim_n").get<long>();
    doc.dim_s = j.at("dim_s").get<long>();
    auto opt = [&](const char* key) -> std::optional<std::string> {
        if (j.at(key).is_null())
            return std::nullopt;
        return j.at(key).get<std::string>();
    };
    doc.pfaffian = opt("pfaffian");
    doc.det = opt("det");
    doc.dp_symbol = opt("dp_symbol");
    doc.deg_pf = j.at("degrees").at("pfaffian").get<long>();
    doc.deg_det = j.at("degrees").at("det").get<long>();
    doc.deg_dp = j.at("degrees").at("dp_symbol").get<long>();
    const auto& fails = j.at("failures");
    for (const auto& [name, status] : j.at("verification").items()) {
        VerificationEntry e{name, status.get<std::string>(), {}};
        if (fails.contains(name))
            e.failures = fails.at(name).get<std::vector<std::string>>();
        doc.verification.push_back(std::move(e));
    }
    return doc;
}

/// Cascade-only subset printed by `rrlie cascade`.
inline Json cascade_json(const ReportDocument& doc)
{
    Json j;
    j["schema_version"] = report_schema_version;
    j["form"] = doc.form;
    j["restricted_type"] = doc.restricted_type;
    j["m"] = doc.m;
    j["beta_names"] = doc.beta_names;
    j["betas"] = doc.betas;
    j["layers"] = doc.layers;
    j["d"] = doc.d;
    j["dim_z"] = doc.dim_z;
    j["dim_l"] = doc.dim_l;
    j["c"] = doc.c;
    return j;
}

namespace detail {

inline std::string md_value(const Json& v)
{
    if (v.is_null())
        return "n/a";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + md_value(v[i]);
        return s + "]";
    }
    return v.dump();
}

} // namespace detail

/// Markdown rendering of a report (or cascade subset) JSON object; carries the same fields.
inline std::string to_markdown(const Json& j)
{
    std::ostringstream out;
    out << "# " << j.at("form").get<std::string>() << "\n\n";
    out << "| field | value |\n|---|---|\n";
    for (const auto& [key, value] : j.items()) {
        if (key == "form" || key == "layers" || key == "verification" || key == "failures" || key == "betas")
            continue;
        if (key == "degrees") {
            for (const auto& [k, v] : value.items())
                out << "| degree " << k << " | " << detail::md_value(v) << " |\n";
            continue;
        }
        out << "| " << key << " | " << detail::md_value(value) << " |\n";
    }
    if (j.contains("betas")) {
        out << "\n## Cascade\n\n| r | beta_r | coordinates | layer roots |\n|---|---|---|---|\n";
        const auto& names = j.at("beta_names");
        for (std::size_t r = 0; r < names.size(); ++r)
            out << "| " << r + 1 << " | " << names[r].get<std::string>() << " | " << detail::md_value(j["betas"][r])
                << " | " << detail::md_value(j["layers"][r]) << " |\n";
    }
    if (j.contains("verification") && !j["verification"].empty()) {
        out << "\n## Verification\n\n| check | status |\n|---|---|\n";
        for (const auto& [k, v] : j["verification"].items())
            out << "| " << k << " | " << v.get<std::string>() << " |\n";
        for (const auto& [k, v] : j["failures"].items())
            for (const auto& f : v)
                out << "\n- " << k << ": " << f.get<std::string>();
        if (!j["failures"].empty())
            out << "\n";
    }
    return out.str();
}

} // namespace rrlie
