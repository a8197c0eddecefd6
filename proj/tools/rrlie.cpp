// rrlie: cascade reports, verification and quadrature checks for nilradicals of minimal
// parabolics.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 bad usage or input.

#include "rrlie/document.hpp"
#include "rrlie/realform.hpp"
#include "rrlie/sqint.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

rrlie::RealForm form_from_type(const std::string& family, int rank)
{
    const auto t = rrlie::CartanType::parse(family + std::to_string(rank));
    const auto sys = rrlie::generate(t);
    if (sys.reduced())
        return rrlie::split_form(t);
    // BC_n has no split real form; use su(n+1, n), whose short roots e_i have even multiplicity.
    const std::map<std::string, int> mult = {{"e_i+-e_j", 2}, {"e_i", 2}, {"2e_i", 1}};
    rrlie::RealFormDescriptor desc;
    desc.name = "su(" + std::to_string(rank + 1) + "," + std::to_string(rank) + ")";
    desc.restricted_type = t;
    for (const auto& k : rrlie::root_kinds(sys))
        desc.mult_table[k] = mult.at(k);
    return rrlie::detail::assemble(desc);
}

void print(const rrlie::Json& j, const std::string& format)
{
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << rrlie::to_markdown(j);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

struct NumericOptions {
    int d = 1;
    double lambda = 1.0;
    std::string test = "all";
    std::string format = "md";
};

int run_numeric(const NumericOptions& opt)
{
    using namespace rrlie::sqint;
    if (opt.d != 1 && opt.d != 2)
        throw rrlie::input_error("--d must be 1 or 2");
    if (opt.lambda == 0.0)
        throw rrlie::input_error("lambda must be nonzero: Pf(lambda) = lambda^d vanishes at 0");
    const bool all = opt.test == "all";
    if (!all && opt.test != "orthogonality" && opt.test != "character" && opt.test != "inversion")
        throw rrlie::input_error("unknown numeric test '" + opt.test + "'");

    rrlie::Json j;
    j["d"] = opt.d;
    j["lambda"] = opt.lambda;
    j["conventions"] = {{"haar", "Lebesgue measure in exponential coordinates"},
                        {"fourier", "fhat(xi) = int f(x) exp(-i <xi,x>) dx"},
                        {"model", "pi_l(p,q,z) phi(t) = exp(i l (z + q.t + p.q/2)) phi(t+p)"}};
    bool ok = true;
    auto timed = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
        if (all || opt.test == "orthogonality") {
            OrthogonalityResult r;
            const Grid grid{};
            const double secs = timed([&] { r = orthogonality_suite(opt.d, opt.lambda, grid); });
            const double err = std::abs(r.kappa - r.expected) / r.expected;
            const bool pass = r.spread < 1e-5 && err < 1e-4;
            ok = ok && pass;
            rrlie::Json samples = rrlie::Json::array();
            for (const auto& s : r.samples)
                samples.push_back({{"u", s.u}, {"v", s.v}, {"lambda", s.lambda}, {"ratio", s.ratio}});
            j["orthogonality"] = {{"kappa_measured", r.kappa},
                                  {"kappa_expected", r.expected},
                                  {"relative_error", err},
                                  {"spread", r.spread},
                                  {"grid", {{"extent", grid.extent}, {"points", grid.refined().points}}},
                                  {"samples", samples},
                                  {"seconds", secs},
                                  {"status", pass ? "pass" : "fail"}};
        }
        if (all || opt.test == "character") {
            const HeisenbergModel m{opt.d, opt.lambda, Grid{}, 1e-6};
            CharacterValue v;
            const double secs = timed([&] { v = character_value(m, TestFunction::gaussian(opt.d)); });
            j["character"] = {{"orbit_integral", v.orbit.real()},
                              {"operator_trace", v.trace.real()},
                              {"relative_difference", v.relative_difference},
                              {"hermite_states_per_axis", trace_states(opt.d)},
                              {"seconds", secs},
                              {"status", "pass"}};
        }
        if (all || opt.test == "inversion") {
            const double tol = opt.d == 1 ? 1e-6 : 1e-5;
            InversionResult r;
            const double secs = timed([&] { r = inversion_check(opt.d, TestFunction::gaussian(opt.d)); });
            const bool pass = r.error < tol;
            ok = ok && pass;
            j["inversion"] = {{"reconstructed", r.value},  {"expected", r.expected}, {"relative_error", r.error},
                              {"lambda_max", r.lambda_max}, {"tail", r.tail},         {"seconds", secs},
                              {"status", pass ? "pass" : "fail"}};
        }
    } catch (const rrlie::refinement_error& e) {
        j["error"] = e.what();
        ok = false;
    }
    j["status"] = ok ? "pass" : "fail";
    if (opt.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# numeric checks, d = " << opt.d << ", lambda = " << opt.lambda << "\n\n";
        for (const char* key : {"orthogonality", "character", "inversion"}) {
            if (!j.contains(key))
                continue;
            std::cout << "## " << key << "\n\n| quantity | value |\n|---|---|\n";
            for (const auto& [k, v] : j[key].items())
                if (k != "samples")
                    std::cout << "| " << k << " | " << (v.is_string() ? v.get<std::string>() : v.dump()) << " |\n";
            std::cout << "\n";
        }
        if (j.contains("error"))
            std::cout << "error: " << j["error"].get<std::string>() << "\n";
        std::cout << "status: " << j["status"].get<std::string>() << "\n";
    }
    return ok ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cascade, Pfaffian and Plancherel-density checks for nilradicals of minimal parabolics"};
    app.require_subcommand(1);

    std::string form, type, format = "md", checks = "all";
    int rank = 0;
    unsigned seed = 1;

    auto* cascade = app.add_subcommand("cascade", "cascade roots, layers and dimensions");
    auto* form_opt = cascade->add_option("--form", form, "builtin split name, data-file name or .rrform path");
    auto* type_opt = cascade->add_option("--type", type, "root system family (A, B, C, D, BC, E, F, G)");
    auto* rank_opt = cascade->add_option("--rank", rank, "rank of the root system");
    form_opt->excludes(type_opt)->excludes(rank_opt);
    type_opt->needs(rank_opt);
    rank_opt->needs(type_opt);
    cascade->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));

    auto* verify = app.add_subcommand("verify", "run verification checks on a form");
    verify->add_option("--form", form)->required();
    verify->add_option("--checks", checks, "comma-separated check names or 'all'");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));

    auto* report = app.add_subcommand("report", "full report: cascade, polynomials, all checks");
    report->add_option("--form", form)->required();
    report->add_option("--seed", seed);
    report->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));

    NumericOptions num;
    auto* numeric = app.add_subcommand("numeric", "quadrature checks on the Heisenberg group of dimension 2d+1");
    numeric->add_option("--d", num.d)->required();
    numeric->add_option("--lambda", num.lambda, "central character parameter (nonzero)");
    numeric->add_option("--test", num.test)->check(CLI::IsMember({"orthogonality", "character", "inversion", "all"}));
    numeric->add_option("--format", num.format)->check(CLI::IsMember({"json", "md"}));

    auto* list = app.add_subcommand("list", "list builtin forms and data files on the search path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*list) {
            for (const auto& n : rrlie::builtin_split_names())
                std::cout << n << "\n";
            for (const auto& [n, path] : rrlie::list_datafiles())
                std::cout << n << "\t" << path.string() << "\n";
            return exit_pass;
        }
        if (*cascade) {
            if (form.empty() && type.empty())
                throw rrlie::input_error("give --form or --type with --rank");
            const auto f = form.empty() ? form_from_type(type, rank) : rrlie::load_form(form);
            print(rrlie::cascade_json(rrlie::build_report(f, std::nullopt)), format);
            return exit_pass;
        }
        if (*verify || *report) {
            const auto f = rrlie::load_form(form);
            std::vector<std::string> selected;
            if (*verify && checks != "all")
                selected = split_list(checks);
            const auto doc = rrlie::build_report(f, selected, seed);
            print(rrlie::to_json(doc), format);
            if (!doc.passed()) {
                for (const auto& e : doc.verification)
                    if (e.status == "fail")
                        std::cerr << "FAILED " << e.name << ": " << rrlie::check_description(e.name) << "\n";
                return exit_fail;
            }
            return exit_pass;
        }
        if (*numeric)
            return run_numeric(num);
    } catch (const rrlie::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const rrlie::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const rrlie::structural_error& e) {
        std::cerr << "structural failure: " << e.what() << "\n";
        return exit_fail;
    }
    return exit_usage;
}
