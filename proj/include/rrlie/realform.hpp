#pragma once

// Catalogue of real forms: split forms are built in, non-split forms come from
// line-oriented `.rrform` data files carrying restricted-root multiplicities.
//
// File format (version 1):
//
//     rrform v1
//     # comment lines start with '#'
//     name su(2,1)
//     type BC1
//     e_i 2
//     2e_i 1
//
// Root kinds: `e_i-e_j` (A), `e_i+-e_j`, `e_i`, `2e_i` (B, C, D, BC), `long`, `short`
// (E, F, G). Every kind present in the restricted type must be given, and no other.

#include "rrlie/cascade.hpp"
#include "rrlie/errors.hpp"
#include "rrlie/rootsys.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef RRLIE_DEFAULT_FORM_DIR
#define RRLIE_DEFAULT_FORM_DIR "data/forms"
#endif

namespace rrlie {

enum class FormOrigin { builtin_split, datafile };

struct RealFormDescriptor {
    std::string name;
    CartanType restricted_type;
    std::map<std::string, int> mult_table;
    FormOrigin origin = FormOrigin::builtin_split;
    std::string source; ///< data file path, empty for builtins

    bool split() const
    {
        for (const auto& [kind, m] : mult_table)
            if (m != 1)
                return false;
        return true;
    }
};

struct RealForm {
    RestrictedRootSystem system;
    RealFormDescriptor descriptor;
};

/// Weyl-orbit class of a root inside its type (see the file-format comment above).
inline std::string root_kind(const CartanType& t, const Root& r)
{
    switch (t.family) {
    case Family::A: return "e_i-e_j";
    case Family::B:
    case Family::C:
    case Family::D:
    case Family::BC: {
        int nonzero = 0;
        Rational mag = 0;
        for (const auto& x : r.coords())
            if (x != 0) {
                ++nonzero;
                mag = abs(x);
            }
        if (nonzero == 2)
            return "e_i+-e_j";
        return mag == 2 ? "2e_i" : "e_i";
    }
    case Family::E: return "long";
    case Family::F: return dot(r.coords(), r.coords()) == 2 ? "long" : "short";
    case Family::G: return dot(r.coords(), r.coords()) == 6 ? "long" : "short";
    }
    return {};
}

inline std::set<std::string> root_kinds(const RestrictedRootSystem& sys)
{
    std::set<std::string> k;
    for (const auto& r : sys.roots())
        k.insert(root_kind(sys.type(), r));
    return k;
}

inline std::vector<std::string> builtin_split_names()
{
    std::vector<std::string> out;
    auto add = [&](const std::string& f, int lo, int hi) {
        for (int n = lo; n <= hi; ++n)
            out.push_back("split-" + f + std::to_string(n));
    };
    add("A", 1, 7);
    add("B", 2, 7);
    add("C", 2, 7);
    add("D", 4, 7);
    out.push_back("split-G2");
    out.push_back("split-F4");
    add("E", 6, 8);
    return out;
}

namespace detail {

inline CheckReport validate_weyl_invariance(const RestrictedRootSystem& sys)
{
    CheckReport rep("multiplicity_invariance");
    for (std::size_t i = 0; i < sys.roots().size(); ++i) {
        const Root& r = sys.roots()[i];
        for (const auto& s : sys.simples()) {
            const auto j = sys.index_of(reflect_vector(s.coords(), r.coords()));
            if (!j || sys.mult_at(*j) != sys.mult_at(i))
                rep.fail("mult not invariant under s_" + s.str() + " at " + r.str());
        }
        const auto neg = sys.index_of((-r).coords());
        if (!neg || sys.mult_at(*neg) != sys.mult_at(i))
            rep.fail("mult(" + r.str() + ") != mult(-" + r.str() + ")");
    }
    return rep;
}

inline RealForm assemble(RealFormDescriptor desc)
{
    const RestrictedRootSystem base = generate(desc.restricted_type);
    const auto kinds = root_kinds(base);
    for (const auto& k : kinds)
        if (!desc.mult_table.count(k))
            throw input_error(desc.name + ": multiplicity missing for root kind '" + k + "'");
    for (const auto& [k, m] : desc.mult_table) {
        if (!kinds.count(k))
            throw input_error(desc.name + ": root kind '" + k + "' does not occur in " +
                              desc.restricted_type.label());
        if (m <= 0)
            throw input_error(desc.name + ": multiplicity of '" + k + "' must be positive");
    }
    const CartanType t = desc.restricted_type;
    const auto table = desc.mult_table;
    RestrictedRootSystem sys =
        base.with_multiplicities([&](const Root& r) { return table.at(root_kind(t, r)); });
    const auto inv = validate_weyl_invariance(sys);
    if (!inv.passed)
        throw input_error(desc.name + ": " + inv.failures.front());
    return RealForm{std::move(sys), std::move(desc)};
}

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace detail

/// Parses the text of a `.rrform` file.
inline RealFormDescriptor parse_form(std::istream& in, const std::string& source = "<stream>")
{
    RealFormDescriptor desc;
    desc.origin = FormOrigin::datafile;
    desc.source = source;
    std::string line;
    int lineno = 0;
    bool header = false, have_type = false;
    auto fail = [&](const std::string& what) {
        throw input_error(source + ":" + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        if (!header) {
            if (line != "rrform v1")
                fail("expected header 'rrform v1'");
            header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string key, value, extra;
        ls >> key >> value;
        if (value.empty() || (ls >> extra))
            fail("expected two fields, got '" + line + "'");
        if (key == "name") {
            desc.name = value;
        } else if (key == "type") {
            desc.restricted_type = CartanType::parse(value);
            have_type = true;
        } else {
            int m = 0;
            try {
                std::size_t used = 0;
                m = std::stoi(value, &used);
                if (used != value.size())
                    fail("bad multiplicity '" + value + "'");
            } catch (const std::logic_error&) {
                fail("bad multiplicity '" + value + "'");
            }
            if (!desc.mult_table.emplace(key, m).second)
                fail("duplicate kind '" + key + "'");
        }
    }
    if (!header)
        throw input_error(source + ": empty form file");
    if (desc.name.empty())
        throw input_error(source + ": missing 'name'");
    if (!have_type)
        throw input_error(source + ": missing 'type'");
    return desc;
}

inline RealForm load_form_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot read form file " + path.string());
    return detail::assemble(parse_form(in, path.string()));
}

/// Directories searched for `.rrform` files: $RRFORM_PATH (colon separated), then the shipped data.
inline std::vector<std::filesystem::path> form_search_path()
{
    std::vector<std::filesystem::path> dirs;
    if (const char* env = std::getenv("RRFORM_PATH")) {
        std::string s = env;
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto colon = s.find(':', start);
            const auto part = s.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
            if (!part.empty())
                dirs.emplace_back(part);
            if (colon == std::string::npos)
                break;
            start = colon + 1;
        }
    }
    dirs.emplace_back(RRLIE_DEFAULT_FORM_DIR);
    return dirs;
}

/// (name, path) of every data file on the search path, first occurrence of a name wins.
inline std::vector<std::pair<std::string, std::filesystem::path>> list_datafiles()
{
    std::vector<std::pair<std::string, std::filesystem::path>> out;
    std::set<std::string> seen;
    for (const auto& dir : form_search_path()) {
        std::error_code ec;
        if (!std::filesystem::is_directory(dir, ec))
            continue;
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(dir, ec))
            if (e.path().extension() == ".rrform")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f);
            try {
                auto desc = parse_form(in, f.string());
                if (seen.insert(desc.name).second)
                    out.emplace_back(desc.name, f);
            } catch (const input_error&) {
                // Malformed files surface when loaded by name; listing skips them.
            }
        }
    }
    return out;
}

inline RealForm split_form(const CartanType& t)
{
    RealFormDescriptor desc;
    desc.name = "split-" + t.label();
    desc.restricted_type = t;
    desc.origin = FormOrigin::builtin_split;
    const auto sys = generate(t);
    for (const auto& k : root_kinds(sys))
        desc.mult_table[k] = 1;
    return RealForm{sys, desc};
}

/// Builtin split name ("split-A3"), data-file name ("su(2,1)") or a path to a `.rrform` file.
inline RealForm load_form(const std::string& name_or_path)
{
    if (name_or_path.rfind("split-", 0) == 0) {
        const auto names = builtin_split_names();
        if (std::find(names.begin(), names.end(), name_or_path) == names.end())
            throw input_error("unknown builtin form '" + name_or_path + "'");
        return split_form(CartanType::parse(name_or_path.substr(6)));
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(name_or_path, ec))
        return load_form_file(name_or_path);
    for (const auto& [name, path] : list_datafiles())
        if (name == name_or_path)
            return load_form_file(path);
    throw input_error("unknown form '" + name_or_path + "'");
}

struct Tier1Report {
    std::string form;
    std::string restricted_type;
    CascadeDecomposition decomposition;
    std::vector<long> modular_exponents;
    std::size_t dim_a_diamond = 0;
    long deg_pf = 0;
    long deg_det = 0;
    long deg_dp = 0;
    long dim_n = 0;
    long dim_s = 0;
};

inline Tier1Report tier1_report(const RealForm& form)
{
    auto dec = decompose(form.system);
    Tier1Report rep{form.descriptor.name, form.descriptor.restricted_type.label(), dec, {}, 0, 0, 0, 0, 0, 0};
    rep.modular_exponents = dec.modular_exponents();
    rep.dim_a_diamond = a_diamond(form.system, dec.betas).size();
    rep.deg_pf = dec.pfaffian_degree();
    rep.deg_det = dec.dim_s();
    rep.dim_n = dec.dim_n();
    rep.dim_s = dec.dim_s();
    if ((rep.dim_n + rep.dim_s) % 2 != 0)
        throw structural_error(form.descriptor.name + ": dim n + dim s is odd");
    rep.deg_dp = (rep.dim_n + rep.dim_s) / 2;
    return rep;
}

} // namespace rrlie
