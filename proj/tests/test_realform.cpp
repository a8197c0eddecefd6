#include "rrlie/realform.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace rrlie;

namespace {

RealForm parse_text(const std::string& text)
{
    std::istringstream in(text);
    return detail::assemble(parse_form(in, "test"));
}

} // namespace

TEST(RealForm, BuiltinSplitCatalogue)
{
    const auto names = builtin_split_names();
    EXPECT_EQ(names.size(), 7u + 6 + 6 + 4 + 1 + 1 + 3);
    for (const auto& n : names) {
        const auto f = load_form(n);
        EXPECT_TRUE(f.descriptor.split()) << n;
        EXPECT_EQ(f.descriptor.name, n);
    }
    EXPECT_THROW(load_form("split-A9"), input_error);
    EXPECT_THROW(load_form("split-BC2"), input_error);
    EXPECT_THROW(load_form("no-such-form"), input_error);
}

TEST(RealForm, ParsesDataFile)
{
    const auto f = parse_text("rrform v1\n# comment\nname su(2,1)\ntype BC1\ne_i 2   # short roots\n2e_i 1\n");
    EXPECT_EQ(f.descriptor.name, "su(2,1)");
    EXPECT_EQ(f.descriptor.restricted_type.label(), "BC1");
    EXPECT_FALSE(f.descriptor.split());
    EXPECT_EQ(f.system.dim_nilradical(), 3);
    const auto dec = decompose(f.system);
    EXPECT_EQ(dec.d, (std::vector<Rational>{1}));
    EXPECT_EQ(dec.c, 2);
}

TEST(RealForm, RejectsMalformedFiles)
{
    EXPECT_THROW(parse_text(""), input_error);
    EXPECT_THROW(parse_text("rrform v2\nname x\ntype A1\ne_i-e_j 1\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\ntype A1\ne_i-e_j 1\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\nname x\ne_i-e_j 1\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype A1\ne_i-e_j one\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype A1\ne_i-e_j 1\ne_i-e_j 2\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype A1\ne_i-e_j 1 2\n"), input_error);
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype Q1\ne_i-e_j 1\n"), input_error);
}

TEST(RealForm, RejectsInconsistentMultiplicities)
{
    // missing kind
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype B2\ne_i+-e_j 1\n"), input_error);
    // kind not in the type
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype B2\ne_i+-e_j 1\ne_i 1\n2e_i 1\n"), input_error);
    // nonpositive multiplicity
    EXPECT_THROW(parse_text("rrform v1\nname x\ntype A2\ne_i-e_j 0\n"), input_error);
}

TEST(RealForm, MultiplicitiesAreWeylInvariant)
{
    for (const auto& [name, path] : list_datafiles()) {
        const auto f = load_form_file(path);
        EXPECT_TRUE(detail::validate_weyl_invariance(f.system).passed) << name;
    }
}

TEST(RealForm, ShippedDataFiles)
{
    const auto files = list_datafiles();
    EXPECT_GE(files.size(), 20u);
    // su(3,1): 5-dimensional Heisenberg nilradical, d = 2, c = 2^2 2! = 8
    const auto su31 = load_form("su(3,1)");
    const auto dec = decompose(su31.system);
    EXPECT_EQ(dec.d, (std::vector<Rational>{2}));
    EXPECT_EQ(dec.c, 8);
    // so(4,1): abelian nilradical of dimension 3, quasi-centre is everything
    const auto so41 = load_form("so(4,1)");
    const auto t1 = tier1_report(so41);
    EXPECT_EQ(t1.dim_n, 3);
    EXPECT_EQ(t1.dim_s, 3);
    EXPECT_EQ(t1.deg_pf, 0);
    EXPECT_EQ(t1.deg_dp, 3);
    EXPECT_EQ(t1.modular_exponents, (std::vector<long>{3}));
}

TEST(RealForm, ComplexGroupsDoubleTheSplitData)
{
    // sl(n,C) viewed as a real group: restricted roots of type A_{n-1}, all multiplicities 2
    const auto f = load_form("sl(3,C)");
    const auto t1 = tier1_report(f);
    EXPECT_EQ(t1.dim_n, 6);
    EXPECT_EQ(t1.decomposition.dim_z, (std::vector<int>{2}));
    EXPECT_EQ(t1.decomposition.d, (std::vector<Rational>{2}));
}

TEST(RealForm, SearchPathFromEnvironment)
{
    const std::string dir = RRLIE_TEST_DATA_DIR;
    ::setenv("RRFORM_PATH", dir.c_str(), 1);
    const auto f = load_form("sample-su(2,1)-copy");
    EXPECT_EQ(f.descriptor.restricted_type.label(), "BC1");
    EXPECT_EQ(form_search_path().front(), dir);
    ::unsetenv("RRFORM_PATH");
    EXPECT_THROW(load_form("sample-su(2,1)-copy"), input_error);
}

TEST(RealForm, LoadsByPath)
{
    const auto f = load_form(std::string(RRLIE_DEFAULT_FORM_DIR) + "/su_2_2.rrform");
    EXPECT_EQ(f.descriptor.name, "su(2,2)");
    EXPECT_THROW(load_form_file("/nonexistent/x.rrform"), input_error);
}

TEST(RealForm, Tier1Degrees)
{
    for (const auto& name : builtin_split_names()) {
        const auto t1 = tier1_report(load_form(name));
        EXPECT_EQ(t1.deg_pf + t1.deg_det, t1.deg_dp) << name;
        EXPECT_EQ(2 * t1.deg_dp, t1.dim_n + t1.dim_s) << name;
    }
}
