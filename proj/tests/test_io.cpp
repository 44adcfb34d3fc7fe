#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "bergman_lab/parse.hpp"
#include "bergman_lab/report_io.hpp"

using namespace bergman_lab;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::domain;
}

} // namespace

TEST(Parse, Weights)
{
    EXPECT_EQ(parse_weight("std:alpha=1").spec(), Weight::standard_alpha(1.0).spec());
    EXPECT_EQ(parse_weight("log:beta=2.5").spec(), Weight::log_doubling(2.5).spec());
    EXPECT_EQ(parse_weight("exp:c=1").spec(), Weight::exponential(1.0).spec());
    const Weight u = parse_weight("upsilon:k=2,base=std:alpha=0");
    EXPECT_EQ(u.spec(), upsilon_transform(Weight::standard_alpha(0.0), 2).spec());
}

TEST(Parse, Symbols)
{
    const AnalyticFn p = parse_symbol("poly:0,1,0,-2");
    EXPECT_TRUE(p.is_polynomial());
    EXPECT_EQ(p.coeff(1), Complex(1.0, 0.0));
    EXPECT_EQ(p.coeff(3), Complex(-2.0, 0.0));
    EXPECT_EQ(parse_symbol("log", 64).truncation(), 64);
    const AnalyticFn c = parse_symbol("carleson:a=0.5,gamma=2");
    EXPECT_NEAR(std::abs(c.coeff(1) - symbol_carleson(0.5, 2.0).coeff(1)), 0.0, 1e-15);
    const AnalyticFn ct = parse_symbol("carleson:a=0.5,theta=1.5707963267948966,gamma=2");
    EXPECT_NEAR(std::abs(ct.coeff(1) - symbol_carleson(Complex(0.0, 0.5), 2.0).coeff(1)), 0.0, 1e-15);
    EXPECT_EQ(parse_symbol("pow:s=0.3").label(), "pow:s=0.3");
}

TEST(Parse, Measures)
{
    const MeasureSpec star = parse_measure("star:g=poly:0,1,n=1,k=0");
    EXPECT_EQ(star.kind(), MeasureKind::star_density);
    EXPECT_EQ(star.analytic_factor().coeff(0), Complex(1.0, 0.0));
    const MeasureSpec atom = parse_measure("atom:re=0.5,mass=2");
    ASSERT_EQ(atom.atom_list().size(), 1u);
    EXPECT_EQ(atom.atom_list()[0].z, Complex(0.5, 0.0));
    EXPECT_EQ(atom.atom_list()[0].mass, 2.0);
    EXPECT_EQ(parse_measure("tau:g=log,n=2,k=1").kind(), MeasureKind::hardy_star_density);
    EXPECT_EQ(parse_measure("radial:pow=1").kind(), MeasureKind::radial_density);
}

TEST(Parse, ConfigErrors)
{
    EXPECT_EQ(kind_of([] { parse_weight("gauss:s=1"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_weight("std:beta=1"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_weight("std:alpha=x"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_weight("std"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_symbol("poly:"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_symbol("log:x=1"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_measure("star:g=log,n=1"); }), ErrorKind::config);
    // well-formed text, invalid value: reported by the constructor
    EXPECT_EQ(kind_of([] { parse_weight("std:alpha=-2"); }), ErrorKind::parameter);
}

TEST(ReportJson, NonFiniteValuesAndLayout)
{
    CriterionReport rep;
    rep.id = "thm31";
    rep.param("p", 1.0);
    rep.fact("sup", std::numeric_limits<double>::infinity());
    rep.fact("fit", std::nan(""));
    rep.profile = {{0.5, 1.0}, {0.25, -std::numeric_limits<double>::infinity()}};
    rep.verdict = Verdict::fails;
    rep.parts = {{"bounded", Verdict::fails}};
    Json config = Json::object();
    config["weight"] = "std:alpha=0";
    const Json j = bergman_lab::to_json(rep, config);
    EXPECT_EQ(j["fit"]["sup"], "inf");
    EXPECT_EQ(j["fit"]["fit"], "nan");
    EXPECT_EQ(j["profile"][1][1], "-inf");
    EXPECT_EQ(j["verdict"], "fails");
    EXPECT_EQ(j["config"]["weight"], "std:alpha=0");
    EXPECT_TRUE(j["cross_check"].is_null());
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"criterion", "config", "params", "verdict", "parts", "fit",
                                              "profile_axis", "profile", "notes", "cross_check"}));
    // round trip through text keeps the strings
    EXPECT_EQ(Json::parse(j.dump()), j);
}

TEST(ReportJson, DeterministicForIdenticalInputs)
{
    const Weight w = Weight::standard_alpha(0.0);
    const std::string a = bergman_lab::to_json(thm31_boundedness(symbol_power(0.5), w, 1.0, 2.0, 1, 0)).dump();
    const std::string b = bergman_lab::to_json(thm31_boundedness(symbol_power(0.5), w, 1.0, 2.0, 1, 0)).dump();
    EXPECT_EQ(a, b);
}

TEST(ReportCsv, ProfileAndSuiteRows)
{
    CriterionReport rep;
    rep.profile_axis = "gap";
    rep.profile = {{0.5, 0.1}};
    std::ostringstream os;
    write_profile_csv(os, rep);
    EXPECT_EQ(os.str(), "gap,value\n0.5,0.10000000000000001\n");

    SuiteRow row;
    row.suite = "acceptance";
    row.id = "2";
    row.name = "spectrum, \"S1\"";
    row.detail = "slope 0.99";
    std::ostringstream ss;
    write_suite_csv(ss, {row});
    EXPECT_NE(ss.str().find("\"spectrum, \"\"S1\"\"\""), std::string::npos);
}

TEST(Cache, KeyChangesWithEveryNumericParameter)
{
    Json base = Json::object();
    base["cmd"] = "criteria cor43";
    base["p"] = "2";
    base["n"] = "1";
    base["weight"] = "std:alpha=0";
    const std::string k0 = cache_key(base);
    EXPECT_EQ(k0.size(), 16u);
    EXPECT_EQ(cache_key(base), k0);
    for (const auto& [key, value] : std::vector<std::pair<std::string, std::string>>{
             {"p", "2.0000000000000004"}, {"n", "2"}, {"weight", "std:alpha=1e-300"}}) {
        Json changed = base;
        changed[key] = value;
        EXPECT_NE(cache_key(changed), k0) << key;
    }
    // FNV-1a reference vectors
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cache, AtomicWriteAndRead)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bergman_lab_io_test";
    fs::remove_all(dir);
    const fs::path file = dir / "sub" / "report.json";
    atomic_write(file, "{\"x\":1}");
    atomic_write(file, "{\"x\":2}");
    std::string back;
    ASSERT_TRUE(read_file(file, back));
    EXPECT_EQ(back, "{\"x\":2}");
    int entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(file.parent_path()))
        ++entries;
    EXPECT_EQ(entries, 1);
    EXPECT_FALSE(read_file(dir / "missing.json", back));
    fs::remove_all(dir);
}

TEST(ErrorJson, Shape)
{
    const Json j = error_json(ErrorKind::config, "bad weight");
    EXPECT_EQ(j.dump(), "{\"error\":\"config\",\"message\":\"bad weight\"}");
}
