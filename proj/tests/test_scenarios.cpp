#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qgroup/qgroup.hpp"
#include "test_util.hpp"

using namespace qgroup;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalError;
}

const Check* find_check(const VerificationReport& r, const std::string& name) {
  for (const Check& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string failures(const VerificationReport& r) {
  std::string out;
  for (const Check& c : r.checks)
    if (!c.passed) out += c.name + " (" + std::to_string(c.max_error) + ") " + c.details + "; ";
  return out;
}

}  // namespace

TEST(Scenarios, SpinHalfPasses) {
  const VerificationReport r = run_scenario(ordered_json{{"scenario", "spin"}, {"params", {{"j", "1/2"}}}});
  EXPECT_GE(r.checks.size(), 6u);
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(r.config_echo["params"]["j"], "1/2");
  EXPECT_EQ(r.config_echo["seed"], kDefaultSeed);
}

TEST(Scenarios, BuiltinsPassWithDefaults) {
  for (const std::string& name : builtin_scenarios()) {
    const VerificationReport r = run_scenario(ordered_json{{"scenario", name}});
    EXPECT_EQ(r.scenario, name);
    EXPECT_TRUE(r.passed()) << name << ": " << failures(r);
  }
}

TEST(Scenarios, SpinParameterSweep) {
  for (const char* j : {"0", "1", "3/2", "2", "5/2"}) {
    for (const char* sub : {"sign_flip", "trivial"}) {
      const VerificationReport r = run_scenario(
          ordered_json{{"scenario", "spin"}, {"params", {{"j", j}, {"a", {1, 2, 3}}, {"subgroup", sub}}}});
      EXPECT_TRUE(r.passed()) << j << " " << sub << ": " << failures(r);
    }
  }
}

TEST(Scenarios, SpinOrbitDetails) {
  SpinScenario s;
  s.spin = Spin{2};
  const VerificationReport r = spin_orbit_demo(s);
  const Check* c = find_check(r, "eigenvalue_orbits");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->passed);

  const OperatorBundle jz = spin_component_operator(Spin{2}, {0, 0, 1});
  const auto maps = spin_value_maps("sign_flip");
  const EigenOrbits eo = eigen_orbit_partition(jz, maps);
  const std::set<std::vector<double>> got(eo.orbit_values.begin(), eo.orbit_values.end());
  const std::set<std::vector<double>> want{{-1, 1}, {0}};
  ASSERT_EQ(got.size(), want.size());
  for (const auto& o : want) {
    bool found = false;
    for (const auto& g : got)
      if (g.size() == o.size() && std::equal(g.begin(), g.end(), o.begin(), [](double a, double b) {
            return std::abs(a - b) < 1e-9;
          }))
        found = true;
    EXPECT_TRUE(found);
  }

  const EigenOrbits single = eigen_orbit_partition(jz, spin_value_maps("trivial"));
  EXPECT_EQ(single.orbits.size(), 3u);
  for (const auto& o : single.orbits) EXPECT_EQ(o.size(), 1u);
}

TEST(Scenarios, PedagogyPasses) {
  const VerificationReport r = pedagogy_z4_demo();
  EXPECT_TRUE(r.passed()) << failures(r);
  for (const char* name : {"permissible_mod2", "not_permissible_indicator", "induced_homomorphism",
                           "maximal_permissible_subgroup", "maximality_bruteforce"})
    EXPECT_NE(find_check(r, name), nullptr) << name;
}

TEST(Scenarios, PhaseSizes) {
  for (int n : {2, 3, 5, 16}) {
    const VerificationReport r = run_scenario(ordered_json{{"scenario", "phase"}, {"params", {{"n", n}}}});
    EXPECT_TRUE(r.passed()) << n << ": " << failures(r);
  }
  EXPECT_TRUE(phase_space_demo(6, -2, 3).passed());
  EXPECT_EQ(code_of([] { phase_space_demo(1); }), Errc::BadSize);
}

TEST(Scenarios, CoherentFiducials) {
  const CVector f = (CVector(2) << cplx(0.3, 0.1), cplx(-0.7, 0.2)).finished();
  EXPECT_TRUE(coherent_d4_demo(f).passed());
  EXPECT_TRUE(coherent_bt24_demo(f).passed());
  const VerificationReport r = run_scenario(
      ordered_json{{"scenario", "coherent_d4"}, {"params", {{"fiducial", {{0.3, 0.1}, {-0.7, 0.2}}}}}});
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(code_of([] { coherent_d4_demo(CVector::Zero(2)); }), Errc::ZeroFiducial);
  EXPECT_EQ(code_of([] { coherent_d4_demo(CVector::Ones(3)); }), Errc::DimensionMismatch);
}

TEST(Config, Rejections) {
  EXPECT_EQ(code_of([] { parse_config_text("{}"); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text(""); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text("[1]"); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text("{\"scenario\": 3}"); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text("{\"scenario\": \"spin\", \"extra\": 1}"); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text("{\"scenario\": \"spin\", \"seed\": -4}"); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { parse_config_text("{\"scenario\": \"spin\", \"tolerances\": {\"*\": 0}}"); }),
            Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { run_scenario(ordered_json{{"scenario", "nope"}}); }), Errc::UnknownScenario);
  EXPECT_EQ(code_of([] { run_scenario(ordered_json{{"scenario", "spin"}, {"params", {{"k", 1}}}}); }),
            Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { run_scenario(ordered_json{{"scenario", "spin"}, {"params", {{"j", "1/3"}}}}); }),
            Errc::BadSpin);
  EXPECT_EQ(code_of([] { run_scenario(ordered_json{{"scenario", "phase"}, {"params", {{"n", 1}}}}); }),
            Errc::BadSize);
  EXPECT_EQ(code_of([] {
              run_scenario(ordered_json{{"scenario", "spin"}, {"tolerances", {{"no_such_check", 1e-3}}}});
            }),
            Errc::ConfigParseError);
}

TEST(Config, ToleranceOverrides) {
  const ordered_json base{{"scenario", "coherent_bt24"}};
  const VerificationReport r0 = run_scenario(base);
  const Check* direct = find_check(r0, "frame_direct_sum");
  ASSERT_NE(direct, nullptr);
  ASSERT_GT(direct->max_error, 0.0);

  ordered_json strict = base;
  strict["tolerances"] = {{"frame_direct_sum", direct->max_error / 2}};
  const VerificationReport r1 = run_scenario(strict);
  EXPECT_FALSE(find_check(r1, "frame_direct_sum")->passed);
  EXPECT_FALSE(r1.passed());

  // A global override leaves exact checks alone.
  ordered_json global = base;
  global["tolerances"] = {{"*", 1.0}};
  const VerificationReport r2 = run_scenario(global);
  for (std::size_t i = 0; i < r2.checks.size(); ++i)
    EXPECT_EQ(r2.checks[i].tolerance, r0.checks[i].exact ? 0.0 : 1.0) << r2.checks[i].name;
  EXPECT_EQ(find_check(r2, "rep_irreducible")->tolerance, 0.0);
  EXPECT_EQ(find_check(r2, "frame_direct_sum")->tolerance, 1.0);
  EXPECT_TRUE(r2.passed());
}

TEST(Report, DeterministicJson) {
  const auto a = run_all();
  const auto b = run_all();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(dump_json(to_json(a[i], false)), dump_json(to_json(b[i], false))) << a[i].scenario;
}

TEST(Report, JsonShape) {
  const VerificationReport r = run_scenario(ordered_json{{"scenario", "pedagogy_z4"}});
  const ordered_json j = ordered_json::parse(dump_json(to_json(r)));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"scenario", "checks", "timing_ms", "config_echo"}));
  for (const auto& c : j["checks"]) {
    std::vector<std::string> ck;
    for (auto it = c.begin(); it != c.end(); ++it) ck.push_back(it.key());
    EXPECT_EQ(ck, (std::vector<std::string>{"name", "anchor", "passed", "max_error", "tolerance", "details"}));
    EXPECT_FALSE(c["anchor"].get<std::string>().empty());
  }
  EXPECT_EQ(dump_json(ordered_json{{"x", 0.1}, {"y", 2.0}}, 0), "{\"x\":0.10000000000000001,\"y\":2.0}");
}

TEST(SerializeProperty, RoundTrips) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> size(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = size(rng);
    std::vector<double> pts(static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> lab(-3, 3);
    for (double& p : pts) p = 0.5 * lab(rng);
    const auto v = ConceptualVariable::from_point_labels(pts);
    const auto back = variable_from_json(ordered_json::parse(dump_json(to_json(v))));
    EXPECT_EQ(back.values(), v.values());
    EXPECT_EQ(back.labels(), v.labels());

    const CVector c = testutil::random_complex(rng, n, 1);
    const CVector cb = complex_vector_from_json(ordered_json::parse(dump_json(complex_vector_json(c))));
    EXPECT_EQ((cb - c).norm(), 0.0);
  }
  for (int twice = 1; twice <= 3; ++twice) {
    const UnitaryRep rep = binary_tetrahedral_spin_rep(Spin{twice});
    const UnitaryRep back = rep_from_json(rep.group(), ordered_json::parse(dump_json(to_json(rep))));
    for (int k = 0; k < rep.group().order(); ++k) EXPECT_EQ((back(k) - rep(k)).norm(), 0.0);
  }
  EXPECT_EQ(code_of([] { variable_from_json(ordered_json{{"values", {0}}}); }), Errc::ConfigParseError);
  EXPECT_EQ(code_of([] { complex_vector_from_json(ordered_json::array({"a"})); }), Errc::ConfigParseError);
}
