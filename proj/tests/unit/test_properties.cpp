#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>

#include "maxbandit/grammar.hpp"
#include "maxbandit/properties.hpp"
#include "smiles_oracle.hpp"

using namespace maxbandit;

namespace {

// Applies productions by text in leftmost order, then closes every open slot with [H].
Molecule build(const Grammar& g, std::initializer_list<std::string_view> steps) {
  auto s = g.start();
  for (auto text : steps) {
    bool applied = false;
    for (std::size_t idx : g.legal_productions(s)) {
      if (g.production(idx).text == text) {
        g.apply(s, idx);
        applied = true;
        break;
      }
    }
    if (!applied) throw std::invalid_argument("no legal production " + std::string(text));
  }
  while (!s.complete()) g.apply(s, g.terminator(s.pending()));
  return g.finalize(s);
}

const Grammar& grammar() {
  static const Grammar g = Grammar::standard();
  return g;
}

Molecule acetone() { return build(grammar(), {"C(=O)(Y)(Y)", "C(X)(Y)(Y)", "[H]", "[H]", "[H]", "C(X)(Y)(Y)"}); }
Molecule acetic_acid() { return build(grammar(), {"C(=O)(O(Y))(Y)", "[H]", "C(X)(Y)(Y)"}); }
Molecule methane() { return build(grammar(), {"C(X)(Y)(Y)(Y)"}); }
Molecule ethanol() { return build(grammar(), {"C(X)(Y)(Y)(Y)", "C(X)(Y)(Y)", "O(Y)"}); }
Molecule ethyl_acetate() {
  return build(grammar(), {"C(=O)(O(Y))(Y)", "C(X)(Y)(Y)", "C(X)(Y)(Y)", "[H]", "[H]", "[H]", "[H]", "[H]",
                           "C(X)(Y)(Y)"});
}
Molecule butane() {
  return build(grammar(), {"C(X)(Y)(Y)(Y)", "C(X)(Y)(Y)", "C(X)(Y)(Y)", "C(X)(Y)(Y)"});
}
Molecule diethyl_ether() {
  return build(grammar(), {"C(X)(Y)(Y)(Y)", "C(X)(Y)(Y)", "O(Y)", "C(X)(Y)(Y)", "C(X)(Y)(Y)"});
}

}  // namespace

TEST_CASE("group classification of reference compounds") {
  const auto a = classify_fragments(acetone().graph);
  CHECK(a.count(JobackGroup::ch3) == 2);
  CHECK(a.count(JobackGroup::co) == 1);
  CHECK(a.total() == 3);

  const auto e = classify_fragments(ethyl_acetate().graph);
  CHECK(e.count(JobackGroup::ch3) == 2);
  CHECK(e.count(JobackGroup::ch2) == 1);
  CHECK(e.count(JobackGroup::coo) == 1);
  CHECK(e.total() == 4);

  const auto acid = classify_fragments(acetic_acid().graph);
  CHECK(acid.count(JobackGroup::cooh) == 1);
  CHECK(acid.count(JobackGroup::ch3) == 1);

  const auto m = classify_fragments(methane().graph);
  CHECK(m.methane);
  CHECK(m.total() == 0);
  CHECK(joback_tb(m) == doctest::Approx(198.2));
}

TEST_CASE("boiling point") {
  const auto mol = acetone();
  const auto frags = classify_fragments(mol.graph);
  const double tb = joback_tb(frags);
  CHECK(tb == doctest::Approx(322.11).epsilon(0.01 / 322.11));
  CHECK(tb == doctest::Approx(198.2 + 2 * 23.58 + 76.75).epsilon(1e-12));
  CHECK(tb == doctest::Approx(oracle::hand_tb(oracle::joback_groups(oracle::parse_smiles(mol.smiles)))).epsilon(1e-12));
  CHECK(joback_tb(FragmentMultiset{}) == 198.2);
  FragmentMultiset doubled = frags;
  for (auto& c : doubled.counts) c *= 2;
  CHECK(joback_tb(doubled) - 198.2 == doctest::Approx(2 * (tb - 198.2)));
}

TEST_CASE("critical pressure") {
  const auto mol = acetone();
  const auto frags = classify_fragments(mol.graph);
  CHECK(atom_count(mol.graph) == 10);
  const double pc = joback_pc(frags, atom_count(mol.graph));
  CHECK(pc >= 47.0);
  CHECK(pc <= 49.0);
  CHECK(joback_pc(FragmentMultiset{}, 0) == doctest::Approx(std::pow(0.113, -2.0)));
  CHECK(joback_pc(FragmentMultiset{}, 0) == doctest::Approx(78.3).epsilon(1e-3));
  double prev = INFINITY;
  for (int na = 5; na < 60; ++na) {
    const double v = joback_pc(frags, na);
    CHECK(v < prev);
    prev = v;
  }
  FragmentMultiset bad;
  bad.add(JobackGroup::f, 100);  // strongly negative contributions
  if (0.113 + 100 * JobackTables::builtin().at(JobackGroup::f).pc <= 0.0) {
    CHECK_THROWS_AS(joback_pc(bad, 0), std::domain_error);
  }
}

TEST_CASE("viscosity") {
  CHECK(joback_eta(FragmentMultiset{}, 1.0) == doctest::Approx(std::exp(-597.82 / 300 - 11.202)).epsilon(1e-12));
  CHECK(joback_eta(FragmentMultiset{}, 1.0) == doctest::Approx(1.87e-6).epsilon(1e-2));
  const auto mol = ethanol();
  const auto frags = classify_fragments(mol.graph);
  CHECK(frags.count(JobackGroup::oh) == 1);
  const double mw = molecular_weight(mol.graph);
  const double eta = joback_eta(frags, mw);
  const auto parsed = oracle::parse_smiles(mol.smiles);
  CHECK(eta == doctest::Approx(oracle::hand_eta(oracle::joback_groups(parsed), oracle::hand_mass(parsed))).epsilon(1e-9));
  CHECK(joback_eta(frags, 2 * mw) == doctest::Approx(2 * eta));
  FragmentMultiset fluorinated;
  fluorinated.add(JobackGroup::f);
  CHECK_THROWS_AS(joback_eta(fluorinated, 20.0), std::domain_error);
}

TEST_CASE("polar surface area") {
  CHECK(tpsa(butane().graph) == 0.0);
  CHECK(tpsa(acetic_acid().graph) == doctest::Approx(37.30).epsilon(1e-12));
  CHECK(tpsa(diethyl_ether().graph) == doctest::Approx(9.23).epsilon(1e-12));
  CHECK(tpsa(acetone().graph) == doctest::Approx(17.07).epsilon(1e-12));
}

TEST_CASE("mass and atom count") {
  const auto m = methane();
  CHECK(molecular_weight(m.graph) == doctest::Approx(16.043).epsilon(0.001 / 16.043));
  CHECK(atom_count(m.graph) == 5);
  CHECK(molecular_weight(MoleculeGraph{}) == 0.0);
  CHECK(atom_count(MoleculeGraph{}) == 0);
  CHECK(molecular_weight(acetone().graph) == doctest::Approx(58.080).epsilon(1e-5));
}

TEST_CASE("tables") {
  const auto& t = JobackTables::builtin();
  for (std::size_t i = 0; i < kJobackGroupCount; ++i) {
    const auto g = static_cast<JobackGroup>(i);
    CHECK(parse_joback_group_id(joback_group_id(g)) == g);
    CHECK(t.groups[i].has_value());
  }
  CHECK(t.at(JobackGroup::ch3).tb == 23.58);
  CHECK(t.at(JobackGroup::co).tb == 76.75);
  CHECK_FALSE(parse_joback_group_id("ring-ch2").has_value());
  CHECK_THROWS(JobackTables::parse("ch3\t-CH3\tx\t1\t2\tNA\tNA\n"));
  CHECK(TpsaTable::builtin().lookup(Element::O, 1, 1, 0) == doctest::Approx(20.23));
  CHECK_FALSE(TpsaTable::builtin().lookup(Element::O, 3, 0, 0).has_value());
  for (auto p : {Property::boiling_point, Property::critical_pressure, Property::viscosity, Property::tpsa}) {
    CHECK(parse_property(property_name(p)) == p);
  }
  CHECK(parse_property("tb") == Property::boiling_point);
  CHECK(parse_property("eta") == Property::viscosity);
  CHECK_THROWS(parse_property("logp"));
}

TEST_CASE("property: fuzzed grammar molecules agree with the independent classifier") {
  for (auto prop : {Property::boiling_point, Property::viscosity}) {
    const auto g = grammar_for(prop);
    std::mt19937_64 rng(prop == Property::viscosity ? 31 : 13);
    const int samples = prop == Property::viscosity ? 20000 : 100000;
    for (int i = 0; i < samples; ++i) {
      auto s = g.start();
      while (!s.complete()) {
        const auto legal = g.legal_productions(s);
        g.apply(s, legal[rng() % legal.size()]);
      }
      const auto mol = g.finalize(s);
      const auto frags = classify_fragments(mol.graph);
      REQUIRE(covered_heavy_atoms(frags) == mol.graph.heavy_atom_count());
      const double tb = evaluate(Property::boiling_point, mol.graph);
      const double ps = evaluate(Property::tpsa, mol.graph);
      REQUIRE(std::isfinite(tb));
      REQUIRE(ps >= 0.0);
      (void)evaluate(Property::critical_pressure, mol.graph);
      if (prop == Property::viscosity) REQUIRE(evaluate(Property::viscosity, mol.graph) > 0.0);
      if (i % 20 == 0) {
        const auto parsed = oracle::parse_smiles(mol.smiles);
        const auto groups = oracle::joback_groups(parsed);
        REQUIRE(tb == doctest::Approx(oracle::hand_tb(groups)).epsilon(1e-12));
        REQUIRE(ps == doctest::Approx(oracle::hand_tpsa(parsed)).epsilon(1e-12));
        REQUIRE(molecular_weight(mol.graph) == doctest::Approx(oracle::hand_mass(parsed)).epsilon(1e-12));
        REQUIRE(atom_count(mol.graph) == oracle::hand_atom_count(parsed));
        REQUIRE(joback_pc(frags, atom_count(mol.graph)) ==
                doctest::Approx(oracle::hand_pc(groups, oracle::hand_atom_count(parsed))).epsilon(1e-9));
        if (prop == Property::viscosity) {
          REQUIRE(evaluate(Property::viscosity, mol.graph) ==
                  doctest::Approx(oracle::hand_eta(groups, oracle::hand_mass(parsed))).epsilon(1e-9));
        }
      }
    }
  }
}
