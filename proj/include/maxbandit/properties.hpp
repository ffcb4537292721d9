#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxbandit/grammar.hpp"
#include "maxbandit/molecule.hpp"

namespace maxbandit {

/// Joback non-ring groups reachable from the molecule grammar.
enum class JobackGroup : std::uint8_t {
  ch3, ch2, ch, c, eq_ch2, eq_ch, eq_c, f, cl, br, oh, o, co, cho, cooh, coo, nh2, nh, n,
};
inline constexpr std::size_t kJobackGroupCount = 19;

std::string_view joback_group_id(JobackGroup g);
std::optional<JobackGroup> parse_joback_group_id(std::string_view id);

struct JobackEntry {
  std::string label;
  int heavy_atoms = 1;
  double tb = 0.0;
  double pc = 0.0;
  std::optional<double> eta_a;
  std::optional<double> eta_b;
};

struct JobackTables {
  std::array<std::optional<JobackEntry>, kJobackGroupCount> groups;

  const JobackEntry& at(JobackGroup g) const;
  /// Tab-separated rows "id label heavy_atoms tb pc eta_a eta_b"; '#' lines are
  /// comments and NA marks a missing viscosity parameter.
  static JobackTables parse(std::string_view text);
  static JobackTables load(const std::string& path);
  /// Tables compiled into the library.
  static const JobackTables& builtin();
};

struct TpsaEntry {
  Element element = Element::O;
  int hydrogens = 0;
  int single_bonds = 0;
  int double_bonds = 0;
  double value = 0.0;
};

struct TpsaTable {
  std::vector<TpsaEntry> entries;

  std::optional<double> lookup(Element e, int hydrogens, int single_bonds, int double_bonds) const;
  static TpsaTable parse(std::string_view text);
  static TpsaTable load(const std::string& path);
  static const TpsaTable& builtin();
};

struct FragmentMultiset {
  std::array<int, kJobackGroupCount> counts{};
  /// CH4 has no Joback group; its fragment sums are zero.
  bool methane = false;

  int count(JobackGroup g) const { return counts[static_cast<std::size_t>(g)]; }
  void add(JobackGroup g, int n = 1) { counts[static_cast<std::size_t>(g)] += n; }
  int total() const;
  bool operator==(const FragmentMultiset&) const = default;
};

/// Joback groups of an acyclic molecule. Throws std::domain_error for an atom
/// environment outside the table.
FragmentMultiset classify_fragments(const MoleculeGraph& mol);

/// Sum of heavy atoms over groups; equals the heavy-atom count of the classified molecule.
int covered_heavy_atoms(const FragmentMultiset& frags, const JobackTables& tables = JobackTables::builtin());

/// Molar mass in g/mol, hydrogens included.
double molecular_weight(const MoleculeGraph& mol);
/// Number of atoms, hydrogens included.
int atom_count(const MoleculeGraph& mol);

/// Normal boiling point in K.
double joback_tb(const FragmentMultiset& frags, const JobackTables& tables = JobackTables::builtin());
/// Critical pressure in bar. Throws std::domain_error if the bracket is not positive.
double joback_pc(const FragmentMultiset& frags, int atoms,
                 const JobackTables& tables = JobackTables::builtin());
/// Liquid viscosity at 300 K in Pa s. Throws std::domain_error for groups without
/// viscosity parameters.
double joback_eta(const FragmentMultiset& frags, double molar_mass,
                  const JobackTables& tables = JobackTables::builtin());
/// Topological polar surface area in square angstrom. Throws std::domain_error
/// for an N or O environment outside the table.
double tpsa(const MoleculeGraph& mol, const TpsaTable& table = TpsaTable::builtin());

enum class Property { boiling_point, critical_pressure, viscosity, tpsa };

Property parse_property(std::string_view name);
std::string_view property_name(Property p);

/// Reward of `mol` for property `p`.
double evaluate(Property p, const MoleculeGraph& mol);
/// Grammar used when searching for `p`: viscosity runs drop productions whose
/// groups have no viscosity parameters.
Grammar grammar_for(Property p);

}  // namespace maxbandit
