#include "maxbandit/properties.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maxbandit/embedded_tables.hpp"

namespace maxbandit {
namespace {

constexpr std::array<std::string_view, kJobackGroupCount> kGroupIds = {
    "ch3", "ch2", "ch", "c", "eq_ch2", "eq_ch", "eq_c", "f", "cl", "br",
    "oh", "o", "co", "cho", "cooh", "coo", "nh2", "nh", "n"};

std::vector<std::vector<std::string>> read_rows(std::string_view text, std::size_t columns,
                                                std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != columns) {
      throw std::invalid_argument(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_number(const std::string& field, std::string_view what) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string(what) + ": bad number '" + field + "'");
  }
  return value;
}

int parse_int(const std::string& field, std::string_view what) {
  int value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + field + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& field, std::string_view what) {
  if (field == "NA") return std::nullopt;
  return parse_number(field, what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Element parse_element(const std::string& s) {
  if (s == "C") return Element::C;
  if (s == "N") return Element::N;
  if (s == "O") return Element::O;
  if (s == "F") return Element::F;
  if (s == "Cl") return Element::Cl;
  if (s == "Br") return Element::Br;
  throw std::invalid_argument("unknown element '" + s + "'");
}

std::string describe(const MoleculeGraph& mol, int atom) {
  const auto& a = mol.atom(atom);
  return std::string(element_symbol(a.element)) + " atom " + std::to_string(atom) + " with " +
         std::to_string(a.hydrogens) + " H and " + std::to_string(mol.neighbors(atom).size()) +
         " heavy neighbours";
}

}  // namespace

std::string_view joback_group_id(JobackGroup g) { return kGroupIds[static_cast<std::size_t>(g)]; }

std::optional<JobackGroup> parse_joback_group_id(std::string_view id) {
  for (std::size_t i = 0; i < kGroupIds.size(); ++i) {
    if (kGroupIds[i] == id) return static_cast<JobackGroup>(i);
  }
  return std::nullopt;
}

const JobackEntry& JobackTables::at(JobackGroup g) const {
  const auto& entry = groups[static_cast<std::size_t>(g)];
  if (!entry) throw std::domain_error("no Joback entry for group " + std::string(joback_group_id(g)));
  return *entry;
}

JobackTables JobackTables::parse(std::string_view text) {
  JobackTables tables;
  for (const auto& row : read_rows(text, 7, "Joback table")) {
    const auto group = parse_joback_group_id(row[0]);
    if (!group) throw std::invalid_argument("Joback table: unknown group '" + row[0] + "'");
    JobackEntry e;
    e.label = row[1];
    e.heavy_atoms = parse_int(row[2], "Joback table");
    e.tb = parse_number(row[3], "Joback table");
    e.pc = parse_number(row[4], "Joback table");
    e.eta_a = parse_optional(row[5], "Joback table");
    e.eta_b = parse_optional(row[6], "Joback table");
    if (e.eta_a.has_value() != e.eta_b.has_value()) {
      throw std::invalid_argument("Joback table: group '" + row[0] + "' has half a viscosity entry");
    }
    tables.groups[static_cast<std::size_t>(*group)] = std::move(e);
  }
  return tables;
}

JobackTables JobackTables::load(const std::string& path) { return parse(read_file(path)); }

const JobackTables& JobackTables::builtin() {
  static const JobackTables tables = parse(detail::kJobackTableText);
  return tables;
}

std::optional<double> TpsaTable::lookup(Element e, int hydrogens, int single_bonds,
                                        int double_bonds) const {
  for (const auto& entry : entries) {
    if (entry.element == e && entry.hydrogens == hydrogens && entry.single_bonds == single_bonds &&
        entry.double_bonds == double_bonds) {
      return entry.value;
    }
  }
  return std::nullopt;
}

TpsaTable TpsaTable::parse(std::string_view text) {
  TpsaTable table;
  for (const auto& row : read_rows(text, 6, "TPSA table")) {
    table.entries.push_back({parse_element(row[0]), parse_int(row[1], "TPSA table"),
                             parse_int(row[2], "TPSA table"), parse_int(row[3], "TPSA table"),
                             parse_number(row[4], "TPSA table")});
  }
  return table;
}

TpsaTable TpsaTable::load(const std::string& path) { return parse(read_file(path)); }

const TpsaTable& TpsaTable::builtin() {
  static const TpsaTable table = parse(detail::kTpsaTableText);
  return table;
}

int FragmentMultiset::total() const {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

FragmentMultiset classify_fragments(const MoleculeGraph& mol) {
  FragmentMultiset frags;
  const int n = mol.heavy_atom_count();
  if (n == 1 && mol.atom(0).element == Element::C && mol.atom(0).hydrogens == 4) {
    frags.methane = true;
    return frags;
  }
  std::vector<bool> claimed(static_cast<std::size_t>(n), false);

  // Carbonyl carbons first, in atom order, so that they own their oxygens.
  for (int i = 0; i < n; ++i) {
    const auto& atom = mol.atom(i);
    if (atom.element != Element::C) continue;
    int carbonyl_o = -1;
    for (const auto& nb : mol.neighbors(i)) {
      if (nb.order == 2 && mol.atom(nb.atom).element == Element::O) carbonyl_o = nb.atom;
    }
    if (carbonyl_o < 0) continue;
    int hydroxyl = -1;
    int ether = -1;
    for (const auto& nb : mol.neighbors(i)) {
      if (nb.order != 1 || mol.atom(nb.atom).element != Element::O || claimed[nb.atom]) continue;
      if (mol.atom(nb.atom).hydrogens > 0) {
        hydroxyl = nb.atom;
      } else if (ether < 0) {
        ether = nb.atom;
      }
    }
    claimed[i] = true;
    claimed[carbonyl_o] = true;
    if (hydroxyl >= 0) {
      claimed[hydroxyl] = true;
      frags.add(JobackGroup::cooh);
    } else if (ether >= 0) {
      claimed[ether] = true;
      frags.add(JobackGroup::coo);
    } else if (atom.hydrogens > 0) {
      frags.add(JobackGroup::cho);
    } else {
      frags.add(JobackGroup::co);
    }
  }

  for (int i = 0; i < n; ++i) {
    if (claimed[i]) continue;
    const auto& atom = mol.atom(i);
    const int h = atom.hydrogens;
    const int doubles = mol.double_bond_count(i);
    switch (atom.element) {
      case Element::C:
        if (doubles == 1) {
          if (h == 2) { frags.add(JobackGroup::eq_ch2); break; }
          if (h == 1) { frags.add(JobackGroup::eq_ch); break; }
          if (h == 0) { frags.add(JobackGroup::eq_c); break; }
        } else if (doubles == 0) {
          if (h == 3) { frags.add(JobackGroup::ch3); break; }
          if (h == 2) { frags.add(JobackGroup::ch2); break; }
          if (h == 1) { frags.add(JobackGroup::ch); break; }
          if (h == 0) { frags.add(JobackGroup::c); break; }
        }
        throw std::domain_error("unclassifiable " + describe(mol, i));
      case Element::O:
        if (doubles == 0 && h == 1) { frags.add(JobackGroup::oh); break; }
        if (doubles == 0 && h == 0 && mol.neighbors(i).size() == 2) { frags.add(JobackGroup::o); break; }
        throw std::domain_error("unclassifiable " + describe(mol, i));
      case Element::N:
        if (doubles == 0 && h == 2) { frags.add(JobackGroup::nh2); break; }
        if (doubles == 0 && h == 1) { frags.add(JobackGroup::nh); break; }
        if (doubles == 0 && h == 0) { frags.add(JobackGroup::n); break; }
        throw std::domain_error("unclassifiable " + describe(mol, i));
      case Element::F: frags.add(JobackGroup::f); break;
      case Element::Cl: frags.add(JobackGroup::cl); break;
      case Element::Br: frags.add(JobackGroup::br); break;
    }
  }
  return frags;
}

int covered_heavy_atoms(const FragmentMultiset& frags, const JobackTables& tables) {
  if (frags.methane) return 1;
  int total = 0;
  for (std::size_t g = 0; g < kJobackGroupCount; ++g) {
    if (frags.counts[g] != 0) total += frags.counts[g] * tables.at(static_cast<JobackGroup>(g)).heavy_atoms;
  }
  return total;
}

double molecular_weight(const MoleculeGraph& mol) {
  double mass = 0.0;
  for (const auto& a : mol.atoms()) mass += atomic_mass(a.element) + a.hydrogens * kHydrogenMass;
  return mass;
}

int atom_count(const MoleculeGraph& mol) { return mol.heavy_atom_count() + mol.hydrogen_count(); }

double joback_tb(const FragmentMultiset& frags, const JobackTables& tables) {
  double sum = 0.0;
  for (std::size_t g = 0; g < kJobackGroupCount; ++g) {
    if (frags.counts[g] != 0) sum += frags.counts[g] * tables.at(static_cast<JobackGroup>(g)).tb;
  }
  return 198.2 + sum;
}

double joback_pc(const FragmentMultiset& frags, int atoms, const JobackTables& tables) {
  double sum = 0.0;
  for (std::size_t g = 0; g < kJobackGroupCount; ++g) {
    if (frags.counts[g] != 0) sum += frags.counts[g] * tables.at(static_cast<JobackGroup>(g)).pc;
  }
  const double bracket = 0.113 + 0.0032 * atoms + sum;
  if (!(bracket > 0.0)) throw std::domain_error("joback_pc: non-positive bracket");
  return 1.0 / (bracket * bracket);
}

double joback_eta(const FragmentMultiset& frags, double molar_mass, const JobackTables& tables) {
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t g = 0; g < kJobackGroupCount; ++g) {
    if (frags.counts[g] == 0) continue;
    const auto group = static_cast<JobackGroup>(g);
    const auto& e = tables.at(group);
    if (!e.eta_a) {
      throw std::domain_error("joback_eta: no viscosity parameters for group " +
                              std::string(joback_group_id(group)));
    }
    sum_a += frags.counts[g] * *e.eta_a;
    sum_b += frags.counts[g] * *e.eta_b;
  }
  return molar_mass * std::exp((sum_a - 597.82) / 300.0 + sum_b - 11.202);
}

double tpsa(const MoleculeGraph& mol, const TpsaTable& table) {
  double total = 0.0;
  for (int i = 0; i < mol.heavy_atom_count(); ++i) {
    const auto& a = mol.atom(i);
    if (a.element != Element::N && a.element != Element::O) continue;
    const int doubles = mol.double_bond_count(i);
    const int singles = static_cast<int>(mol.neighbors(i).size()) - doubles;
    const auto value = table.lookup(a.element, a.hydrogens, singles, doubles);
    if (!value) throw std::domain_error("tpsa: no contribution for " + describe(mol, i));
    total += *value;
  }
  return total;
}

Property parse_property(std::string_view name) {
  if (name == "tb" || name == "boiling-point") return Property::boiling_point;
  if (name == "pc" || name == "critical-pressure") return Property::critical_pressure;
  if (name == "eta" || name == "viscosity") return Property::viscosity;
  if (name == "tpsa") return Property::tpsa;
  throw std::invalid_argument("unknown property '" + std::string(name) + "'");
}

std::string_view property_name(Property p) {
  switch (p) {
    case Property::boiling_point: return "tb";
    case Property::critical_pressure: return "pc";
    case Property::viscosity: return "eta";
    case Property::tpsa: return "tpsa";
  }
  return "?";
}

double evaluate(Property p, const MoleculeGraph& mol) {
  switch (p) {
    case Property::boiling_point: return joback_tb(classify_fragments(mol));
    case Property::critical_pressure: return joback_pc(classify_fragments(mol), atom_count(mol));
    case Property::viscosity: return joback_eta(classify_fragments(mol), molecular_weight(mol));
    case Property::tpsa: return tpsa(mol);
  }
  throw std::invalid_argument("evaluate: unknown property");
}

Grammar grammar_for(Property p) {
  return p == Property::viscosity ? Grammar::viscosity_restricted() : Grammar::standard();
}

}  // namespace maxbandit
