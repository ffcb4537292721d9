#include "smiles_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {
namespace {

int normal_valence(const std::string& el) {
  if (el == "C") return 4;
  if (el == "N") return 3;
  if (el == "O") return 2;
  return 1;
}

struct GroupData {
  double tb, pc, eta_a, eta_b;
  bool has_eta;
};

// Joback & Reid (1987) non-ring increments, typed in independently of data/.
const std::map<std::string, GroupData>& group_data() {
  static const std::map<std::string, GroupData> d = {
      {"-CH3", {23.58, -0.0012, 548.29, -1.719, true}},
      {">CH2", {22.88, 0.0, 94.16, -0.199, true}},
      {">CH-", {21.74, 0.0020, -322.15, 1.187, true}},
      {">C<", {18.25, 0.0043, -573.56, 2.307, true}},
      {"=CH2", {18.18, -0.0028, 495.01, -1.539, true}},
      {"=CH-", {24.96, -0.0006, 82.28, -0.242, true}},
      {"=C<", {24.14, 0.0011, 0, 0, false}},
      {"-F", {-0.03, -0.0057, 0, 0, false}},
      {"-Cl", {38.13, -0.0049, 625.45, -1.814, true}},
      {"-Br", {66.86, 0.0057, 738.91, -2.038, true}},
      {"-OH", {92.88, 0.0112, 2173.72, -5.057, true}},
      {"-O-", {22.42, 0.0015, 122.09, -0.386, true}},
      {">C=O", {76.75, 0.0031, 340.35, -0.350, true}},
      {"O=CH-", {72.24, 0.0030, 740.92, -1.713, true}},
      {"-COOH", {169.09, 0.0077, 1317.23, -2.578, true}},
      {"-COO-", {81.10, 0.0005, 483.88, -0.966, true}},
      {"-NH2", {73.23, 0.0109, 0, 0, false}},
      {">NH", {50.17, 0.0077, 0, 0, false}},
      {">N-", {11.74, 0.0074, 0, 0, false}},
  };
  return d;
}

}  // namespace

int ParsedMolecule::valence_sum(int i) const {
  int s = atoms[i].hydrogens;
  for (int o : atoms[i].orders) s += o;
  return s;
}

int ParsedMolecule::double_bonds(int i) const {
  int n = 0;
  for (int o : atoms[i].orders) n += o == 2;
  return n;
}

ParsedMolecule parse_smiles(const std::string& s) {
  ParsedMolecule mol;
  std::vector<int> stack;
  int prev = -1;
  int bond = 1;
  std::size_t i = 0;
  auto add = [&](const std::string& el) {
    mol.atoms.push_back({el, 0, {}, {}});
    const int id = static_cast<int>(mol.atoms.size()) - 1;
    if (prev >= 0) {
      mol.atoms[prev].neighbors.push_back(id);
      mol.atoms[prev].orders.push_back(bond);
      mol.atoms[id].neighbors.push_back(prev);
      mol.atoms[id].orders.push_back(bond);
    } else if (bond != 1) {
      throw std::runtime_error("bond without a left atom");
    }
    bond = 1;
    prev = id;
  };
  while (i < s.size()) {
    if (s.compare(i, 3, "[H]") == 0) {
      if (prev < 0 || bond != 1) throw std::runtime_error("dangling [H]");
      mol.atoms[prev].hydrogens += 1;
      i += 3;
    } else if (s.compare(i, 2, "Cl") == 0) {
      add("Cl");
      i += 2;
    } else if (s.compare(i, 2, "Br") == 0) {
      add("Br");
      i += 2;
    } else if (s[i] == 'C' || s[i] == 'N' || s[i] == 'O' || s[i] == 'F') {
      add(std::string(1, s[i]));
      ++i;
    } else if (s[i] == '(') {
      stack.push_back(prev);
      ++i;
    } else if (s[i] == ')') {
      if (stack.empty()) throw std::runtime_error("unbalanced )");
      prev = stack.back();
      stack.pop_back();
      ++i;
    } else if (s[i] == '=') {
      bond = 2;
      ++i;
    } else {
      throw std::runtime_error(std::string("unexpected character ") + s[i]);
    }
  }
  if (!stack.empty()) throw std::runtime_error("unbalanced (");
  // Only unbracketed carbons of C=C-free chain ends need implicit hydrogens in
  // this subset, but fill every atom the way a SMILES reader would.
  for (std::size_t a = 0; a < mol.atoms.size(); ++a) {
    const int missing = normal_valence(mol.atoms[a].element) - mol.valence_sum(static_cast<int>(a));
    if (missing < 0) throw std::runtime_error("over-bonded atom in " + s);
    mol.atoms[a].hydrogens += missing;
  }
  return mol;
}

std::map<std::string, int> joback_groups(const ParsedMolecule& mol) {
  std::map<std::string, int> out;
  const int n = static_cast<int>(mol.atoms.size());
  if (n == 1 && mol.atoms[0].element == "C") {
    out["CH4"] = 1;
    return out;
  }
  std::vector<std::string> owner(n);
  // Oxygen-first pass: every C=O oxygen names its carbon as a carbonyl site.
  std::vector<int> carbonyl_carbons;
  for (int a = 0; a < n; ++a) {
    if (mol.atoms[a].element != "O") continue;
    for (std::size_t k = 0; k < mol.atoms[a].neighbors.size(); ++k) {
      if (mol.atoms[a].orders[k] == 2) {
        carbonyl_carbons.push_back(mol.atoms[a].neighbors[k]);
        owner[a] = "carbonyl-O";
      }
    }
  }
  std::sort(carbonyl_carbons.begin(), carbonyl_carbons.end());
  for (int c : carbonyl_carbons) {
    std::string group;
    int partner = -1;
    // Acid first: an -OH on the carbonyl carbon.
    for (std::size_t k = 0; k < mol.atoms[c].neighbors.size() && group.empty(); ++k) {
      const int o = mol.atoms[c].neighbors[k];
      if (mol.atoms[o].element == "O" && mol.atoms[c].orders[k] == 1 && mol.atoms[o].hydrogens == 1) {
        group = "-COOH";
        partner = o;
      }
    }
    for (std::size_t k = 0; k < mol.atoms[c].neighbors.size() && group.empty(); ++k) {
      const int o = mol.atoms[c].neighbors[k];
      if (mol.atoms[o].element == "O" && mol.atoms[c].orders[k] == 1 && owner[o].empty()) {
        group = "-COO-";
        partner = o;
      }
    }
    if (group.empty()) group = mol.atoms[c].hydrogens >= 1 ? "O=CH-" : ">C=O";
    owner[c] = group;
    if (partner >= 0) owner[partner] = group;
    out[group] += 1;
  }
  for (int a = 0; a < n; ++a) {
    if (!owner[a].empty()) continue;
    const auto& at = mol.atoms[a];
    const int h = at.hydrogens;
    std::string g;
    if (at.element == "C") {
      if (mol.double_bonds(a) > 0) {
        static const char* names[] = {"=C<", "=CH-", "=CH2"};
        if (h > 2) throw std::runtime_error("=CH3?");
        g = names[h];
      } else {
        static const char* names[] = {">C<", ">CH-", ">CH2", "-CH3"};
        if (h > 3) throw std::runtime_error("CH4 fragment in a larger molecule");
        g = names[h];
      }
    } else if (at.element == "O") {
      g = h == 1 ? "-OH" : "-O-";
    } else if (at.element == "N") {
      static const char* names[] = {">N-", ">NH", "-NH2"};
      g = names[h];
    } else {
      g = "-" + at.element;
    }
    out[g] += 1;
  }
  return out;
}

double hand_tb(const std::map<std::string, int>& groups) {
  double t = 198.2;
  for (const auto& [g, c] : groups) {
    if (g != "CH4") t += c * group_data().at(g).tb;
  }
  return t;
}

double hand_pc(const std::map<std::string, int>& groups, int atoms) {
  double s = 0.113 + 0.0032 * atoms;
  for (const auto& [g, c] : groups) {
    if (g != "CH4") s += c * group_data().at(g).pc;
  }
  return std::pow(s, -2.0);
}

double hand_eta(const std::map<std::string, int>& groups, double molar_mass) {
  double a = 0.0, b = 0.0;
  for (const auto& [g, c] : groups) {
    if (g == "CH4") continue;
    const auto& d = group_data().at(g);
    if (!d.has_eta) throw std::runtime_error("no viscosity data for " + g);
    a += c * d.eta_a;
    b += c * d.eta_b;
  }
  return molar_mass * std::exp((a - 597.82) / 300.0 + b - 11.202);
}

double hand_tpsa(const ParsedMolecule& mol) {
  double t = 0.0;
  for (int a = 0; a < static_cast<int>(mol.atoms.size()); ++a) {
    const auto& at = mol.atoms[a];
    if (at.element == "O") {
      if (mol.double_bonds(a) == 1) t += 17.07;
      else if (at.hydrogens == 1) t += 20.23;
      else t += 9.23;
    } else if (at.element == "N") {
      static const double v[] = {3.24, 12.03, 26.02};
      t += v[at.hydrogens];
    }
  }
  return t;
}

double hand_mass(const ParsedMolecule& mol) {
  static const std::map<std::string, double> m = {{"C", 12.011}, {"N", 14.007}, {"O", 15.999},
                                                  {"F", 18.998}, {"Cl", 35.453}, {"Br", 79.904}};
  double total = 0.0;
  for (const auto& a : mol.atoms) total += m.at(a.element) + 1.008 * a.hydrogens;
  return total;
}

int hand_atom_count(const ParsedMolecule& mol) {
  int n = 0;
  for (const auto& a : mol.atoms) n += 1 + a.hydrogens;
  return n;
}

int count_substring(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + needle.size())) ++n;
  return n;
}

}  // namespace oracle
