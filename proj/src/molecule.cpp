#include "maxbandit/molecule.hpp"

#include <algorithm>
#include <stdexcept>

namespace maxbandit {

std::string_view element_symbol(Element e) {
  switch (e) {
    case Element::C: return "C";
    case Element::N: return "N";
    case Element::O: return "O";
    case Element::F: return "F";
    case Element::Cl: return "Cl";
    case Element::Br: return "Br";
  }
  return "?";
}

int standard_valence(Element e) {
  switch (e) {
    case Element::C: return 4;
    case Element::N: return 3;
    case Element::O: return 2;
    case Element::F:
    case Element::Cl:
    case Element::Br: return 1;
  }
  return 0;
}

double atomic_mass(Element e) {
  switch (e) {
    case Element::C: return 12.011;
    case Element::N: return 14.007;
    case Element::O: return 15.999;
    case Element::F: return 18.998;
    case Element::Cl: return 35.453;
    case Element::Br: return 79.904;
  }
  return 0.0;
}

int MoleculeGraph::add_atom(Element e) {
  atoms_.push_back(Atom{e, 0});
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

void MoleculeGraph::add_bond(int a, int b, int order) {
  const int n = static_cast<int>(atoms_.size());
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw std::out_of_range("MoleculeGraph::add_bond: bad atom index");
  }
  if (order < 1 || order > 2) throw std::invalid_argument("MoleculeGraph::add_bond: bad order");
  bonds_.push_back(Bond{a, b, order});
  adjacency_[a].push_back({b, order});
  adjacency_[b].push_back({a, order});
}

void MoleculeGraph::add_hydrogens(int atom, int count) { atoms_.at(atom).hydrogens += count; }

int MoleculeGraph::bond_order_sum(int atom) const {
  int total = 0;
  for (const auto& nb : adjacency_.at(atom)) total += nb.order;
  return total;
}

int MoleculeGraph::double_bond_count(int atom) const {
  int total = 0;
  for (const auto& nb : adjacency_.at(atom)) total += nb.order == 2 ? 1 : 0;
  return total;
}

int MoleculeGraph::hydrogen_count() const {
  int total = 0;
  for (const auto& a : atoms_) total += a.hydrogens;
  return total;
}

void MoleculeGraph::fill_implicit_hydrogens() {
  for (int i = 0; i < heavy_atom_count(); ++i) {
    const int missing = standard_valence(atoms_[i].element) - bond_order_sum(i) - atoms_[i].hydrogens;
    if (missing < 0) {
      throw std::logic_error("atom " + std::to_string(i) + " (" +
                             std::string(element_symbol(atoms_[i].element)) +
                             ") exceeds its valence");
    }
    atoms_[i].hydrogens += missing;
  }
}

std::vector<std::string> MoleculeGraph::valence_violations() const {
  std::vector<std::string> out;
  for (int i = 0; i < heavy_atom_count(); ++i) {
    const int used = bond_order_sum(i) + atoms_[i].hydrogens;
    const int valence = standard_valence(atoms_[i].element);
    if (used != valence) {
      out.push_back("atom " + std::to_string(i) + " " +
                    std::string(element_symbol(atoms_[i].element)) + ": " +
                    std::to_string(used) + " bonds, valence " + std::to_string(valence));
    }
  }
  return out;
}

bool MoleculeGraph::connected() const {
  if (atoms_.empty()) return true;
  std::vector<bool> seen(atoms_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (const auto& nb : adjacency_[a]) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = true;
        ++reached;
        stack.push_back(nb.atom);
      }
    }
  }
  return reached == atoms_.size();
}

bool MoleculeGraph::acyclic() const {
  // A connected graph is a tree iff it has exactly V - 1 edges.
  return connected() && bonds_.size() + 1 == std::max<std::size_t>(atoms_.size(), 1);
}

}  // namespace maxbandit
