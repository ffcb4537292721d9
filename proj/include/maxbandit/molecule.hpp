#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxbandit {

enum class Element : std::uint8_t { C, N, O, F, Cl, Br };

std::string_view element_symbol(Element e);
int standard_valence(Element e);
/// Standard atomic weight in g/mol.
double atomic_mass(Element e);
inline constexpr double kHydrogenMass = 1.008;

struct Atom {
  Element element = Element::C;
  int hydrogens = 0;
};

struct Bond {
  int a = 0;
  int b = 0;
  int order = 1;
};

/// Heavy-atom graph with hydrogen counts stored on the atoms.
class MoleculeGraph {
 public:
  struct Neighbor {
    int atom;
    int order;
  };

  int add_atom(Element e);
  void add_bond(int a, int b, int order);
  void add_hydrogens(int atom, int count = 1);

  /// Adds the implicit hydrogens of unbracketed organic-subset atoms: each atom
  /// is completed to its standard valence. Throws std::logic_error if an atom
  /// already exceeds it.
  void fill_implicit_hydrogens();

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(int atom) const { return adjacency_.at(atom); }
  const Atom& atom(int index) const { return atoms_.at(index); }

  /// Sum of bond orders to heavy neighbours.
  int bond_order_sum(int atom) const;
  int double_bond_count(int atom) const;
  int heavy_atom_count() const { return static_cast<int>(atoms_.size()); }
  int hydrogen_count() const;

  /// Human-readable description of every atom whose bonds plus hydrogens differ
  /// from its standard valence. Empty for a valid molecule.
  std::vector<std::string> valence_violations() const;
  bool connected() const;
  bool acyclic() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

}  // namespace maxbandit
