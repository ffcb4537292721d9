#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxbandit/molecule.hpp"

namespace maxbandit {

enum class Nonterminal : std::uint8_t { S, X, Y };

char nonterminal_symbol(Nonterminal n);

/// Letters in a SMILES terminal string. Explicit H counts, Br and Cl count two,
/// brackets, parentheses and '=' count nothing.
int alphabet_count(std::string_view terminals);

/// One right-hand side, parsed once into a graph gadget.
struct Production {
  struct Piece {
    bool terminal = true;
    std::string text;          ///< terminal text when `terminal`
    Nonterminal symbol{};      ///< pending symbol otherwise
    int anchor = -1;           ///< gadget atom the slot hangs off; -1 = parent atom
  };
  struct GadgetBond {
    int from;  ///< -1 = parent atom
    int to;
    int order;
  };

  Nonterminal lhs{};
  std::string text;                 ///< right-hand side, e.g. "C(X)(Y)(Y)"
  std::vector<Element> atoms;
  std::vector<GadgetBond> bonds;
  std::vector<int> hydrogen_anchors;  ///< one entry per "[H]"; -1 = parent atom
  std::vector<Piece> pieces;
  int letters = 0;

  /// Parses `rhs`. Throws std::invalid_argument on tokens outside the grammar's alphabet.
  static Production parse(Nonterminal lhs, std::string_view rhs);
};

class Grammar;

/// Sentential form under leftmost expansion: the emitted terminal prefix plus the
/// remaining symbols, together with the molecule built so far. Refers to the
/// productions of the grammar that created it, which must outlive it.
class DerivationState {
 public:
  bool complete() const { return stack_.empty(); }
  /// Leftmost pending symbol. Precondition: !complete().
  Nonterminal pending() const;
  /// Letters over every terminal fixed in the sentential form so far.
  int alphabet_count() const { return letters_; }
  const std::string& prefix() const { return prefix_; }
  /// Full sentential form with pending symbols written as S, X, Y.
  std::string sentential_form() const;
  const MoleculeGraph& graph() const { return graph_; }
  std::size_t depth() const { return depth_; }

 private:
  friend class Grammar;
  struct Item {
    const Production::Piece* piece;
    int parent_atom;  ///< graph atom a slot hangs off; -1 for the start symbol
  };

  void drain_terminals();

  std::string prefix_;
  std::vector<Item> stack_;  ///< back() is leftmost
  int letters_ = 0;
  std::size_t depth_ = 0;
  MoleculeGraph graph_;
};

struct Molecule {
  MoleculeGraph graph;
  std::string smiles;
};

class Grammar {
 public:
  /// All productions of the SMILES grammar.
  static Grammar standard();
  /// Productions containing F, N or "=C" removed, for viscosity runs.
  static Grammar viscosity_restricted();

  /// Grammar restricted to productions for which `keep` returns true. The
  /// terminating "[H]" productions are always kept.
  static Grammar restricted(const std::function<bool(const Production&)>& keep);

  std::span<const Production> productions() const { return productions_; }
  const Production& production(std::size_t index) const { return productions_.at(index); }
  /// Production indices available for `n`, in declaration order.
  std::span<const std::size_t> rules(Nonterminal n) const;
  /// Index of the "[H]" production of X or Y.
  std::size_t terminator(Nonterminal n) const;

  /// Above this many letters only "[H]" may be chosen for X and Y.
  static constexpr int kLetterLimit = 40;

  DerivationState start() const;
  /// Productions offered at the leftmost pending symbol. Precondition: !state.complete().
  std::span<const std::size_t> legal_productions(const DerivationState& state) const;
  /// Expands the leftmost pending symbol with production `index` in place.
  /// Throws std::invalid_argument if it is not legal there.
  void apply(DerivationState& state, std::size_t index) const;
  DerivationState apply_production(DerivationState state, std::size_t index) const;

  /// Completes hydrogens and audits the graph. Throws std::logic_error if the
  /// derivation is incomplete or the graph is not a valid acyclic molecule.
  Molecule finalize(const DerivationState& state) const;

  Grammar(const Grammar&) = delete;
  Grammar& operator=(const Grammar&) = delete;
  Grammar(Grammar&&) = default;
  Grammar& operator=(Grammar&&) = default;

 private:
  Grammar() = default;
  std::vector<Production> productions_;
  std::vector<std::size_t> rules_[3];
  std::vector<std::size_t> terminal_only_[3];
};

}  // namespace maxbandit
