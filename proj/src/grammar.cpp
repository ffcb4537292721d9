#include "maxbandit/grammar.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace maxbandit {
namespace {

constexpr std::array<std::string_view, 4> kStartRules = {
    "C(X)(Y)(Y)(Y)", "C(=O)(Y)(Y)", "C(Y)C(Y)(=C(Y)C(Y))", "C(=O)(O(Y))(Y)"};
constexpr std::array<std::string_view, 10> kXRules = {
    "[H]", "F", "Cl", "Br", "C(X)(Y)(Y)", "O(Y)", "N(Y)(Y)", "C(=O)(Y)", "C(Y)(=C(Y)(Y))",
    "C(=O)(O(Y))"};
constexpr std::array<std::string_view, 8> kYRules = {
    "[H]", "F", "Cl", "Br", "C(X)(Y)(Y)", "C(=O)(Y)", "C(Y)(=C(Y)(Y))", "C(=O)(O(Y))"};

std::size_t slot(Nonterminal n) { return static_cast<std::size_t>(n); }

}  // namespace

char nonterminal_symbol(Nonterminal n) {
  switch (n) {
    case Nonterminal::S: return 'S';
    case Nonterminal::X: return 'X';
    case Nonterminal::Y: return 'Y';
  }
  return '?';
}

int alphabet_count(std::string_view terminals) {
  int count = 0;
  for (char ch : terminals) {
    // "Cl" and "Br" are two letters each, so plain letter counting already works.
    if (std::isalpha(static_cast<unsigned char>(ch))) ++count;
  }
  return count;
}

Production Production::parse(Nonterminal lhs, std::string_view rhs) {
  Production p;
  p.lhs = lhs;
  p.text = std::string(rhs);
  std::vector<int> branches;
  int current = -1;
  int order = 1;
  std::string pending;
  auto flush = [&] {
    if (!pending.empty()) {
      p.pieces.push_back({true, pending, {}, -1});
      pending.clear();
    }
  };
  auto add_atom = [&](Element e) {
    const int id = static_cast<int>(p.atoms.size());
    p.atoms.push_back(e);
    p.bonds.push_back({current, id, order});
    current = id;
    order = 1;
  };
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const char ch = rhs[i];
    switch (ch) {
      case '(':
        branches.push_back(current);
        pending += ch;
        break;
      case ')':
        if (branches.empty()) throw std::invalid_argument("unbalanced ')' in " + p.text);
        current = branches.back();
        branches.pop_back();
        pending += ch;
        break;
      case '=':
        order = 2;
        pending += ch;
        break;
      case '[':
        if (rhs.substr(i, 3) != "[H]") throw std::invalid_argument("unsupported bracket atom in " + p.text);
        p.hydrogen_anchors.push_back(current);
        pending += "[H]";
        i += 2;
        break;
      case 'X':
      case 'Y':
        if (order != 1) throw std::invalid_argument("double bond to a slot in " + p.text);
        flush();
        p.pieces.push_back({false, {}, ch == 'X' ? Nonterminal::X : Nonterminal::Y, current});
        break;
      case 'C':
        if (i + 1 < rhs.size() && rhs[i + 1] == 'l') {
          add_atom(Element::Cl);
          pending += "Cl";
          ++i;
        } else {
          add_atom(Element::C);
          pending += ch;
        }
        break;
      case 'B':
        if (i + 1 >= rhs.size() || rhs[i + 1] != 'r') throw std::invalid_argument("bad token in " + p.text);
        add_atom(Element::Br);
        pending += "Br";
        ++i;
        break;
      case 'N': add_atom(Element::N); pending += ch; break;
      case 'O': add_atom(Element::O); pending += ch; break;
      case 'F': add_atom(Element::F); pending += ch; break;
      default:
        throw std::invalid_argument(std::string("unexpected '") + ch + "' in " + p.text);
    }
  }
  if (!branches.empty()) throw std::invalid_argument("unbalanced '(' in " + p.text);
  flush();
  for (const auto& piece : p.pieces) {
    if (piece.terminal) p.letters += alphabet_count(piece.text);
  }
  return p;
}

Nonterminal DerivationState::pending() const {
  if (stack_.empty()) throw std::logic_error("DerivationState::pending: derivation is complete");
  return stack_.back().piece->symbol;
}

std::string DerivationState::sentential_form() const {
  std::string out = prefix_;
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
    if (it->piece->terminal) {
      out += it->piece->text;
    } else {
      out += nonterminal_symbol(it->piece->symbol);
    }
  }
  return out;
}

void DerivationState::drain_terminals() {
  while (!stack_.empty() && stack_.back().piece->terminal) {
    prefix_ += stack_.back().piece->text;
    stack_.pop_back();
  }
}

Grammar Grammar::standard() {
  Grammar g;
  auto add = [&](Nonterminal lhs, std::string_view rhs) {
    g.rules_[slot(lhs)].push_back(g.productions_.size());
    g.productions_.push_back(Production::parse(lhs, rhs));
  };
  for (auto r : kStartRules) add(Nonterminal::S, r);
  for (auto r : kXRules) add(Nonterminal::X, r);
  for (auto r : kYRules) add(Nonterminal::Y, r);
  for (Nonterminal n : {Nonterminal::X, Nonterminal::Y}) {
    g.terminal_only_[slot(n)] = {g.terminator(n)};
  }
  return g;
}

Grammar Grammar::restricted(const std::function<bool(const Production&)>& keep) {
  Grammar g = standard();
  for (auto& list : g.rules_) {
    std::vector<std::size_t> kept;
    for (std::size_t idx : list) {
      const auto& p = g.productions_[idx];
      if (p.text == "[H]" || keep(p)) kept.push_back(idx);
    }
    list = std::move(kept);
  }
  if (g.rules_[slot(Nonterminal::S)].empty()) {
    throw std::invalid_argument("Grammar::restricted: no start productions left");
  }
  return g;
}

Grammar Grammar::viscosity_restricted() {
  return restricted([](const Production& p) {
    return p.text.find('F') == std::string::npos && p.text.find('N') == std::string::npos &&
           p.text.find("=C") == std::string::npos;
  });
}

std::span<const std::size_t> Grammar::rules(Nonterminal n) const { return rules_[slot(n)]; }

std::size_t Grammar::terminator(Nonterminal n) const {
  if (n == Nonterminal::S) throw std::invalid_argument("Grammar::terminator: S has no [H] rule");
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    if (productions_[i].lhs == n && productions_[i].text == "[H]") return i;
  }
  throw std::logic_error("Grammar::terminator: missing [H] rule");
}

DerivationState Grammar::start() const {
  static const Production::Piece start_piece{false, {}, Nonterminal::S, -1};
  DerivationState state;
  state.stack_.push_back({&start_piece, -1});
  return state;
}

std::span<const std::size_t> Grammar::legal_productions(const DerivationState& state) const {
  const Nonterminal n = state.pending();
  if (n != Nonterminal::S && state.letters_ > kLetterLimit) return terminal_only_[slot(n)];
  return rules_[slot(n)];
}

void Grammar::apply(DerivationState& state, std::size_t index) const {
  const auto legal = legal_productions(state);
  bool ok = false;
  for (std::size_t idx : legal) ok = ok || idx == index;
  if (!ok) throw std::invalid_argument("Grammar::apply: production not legal here");

  const Production& p = productions_[index];
  const int parent = state.stack_.back().parent_atom;
  state.stack_.pop_back();

  auto& graph = state.graph_;
  const int base = graph.heavy_atom_count();
  auto resolve = [&](int local) { return local < 0 ? parent : base + local; };
  for (Element e : p.atoms) graph.add_atom(e);
  for (const auto& b : p.bonds) {
    const int from = resolve(b.from);
    if (from >= 0) graph.add_bond(from, base + b.to, b.order);
  }
  for (int anchor : p.hydrogen_anchors) {
    const int atom = resolve(anchor);
    if (atom < 0) throw std::logic_error("Grammar::apply: hydrogen without an atom");
    graph.add_hydrogens(atom);
  }
  for (auto it = p.pieces.rbegin(); it != p.pieces.rend(); ++it) {
    state.stack_.push_back({&*it, resolve(it->anchor)});
  }
  state.letters_ += p.letters;
  ++state.depth_;
  state.drain_terminals();
}

DerivationState Grammar::apply_production(DerivationState state, std::size_t index) const {
  apply(state, index);
  return state;
}

Molecule Grammar::finalize(const DerivationState& state) const {
  if (!state.complete()) {
    throw std::logic_error("Grammar::finalize: pending symbols in " + state.sentential_form());
  }
  Molecule mol{state.graph(), state.prefix()};
  mol.graph.fill_implicit_hydrogens();
  const auto problems = mol.graph.valence_violations();
  if (!problems.empty()) {
    throw std::logic_error("Grammar::finalize: " + mol.smiles + ": " + problems.front());
  }
  if (!mol.graph.acyclic()) throw std::logic_error("Grammar::finalize: " + mol.smiles + " is not a tree");
  return mol;
}

}  // namespace maxbandit
