// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace spre {

// Symbols.

SymbolId SymbolTable::intern(const FormulaPtr& formula) {
  if (auto id = find(*formula)) return *id;
  formulas_.push_back(formula);
  keys_.push_back(to_string(*formula));
  return static_cast<SymbolId>(formulas_.size() - 1);
}

std::optional<SymbolId> SymbolTable::find(const SpatialFormula& formula) const {
  const std::string key = to_string(formula);
  for (std::size_t i = 0; i < formulas_.size(); ++i) {
    if (keys_[i] == key && *formulas_[i] == formula) return static_cast<SymbolId>(i);
  }
  return std::nullopt;
}

namespace {

void collect(const RegexNode& r, SymbolTable& table) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, regex::Leaf>) {
          table.intern(n.formula);
        } else if constexpr (std::is_same_v<T, regex::Alternation> ||
                             std::is_same_v<T, regex::Concatenation>) {
          collect(*n.lhs, table);
          collect(*n.rhs, table);
        } else if constexpr (std::is_same_v<T, regex::KleeneStar> || std::is_same_v<T, regex::Range>) {
          collect(*n.inner, table);
        }
      },
      r.node);
}

}  // namespace

SymbolTable collect_symbols(const QueryAst& ast) {
  SymbolTable table;
  if (ast.root) collect(*ast.root, table);
  return table;
}

// Automaton.

SpatialAutomaton::SpatialAutomaton(std::size_t symbol_count, StateId start,
                                   std::vector<std::vector<Edge>> edges, std::vector<bool> accepting)
  : symbol_count_(symbol_count), start_(start), edges_(std::move(edges)), accepting_(std::move(accepting)) {
  const std::size_t n = edges_.size();
  for (auto& out : edges_) {
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.symbol < b.symbol; });
  }
  // Co-reachability of an accepting state, by backward search.
  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s) {
    for (const auto& e : edges_[s]) preds[e.to].push_back(s);
  }
  dead_.assign(n, true);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    if (accepting_[s]) {
      dead_[s] = false;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s]) {
      if (dead_[p]) {
        dead_[p] = false;
        stack.push_back(p);
      }
    }
  }
}

std::vector<Transition> SpatialAutomaton::transitions() const {
  std::vector<Transition> out;
  for (StateId s = 0; s < edges_.size(); ++s) {
    for (const auto& e : edges_[s]) out.push_back(Transition{s, e.symbol, e.to});
  }
  return out;
}

std::size_t SpatialAutomaton::transition_count() const {
  std::size_t n = 0;
  for (const auto& out : edges_) n += out.size();
  return n;
}

bool SpatialAutomaton::accepts_symbols(std::span<const SymbolId> word) const {
  if (edges_.empty()) return false;
  StateId s = start_;
  for (SymbolId a : word) {
    const auto& out = edges_[s];
    auto it = std::lower_bound(out.begin(), out.end(), a,
                               [](const Edge& e, SymbolId x) { return e.symbol < x; });
    if (it == out.end() || it->symbol != a) return false;
    s = it->to;
  }
  return accepting_[s];
}

bool SpatialAutomaton::accepts(std::span<const SymbolBitmap> word) const {
  if (edges_.empty()) return false;
  ActiveSet active(*this);
  for (const auto& frame : word) {
    active.step(frame);
    if (active.all_dead()) return false;
  }
  return active.any_accepting();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string SpatialAutomaton::to_dot(const SymbolTable* symbols) const {
  std::string out = "digraph spre {\n  rankdir=LR;\n  node [shape=circle];\n  init [shape=point];\n";
  for (StateId s = 0; s < edges_.size(); ++s) {
    out += "  q" + std::to_string(s);
    if (accepting_[s]) out += " [shape=doublecircle]";
    out += ";\n";
  }
  if (!edges_.empty()) out += "  init -> q" + std::to_string(start_) + ";\n";
  for (const auto& t : transitions()) {
    std::string label = symbols && t.symbol < symbols->size()
                            ? "[" + to_string(*(*symbols)[t.symbol]) + "]"
                            : "s" + std::to_string(t.symbol);
    out += "  q" + std::to_string(t.from) + " -> q" + std::to_string(t.to) + " [label=\"" +
           dot_escape(label) + "\"];\n";
  }
  return out + "}\n";
}

ActiveSet::ActiveSet(const SpatialAutomaton& automaton)
  : automaton_(&automaton), mark_(automaton.state_count(), 0) {
  reset();
}

void ActiveSet::reset() {
  states_.clear();
  if (automaton_->state_count() > 0 && !automaton_->dead(automaton_->start())) {
    states_.push_back(automaton_->start());
  }
}

void ActiveSet::step(const SymbolBitmap& frame) {
  if (++stamp_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    stamp_ = 1;
  }
  next_.clear();
  for (StateId s : states_) {
    for (const auto& e : automaton_->edges(s)) {
      if (frame.test(e.symbol) && mark_[e.to] != stamp_ && !automaton_->dead(e.to)) {
        mark_[e.to] = stamp_;
        next_.push_back(e.to);
      }
    }
  }
  states_.swap(next_);
}

bool ActiveSet::any_accepting() const {
  return std::any_of(states_.begin(), states_.end(), [&](StateId s) { return automaton_->accepting(s); });
}

// Compilation.

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Number of nodes the tree has once ranges are expanded.
std::uint64_t expanded_size(const RegexNode& r) {
  return std::visit(
      [](const auto& n) -> std::uint64_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, regex::Leaf> || std::is_same_v<T, regex::Epsilon>) {
          return 1;
        } else if constexpr (std::is_same_v<T, regex::Alternation> ||
                             std::is_same_v<T, regex::Concatenation>) {
          return sat_add(1, sat_add(expanded_size(*n.lhs), expanded_size(*n.rhs)));
        } else if constexpr (std::is_same_v<T, regex::KleeneStar>) {
          return sat_add(1, expanded_size(*n.inner));
        } else {
          const std::uint64_t q = expanded_size(*n.inner);
          if (!n.max) return sat_mul(sat_add(n.min, 1), sat_add(q, 1));
          // Copies summed over every repetition count m..n, plus joins.
          const std::uint64_t hi = *n.max;
          const std::uint64_t lo = n.min;
          if (hi < lo) throw CompileError("repetition range has max below min");
          const std::uint64_t copies = sat_mul(hi, hi + 1) / 2 - (lo == 0 ? 0 : lo * (lo - 1) / 2);
          return sat_add(sat_mul(copies, sat_add(q, 1)), hi - lo + 1);
        }
      },
      r.node);
}

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Nfa {
  struct State {
    std::vector<std::pair<SymbolId, std::uint32_t>> symbol_edges;
    std::vector<std::uint32_t> epsilon_edges;
  };
  std::vector<State> states;
  std::uint32_t start = kNone;
  std::uint32_t accept = kNone;

  Nfa reversed() const {
    Nfa out;
    out.states.resize(states.size());
    for (std::uint32_t s = 0; s < states.size(); ++s) {
      for (const auto& [sym, to] : states[s].symbol_edges) out.states[to].symbol_edges.emplace_back(sym, s);
      for (auto to : states[s].epsilon_edges) out.states[to].epsilon_edges.push_back(s);
    }
    out.start = accept;
    out.accept = start;
    return out;
  }
};

class Thompson {
public:
  Thompson(const SymbolTable& symbols, std::size_t limit) : symbols_(symbols), limit_(limit) {}

  Nfa build(const RegexNode& root) {
    auto [start, accept] = fragment(root);
    nfa_.start = start;
    nfa_.accept = accept;
    return std::move(nfa_);
  }

private:
  struct Fragment {
    std::uint32_t start, accept;
  };

  std::uint32_t add() {
    if (nfa_.states.size() >= limit_) {
      throw CompileError("query needs more than " + std::to_string(limit_) + " automaton states");
    }
    nfa_.states.emplace_back();
    return static_cast<std::uint32_t>(nfa_.states.size() - 1);
  }

  void eps(std::uint32_t from, std::uint32_t to) { nfa_.states[from].epsilon_edges.push_back(to); }

  SymbolId symbol_of(const FormulaPtr& f) {
    if (auto it = cache_.find(f.get()); it != cache_.end()) return it->second;
    auto id = symbols_.find(*f);
    if (!id) throw CompileError("leaf formula missing from the symbol table: " + to_string(*f));
    cache_.emplace(f.get(), *id);
    return *id;
  }

  Fragment fragment(const RegexNode& r) {
    return std::visit([this](const auto& n) { return build(n); }, r.node);
  }

  Fragment build(const regex::Leaf& n) {
    Fragment f{add(), add()};
    nfa_.states[f.start].symbol_edges.emplace_back(symbol_of(n.formula), f.accept);
    return f;
  }
  Fragment build(const regex::Epsilon&) {
    Fragment f{add(), add()};
    eps(f.start, f.accept);
    return f;
  }
  Fragment build(const regex::Concatenation& n) {
    Fragment a = fragment(*n.lhs);
    Fragment b = fragment(*n.rhs);
    eps(a.accept, b.start);
    return {a.start, b.accept};
  }
  Fragment build(const regex::Alternation& n) {
    Fragment a = fragment(*n.lhs);
    Fragment b = fragment(*n.rhs);
    Fragment f{add(), add()};
    eps(f.start, a.start);
    eps(f.start, b.start);
    eps(a.accept, f.accept);
    eps(b.accept, f.accept);
    return f;
  }
  Fragment build(const regex::KleeneStar& n) {
    Fragment a = fragment(*n.inner);
    Fragment f{add(), add()};
    eps(f.start, a.start);
    eps(f.start, f.accept);
    eps(a.accept, a.start);
    eps(a.accept, f.accept);
    return f;
  }
  Fragment build(const regex::Range&) {
    throw CompileError("repetition ranges must be expanded before compilation");
  }

  const SymbolTable& symbols_;
  std::size_t limit_;
  Nfa nfa_;
  std::unordered_map<const SpatialFormula*, SymbolId> cache_;
};

struct StateSetHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Dfa {
  std::size_t symbol_count = 0;
  std::vector<std::vector<SpatialAutomaton::Edge>> edges;
  std::vector<bool> accepting;
};

class SubsetConstruction {
public:
  SubsetConstruction(const Nfa& nfa, std::size_t symbol_count, std::size_t max_states)
    : nfa_(nfa), max_states_(max_states), mark_(nfa.states.size(), 0) {
    dfa_.symbol_count = symbol_count;
  }

  Dfa run() {
    intern(closure({nfa_.start}));
    for (std::size_t d = 0; d < sets_.size(); ++d) {
      std::vector<std::pair<SymbolId, std::uint32_t>> moves;
      for (auto s : sets_[d]) {
        const auto& out = nfa_.states[s].symbol_edges;
        moves.insert(moves.end(), out.begin(), out.end());
      }
      std::sort(moves.begin(), moves.end());
      for (std::size_t i = 0; i < moves.size();) {
        const SymbolId sym = moves[i].first;
        std::vector<std::uint32_t> seeds;
        for (; i < moves.size() && moves[i].first == sym; ++i) seeds.push_back(moves[i].second);
        StateId to = intern(closure(std::move(seeds)));
        dfa_.edges[d].push_back({sym, to});
      }
    }
    return std::move(dfa_);
  }

private:
  std::vector<std::uint32_t> closure(std::vector<std::uint32_t> stack) {
    if (++stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
    std::vector<std::uint32_t> out;
    for (auto s : stack) mark_[s] = stamp_;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      out.push_back(s);
      for (auto t : nfa_.states[s].epsilon_edges) {
        if (mark_[t] != stamp_) {
          mark_[t] = stamp_;
          stack.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  StateId intern(std::vector<std::uint32_t> set) {
    auto it = ids_.find(set);
    if (it != ids_.end()) return it->second;
    if (sets_.size() >= max_states_) {
      throw CompileError("automaton exceeds " + std::to_string(max_states_) + " states");
    }
    const auto id = static_cast<StateId>(sets_.size());
    dfa_.accepting.push_back(std::binary_search(set.begin(), set.end(), nfa_.accept));
    dfa_.edges.emplace_back();
    ids_.emplace(set, id);
    sets_.push_back(std::move(set));
    return id;
  }

  const Nfa& nfa_;
  std::size_t max_states_;
  Dfa dfa_;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::unordered_map<std::vector<std::uint32_t>, StateId, StateSetHash> ids_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

// Moore partition refinement over the completed automaton. Missing edges go
// to an explicit sink, whose class (the states with an empty language) is
// dropped from the result.
SpatialAutomaton minimize(const Dfa& dfa) {
  const std::size_t n = dfa.edges.size();
  const std::size_t k = dfa.symbol_count;
  const auto sink = static_cast<StateId>(n);
  std::vector<StateId> table((n + 1) * k, sink);
  for (StateId s = 0; s < n; ++s) {
    for (const auto& e : dfa.edges[s]) table[s * k + e.symbol] = e.to;
  }

  std::vector<std::uint32_t> cls(n + 1);
  for (StateId s = 0; s < n; ++s) cls[s] = dfa.accepting[s] ? 1 : 0;
  cls[sink] = 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n + 1);
    std::vector<std::uint32_t> signature(k + 1);
    for (StateId s = 0; s <= n; ++s) {
      signature[0] = cls[s];
      for (std::size_t a = 0; a < k; ++a) signature[a + 1] = cls[table[s * k + a]];
      auto [it, inserted] = ids.emplace(signature, static_cast<std::uint32_t>(ids.size()));
      next[s] = it->second;
    }
    cls.swap(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  const std::uint32_t dead = cls[sink];
  if (cls[0] == dead) {
    return SpatialAutomaton(k, 0, {{}}, {false});
  }

  // Number the surviving classes in breadth-first order from the start.
  std::vector<StateId> first_member(classes, kNone);
  for (StateId s = 0; s < n; ++s) {
    if (first_member[cls[s]] == kNone) first_member[cls[s]] = s;
  }
  std::vector<StateId> number(classes, kNone);
  std::vector<StateId> representative;
  std::deque<std::uint32_t> queue{cls[0]};
  number[cls[0]] = 0;
  representative.push_back(0);
  std::vector<std::vector<SpatialAutomaton::Edge>> edges;
  std::vector<bool> accepting;
  while (!queue.empty()) {
    const std::uint32_t c = queue.front();
    queue.pop_front();
    const StateId rep = representative[number[c]];
    std::vector<SpatialAutomaton::Edge> out;
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t target = cls[table[rep * k + a]];
      if (target == dead) continue;
      if (number[target] == kNone) {
        number[target] = static_cast<StateId>(representative.size());
        representative.push_back(first_member[target]);
        queue.push_back(target);
      }
      out.push_back({static_cast<SymbolId>(a), number[target]});
    }
    edges.push_back(std::move(out));
    accepting.push_back(dfa.accepting[rep]);
  }
  return SpatialAutomaton(k, 0, std::move(edges), std::move(accepting));
}

enum class Direction { Forward, Reverse };

SpatialAutomaton compile(const QueryAst& ast, const SymbolTable& symbols, const CompileOptions& options,
                         Direction direction) {
  if (!ast.root) throw CompileError("empty query");
  const std::size_t nfa_limit = options.max_states > kSaturated / 20 ? kSaturated : options.max_states * 20;
  const std::uint64_t estimate = expanded_size(*ast.root);
  if (estimate > nfa_limit / 2) {
    throw CompileError("query expands to about " + std::to_string(estimate) +
                       " nodes, beyond the automaton budget of " + std::to_string(options.max_states) +
                       " states");
  }
  QueryAst expanded = expand_ranges(ast);
  Nfa nfa = Thompson(symbols, nfa_limit).build(*expanded.root);
  if (direction == Direction::Reverse) nfa = nfa.reversed();
  Dfa dfa = SubsetConstruction(nfa, symbols.size(), options.max_states).run();
  return minimize(dfa);
}

std::optional<std::uint64_t> horizon_of(const RegexNode& r) {
  return std::visit(
      [](const auto& n) -> std::optional<std::uint64_t> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, regex::Leaf>) {
          return 1;
        } else if constexpr (std::is_same_v<T, regex::Epsilon>) {
          return 0;
        } else if constexpr (std::is_same_v<T, regex::Alternation>) {
          auto a = horizon_of(*n.lhs);
          auto b = horizon_of(*n.rhs);
          if (!a || !b) return std::nullopt;
          return std::max(*a, *b);
        } else if constexpr (std::is_same_v<T, regex::Concatenation>) {
          auto a = horizon_of(*n.lhs);
          auto b = horizon_of(*n.rhs);
          if (!a || !b) return std::nullopt;
          return sat_add(*a, *b);
        } else if constexpr (std::is_same_v<T, regex::KleeneStar>) {
          return std::nullopt;
        } else {
          if (!n.max) return std::nullopt;
          if (*n.max == 0) return 0;
          auto q = horizon_of(*n.inner);
          if (!q) return std::nullopt;
          return sat_mul(*n.max, *q);
        }
      },
      r.node);
}

}  // namespace

SpatialAutomaton compile_forward(const QueryAst& ast, const SymbolTable& symbols, const CompileOptions& options) {
  return compile(ast, symbols, options, Direction::Forward);
}

SpatialAutomaton compile_reverse(const QueryAst& ast, const SymbolTable& symbols, const CompileOptions& options) {
  return compile(ast, symbols, options, Direction::Reverse);
}

std::optional<std::uint64_t> horizon(const QueryAst& ast) {
  if (!ast.root) return 0;
  return horizon_of(*ast.root);
}

CompiledQuery compile_query(std::string_view text, const CompileOptions& options, bool with_reverse,
                            ParseOptions parse_options) {
  CompiledQuery q;
  q.text = std::string(text);
  q.ast = parse_query(text, &q.warnings, parse_options);
  auto problems = check_well_formed(q.ast);
  if (!problems.empty()) {
    std::string msg = "ill-formed query: " + problems.front().message;
    for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i].message;
    throw QueryError(msg);
  }
  q.symbols = collect_symbols(q.ast);
  q.forward = compile_forward(q.ast, q.symbols, options);
  if (with_reverse) q.reverse = compile_reverse(q.ast, q.symbols, options);
  q.horizon = horizon(q.ast);
  return q;
}

}  // namespace spre
