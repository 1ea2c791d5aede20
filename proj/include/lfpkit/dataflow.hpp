#ifndef LFPKIT_DATAFLOW_HPP
#define LFPKIT_DATAFLOW_HPP

#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lfpkit/aid.hpp"
#include "lfpkit/engine.hpp"
#include "lfpkit/errors.hpp"
#include "lfpkit/lattice.hpp"

namespace lfpkit {

/// A control-flow graph with gen/kill sets per node. A definition name
/// identifies one assignment site, so it is generated by exactly one node;
/// kill sets may name any definition.
struct ControlFlowGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t entry = 0;
  std::vector<std::vector<std::string>> gen;   // per node, definition names
  std::vector<std::vector<std::string>> kill;  // per node, definition names
};

/// A reaching fact: (defining node index, definition name).
using Fact = std::pair<std::size_t, std::string>;

struct DataflowSolution {
  std::vector<std::set<Fact>> in_sets;  // per node
  friend bool operator==(const DataflowSolution&, const DataflowSolution&) = default;
};

namespace detail {

inline void check_cfg(const ControlFlowGraph& cfg) {
  if (cfg.nodes.empty()) throw ValidationError("cfg has no nodes");
  if (cfg.entry >= cfg.nodes.size())
    throw ValidationError("entry is not a known node");
  for (auto [a, b] : cfg.edges)
    if (a >= cfg.nodes.size() || b >= cfg.nodes.size())
      throw ValidationError("edge references an unknown node");
  std::set<std::string> seen;
  for (const auto& g : cfg.gen)
    for (const auto& d : g)
      if (!seen.insert(d).second)
        throw ValidationError("definition '" + d +
                              "' is generated at more than one node");
}

/// Definition names in first-seen node order, and their defining nodes.
inline std::vector<std::pair<std::string, std::size_t>> definitions(
    const ControlFlowGraph& cfg) {
  std::vector<std::pair<std::string, std::size_t>> defs;
  for (std::size_t n = 0; n < cfg.nodes.size(); ++n)
    for (const auto& d : cfg.gen[n]) defs.emplace_back(d, n);
  return defs;
}

}  // namespace detail

/// Classical forward may-analysis: out(n) = gen(n) union (in(n) - kill(n)),
/// in(n) = union of predecessor outs, worklist to fixpoint.
inline DataflowSolution worklist_solve(const ControlFlowGraph& cfg) {
  detail::check_cfg(cfg);
  const std::size_t n = cfg.nodes.size();

  std::vector<std::set<Fact>> gen_facts(n), in(n), out(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& d : cfg.gen[v]) gen_facts[v].insert({v, d});

  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : cfg.edges) succ[a].push_back(b);

  auto killed = [&](std::size_t v, const Fact& f) {
    return std::find(cfg.kill[v].begin(), cfg.kill[v].end(), f.second) !=
           cfg.kill[v].end();
  };

  std::deque<std::size_t> work;
  for (std::size_t v = 0; v < n; ++v) work.push_back(v);
  std::vector<char> queued(n, 1);
  while (!work.empty()) {
    const std::size_t v = work.front();
    work.pop_front();
    queued[v] = 0;
    std::set<Fact> o = gen_facts[v];
    for (const auto& f : in[v])
      if (!killed(v, f)) o.insert(f);
    if (o == out[v]) continue;
    out[v] = std::move(o);
    for (std::size_t w : succ[v]) {
      const std::size_t before = in[w].size();
      in[w].insert(out[v].begin(), out[v].end());
      if (in[w].size() != before && !queued[w]) {
        queued[w] = 1;
        work.push_back(w);
      }
    }
  }
  return {std::move(in)};
}

/// Reaching definitions as an abstract inductive definition on the powerset
/// of atoms (node, definition): an atom (n, d) says a definition of d
/// reaches the entry of n.
struct RdEncoding {
  std::shared_ptr<const Lattice> lattice;
  InductiveDefinition phi;
  // atom position -> (reached node, definition name index)
  std::vector<std::pair<std::size_t, std::size_t>> atoms;
  std::vector<std::pair<std::string, std::size_t>> defs;  // name, defining node
};

inline RdEncoding rd_aid(const ControlFlowGraph& cfg) {
  detail::check_cfg(cfg);
  const auto defs = detail::definitions(cfg);
  const std::size_t n = cfg.nodes.size(), nd = defs.size();
  if (n * nd > 16)
    throw SizeLimitExceeded("fact space limited to 16 atoms");

  std::vector<std::pair<std::size_t, std::size_t>> atoms;
  std::vector<std::string> atom_names;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t d = 0; d < nd; ++d) {
      atoms.emplace_back(v, d);
      atom_names.push_back(cfg.nodes[v] + "." + defs[d].first);
    }
  auto atom_id = [&](std::size_t v, std::size_t d) {
    return ElemId{1} << (v * nd + d);
  };

  auto L = std::make_shared<const Lattice>(
      Lattice::powerset(static_cast<unsigned>(atoms.size()), atom_names));

  auto killed_at = [&](std::size_t v, std::size_t d) {
    return std::find(cfg.kill[v].begin(), cfg.kill[v].end(), defs[d].first) !=
           cfg.kill[v].end();
  };

  std::vector<InductiveDefinition::Rule> rules;
  for (auto [m, v] : cfg.edges) {
    for (const auto& dn : cfg.gen[m]) {
      const std::size_t d = static_cast<std::size_t>(
          std::find_if(defs.begin(), defs.end(),
                       [&](const auto& p) { return p.first == dn; }) -
          defs.begin());
      rules.push_back({atom_id(v, d), L->bottom()});
    }
    for (std::size_t d = 0; d < nd; ++d)
      if (!killed_at(m, d)) rules.push_back({atom_id(v, d), atom_id(m, d)});
  }

  InductiveDefinition phi(*L, std::move(rules));
  return {std::move(L), std::move(phi), std::move(atoms), defs};
}

/// Engine route: solve the encoding and decode join(I) back into per-node
/// in-sets, the defining node recovered from the unique generation site.
inline DataflowSolution analyze(const ControlFlowGraph& cfg) {
  RdEncoding enc = rd_aid(cfg);
  const GenSubset I = lfp_stages(enc.phi).least;
  DataflowSolution sol;
  sol.in_sets.resize(cfg.nodes.size());
  for (std::size_t pos : I.positions()) {
    const auto [v, d] = enc.atoms[pos];
    sol.in_sets[v].insert({enc.defs[d].second, enc.defs[d].first});
  }
  return sol;
}

}  // namespace lfpkit

#endif  // LFPKIT_DATAFLOW_HPP
