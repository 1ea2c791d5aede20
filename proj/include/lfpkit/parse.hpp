#ifndef LFPKIT_PARSE_HPP
#define LFPKIT_PARSE_HPP

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfpkit/aid.hpp"
#include "lfpkit/dataflow.hpp"
#include "lfpkit/errors.hpp"
#include "lfpkit/lattice.hpp"
#include "lfpkit/stdind.hpp"

namespace lfpkit {

namespace detail {

/// One non-blank input line, split on whitespace, '#' to end of line dropped.
struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::vector<Line> lines;
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ss(raw);
    Line line{no, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline std::size_t parse_count(const Line& line, const std::string& text) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected a number, got '" + text + "'");
  }
}

}  // namespace detail

/// Loads a lattice file: `lattice explicit|powerset N|chain N|divisors N|
/// product <file> <file>`; explicit bodies list elements, covers and an
/// optional generating set.
inline std::shared_ptr<const Lattice> load_lattice(
    const std::filesystem::path& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(0, "empty lattice file");
  const auto& head = lines.front();
  if (head.tokens[0] != "lattice")
    throw ParseError(head.number, "expected 'lattice' header");
  if (head.tokens.size() < 2)
    throw ParseError(head.number, "missing lattice family");
  const std::string& family = head.tokens[1];

  auto want_arg = [&](std::size_t k) -> const std::string& {
    if (head.tokens.size() <= k)
      throw ParseError(head.number, "missing argument for '" + family + "'");
    return head.tokens[k];
  };

  if (family == "powerset")
    return std::make_shared<const Lattice>(Lattice::powerset(
        static_cast<unsigned>(detail::parse_count(head, want_arg(2)))));
  if (family == "chain")
    return std::make_shared<const Lattice>(
        Lattice::chain(detail::parse_count(head, want_arg(2))));
  if (family == "divisors")
    return std::make_shared<const Lattice>(
        Lattice::divisors(detail::parse_count(head, want_arg(2))));
  if (family == "product") {
    const auto dir = path.parent_path();
    auto a = load_lattice(dir / want_arg(2));
    auto b = load_lattice(dir / want_arg(3));
    return std::make_shared<const Lattice>(
        Lattice::product(std::move(a), std::move(b)));
  }
  if (family != "explicit")
    throw ParseError(head.number, "unknown lattice family '" + family + "'");

  std::vector<std::string> names, gens;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    const auto& kw = ln.tokens[0];
    if (kw == "elements") {
      names.insert(names.end(), ln.tokens.begin() + 1, ln.tokens.end());
    } else if (kw == "cover") {
      if (ln.tokens.size() != 4 || ln.tokens[2] != "<")
        throw ParseError(ln.number, "expected 'cover a < b'");
      covers.emplace_back(ln.tokens[1], ln.tokens[3]);
    } else if (kw == "generators") {
      gens.insert(gens.end(), ln.tokens.begin() + 1, ln.tokens.end());
    } else {
      throw ParseError(ln.number, "unknown directive '" + kw + "'");
    }
  }
  return std::make_shared<const Lattice>(Lattice::from_hasse(names, covers, gens));
}

struct LoadedAid {
  std::shared_ptr<const Lattice> lattice;
  InductiveDefinition phi;
};

/// `aid <lattice-file>` then `rule <generator> <= <element>` lines.
inline LoadedAid load_aid(const std::filesystem::path& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(0, "empty definition file");
  const auto& head = lines.front();
  if (head.tokens[0] != "aid" || head.tokens.size() != 2)
    throw ParseError(head.number, "expected 'aid <lattice-file>' header");
  auto L = load_lattice(path.parent_path() / head.tokens[1]);

  std::vector<InductiveDefinition::Rule> rules;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens[0] != "rule" || ln.tokens.size() != 4 || ln.tokens[2] != "<=")
      throw ParseError(ln.number, "expected 'rule <generator> <= <element>'");
    auto b = L->find(ln.tokens[1]);
    auto a = L->find(ln.tokens[3]);
    if (!b) throw ValidationError("unknown generator '" + ln.tokens[1] + "'");
    if (!a) throw ValidationError("unknown element '" + ln.tokens[3] + "'");
    rules.push_back({*b, *a});
  }
  InductiveDefinition phi(*L, std::move(rules));
  return {std::move(L), std::move(phi)};
}

struct LoadedMap {
  std::shared_ptr<const Lattice> lattice;
  MonotoneMap map;
};

/// `map <lattice-file>` then `send <element> -> <element>` lines; the
/// table must be total and monotone.
inline LoadedMap load_map(const std::filesystem::path& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(0, "empty map file");
  const auto& head = lines.front();
  if (head.tokens[0] != "map" || head.tokens.size() != 2)
    throw ParseError(head.number, "expected 'map <lattice-file>' header");
  auto L = load_lattice(path.parent_path() / head.tokens[1]);

  std::vector<ElemId> table(L->size(), kNoElem);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens[0] != "send" || ln.tokens.size() != 4 || ln.tokens[2] != "->")
      throw ParseError(ln.number, "expected 'send <element> -> <element>'");
    auto x = L->find(ln.tokens[1]);
    auto y = L->find(ln.tokens[3]);
    if (!x) throw ValidationError("unknown element '" + ln.tokens[1] + "'");
    if (!y) throw ValidationError("unknown element '" + ln.tokens[3] + "'");
    if (table[*x] != kNoElem)
      throw ValidationError("duplicate send for '" + ln.tokens[1] + "'");
    table[*x] = *y;
  }
  for (ElemId x = 0; x < L->size(); ++x)
    if (table[x] == kNoElem)
      throw ValidationError("map is not total: missing send for '" +
                            L->name(x) + "'");
  MonotoneMap G = MonotoneMap::certify(*L, std::move(table));
  return {std::move(L), std::move(G)};
}

/// `stdind`, `atoms ...`, `rule a <- x y` (empty premise allowed).
inline StandardInductiveDefinition load_stdind(
    const std::filesystem::path& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(0, "empty stdind file");
  if (lines.front().tokens[0] != "stdind")
    throw ParseError(lines.front().number, "expected 'stdind' header");

  std::vector<std::string> atoms;
  std::vector<StandardInductiveDefinition::Rule> rules;
  auto atom_index = [&](const detail::Line& ln, const std::string& nm) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == nm) return i;
    throw ParseError(ln.number, "unknown atom '" + nm + "'");
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens[0] == "atoms") {
      atoms.insert(atoms.end(), ln.tokens.begin() + 1, ln.tokens.end());
    } else if (ln.tokens[0] == "rule") {
      if (ln.tokens.size() < 3 || ln.tokens[2] != "<-")
        throw ParseError(ln.number, "expected 'rule <atom> <- [atoms...]'");
      StandardInductiveDefinition::Rule r{atom_index(ln, ln.tokens[1]), {}};
      for (std::size_t k = 3; k < ln.tokens.size(); ++k)
        r.premise.push_back(atom_index(ln, ln.tokens[k]));
      rules.push_back(std::move(r));
    } else {
      throw ParseError(ln.number, "unknown directive '" + ln.tokens[0] + "'");
    }
  }
  return StandardInductiveDefinition(std::move(atoms), std::move(rules));
}

/// `cfg`, `node A gen d1 d2 kill d3`, `edge A B`, `entry A`.
inline ControlFlowGraph load_cfg(const std::filesystem::path& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError(0, "empty cfg file");
  if (lines.front().tokens[0] != "cfg")
    throw ParseError(lines.front().number, "expected 'cfg' header");

  ControlFlowGraph cfg;
  std::string entry_name;
  std::vector<std::pair<std::string, std::string>> edge_names;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.tokens[0] == "node") {
      if (ln.tokens.size() < 2) throw ParseError(ln.number, "node needs a name");
      cfg.nodes.push_back(ln.tokens[1]);
      cfg.gen.emplace_back();
      cfg.kill.emplace_back();
      std::vector<std::string>* bucket = nullptr;
      for (std::size_t k = 2; k < ln.tokens.size(); ++k) {
        if (ln.tokens[k] == "gen") bucket = &cfg.gen.back();
        else if (ln.tokens[k] == "kill") bucket = &cfg.kill.back();
        else if (bucket) bucket->push_back(ln.tokens[k]);
        else throw ParseError(ln.number, "expected 'gen' or 'kill'");
      }
    } else if (ln.tokens[0] == "edge") {
      if (ln.tokens.size() != 3) throw ParseError(ln.number, "expected 'edge A B'");
      edge_names.emplace_back(ln.tokens[1], ln.tokens[2]);
    } else if (ln.tokens[0] == "entry") {
      if (ln.tokens.size() != 2) throw ParseError(ln.number, "expected 'entry A'");
      entry_name = ln.tokens[1];
    } else {
      throw ParseError(ln.number, "unknown directive '" + ln.tokens[0] + "'");
    }
  }

  auto node_index = [&](const std::string& nm) -> std::size_t {
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i)
      if (cfg.nodes[i] == nm) return i;
    throw ValidationError("unknown node '" + nm + "'");
  };
  for (const auto& [a, b] : edge_names)
    cfg.edges.emplace_back(node_index(a), node_index(b));
  cfg.entry = entry_name.empty() ? 0 : node_index(entry_name);
  detail::check_cfg(cfg);
  return cfg;
}

}  // namespace lfpkit

#endif  // LFPKIT_PARSE_HPP
