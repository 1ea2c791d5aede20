#ifndef LFPKIT_CLI_HPP
#define LFPKIT_CLI_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfpkit/engine.hpp"
#include "lfpkit/parse.hpp"
#include "lfpkit/presentation.hpp"

namespace lfpkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSizeLimit = 3;
inline constexpr int kExitDisagreement = 4;

namespace detail {

/// "{a,b,c}" with names sorted; deterministic across runs.
inline std::string set_text(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out + "}";
}

inline std::string gens_text(const Lattice& L, const GenSubset& Y) {
  std::vector<std::string> names;
  for (std::size_t pos : Y.positions()) names.push_back(L.name(L.generator(pos)));
  return set_text(std::move(names));
}

inline void print_trace(std::ostream& os, const Lattice& L,
                        const StageTrace& trace) {
  for (std::size_t i = 0; i < trace.stages.size(); ++i)
    os << "stage " << i << ": " << gens_text(L, trace.stages[i]) << "\n";
}

/// Scan thresholds; --limit N lowers them all, never raises.
struct Limits {
  std::size_t presentation = 16;
  std::size_t enumeration = 16;
  std::size_t tarski = std::size_t{1} << 16;
  std::size_t pairs = std::size_t{1} << 20;
  void clamp(std::size_t n) {
    presentation = std::min(presentation, n);
    enumeration = std::min(enumeration, n);
    tarski = std::min(tarski, n);
    pairs = std::min(pairs, n);
  }
};

}  // namespace detail

/// Runs one command; writes the report to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"finite least-fixed-point engine"};
  app.require_subcommand(1);

  std::string lattice_file, aid_file, map_file, stdind_file, cfg_file;
  bool trace = false;
  std::size_t limit = 0;
  app.add_flag("--trace", trace, "print the stage trace");
  app.add_option("--limit", limit, "lower all scan thresholds to N");

  auto* check = app.add_subcommand("lattice-check", "validate a lattice file");
  check->add_option("file", lattice_file)->required();
  auto* run_cmd = app.add_subcommand("lfp-run", "compute a least fixed point");
  run_cmd->add_option("--aid", aid_file, "inductive definition file");
  run_cmd->add_option("--map", map_file, "monotone map file");
  auto* compare = app.add_subcommand("lfp-compare", "engine vs oracles");
  compare->add_option("--map", map_file)->required();
  auto* pres = app.add_subcommand("presentation", "minimal cover listing");
  pres->add_option("file", lattice_file)->required();
  auto* stdind = app.add_subcommand("stdind-run", "standard inductive closure");
  stdind->add_option("file", stdind_file)->required();
  auto* dataflow = app.add_subcommand("dataflow-analyze", "reaching definitions");
  dataflow->add_option("file", cfg_file)->required();

  // --trace / --limit live on the root app; let them appear after the verb
  for (auto* sub : {check, run_cmd, compare, pres, stdind, dataflow})
    sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitParse;
  }

  detail::Limits limits;
  if (limit) limits.clamp(limit);

  try {
    if (check->parsed()) {
      auto L = load_lattice(lattice_file);
      out << "elements: " << L->size() << "\n";
      out << "bottom: " << L->name(L->bottom()) << "\n";
      out << "top: " << L->name(L->top()) << "\n";
      std::vector<std::string> gens;
      for (ElemId g : L->generators()) gens.push_back(L->name(g));
      out << "generators: " << detail::set_text(std::move(gens)) << "\n";
      auto rep = validate_generators(*L);
      if (rep.ok) {
        out << "generation: ok\n";
      } else {
        std::vector<std::string> bad;
        for (ElemId x : rep.violators) bad.push_back(L->name(x));
        out << "generation: FAIL " << detail::set_text(std::move(bad)) << "\n";
        return kExitValidation;
      }
    } else if (run_cmd->parsed()) {
      if (aid_file.empty() == map_file.empty())
        throw ValidationError("lfp-run needs exactly one of --aid / --map");
      if (!aid_file.empty()) {
        auto [L, phi] = load_aid(aid_file);
        auto result = lfp_stages(phi);
        if (trace) detail::print_trace(out, *L, result.trace);
        out << "I: " << detail::gens_text(*L, result.least) << "\n";
        out << "lfp: " << L->name(L->join_of(result.least)) << "\n";
      } else {
        auto [L, G] = load_map(map_file);
        auto phi = phi_of_gamma(G, limits.pairs);
        auto result = lfp_stages(phi);
        if (trace) detail::print_trace(out, *L, result.trace);
        out << "lfp: " << L->name(L->join_of(result.least)) << "\n";
      }
    } else if (compare->parsed()) {
      auto [L, G] = load_map(map_file);
      const ElemId via_aid = lfp_aid(G, limits.pairs);
      const ElemId via_tarski = oracle_tarski(G, limits.tarski);
      const ElemId via_kleene = oracle_kleene(G);
      out << "lfp_aid: " << L->name(via_aid) << "\n";
      out << "oracle_tarski: " << L->name(via_tarski) << "\n";
      out << "oracle_kleene: " << L->name(via_kleene) << "\n";
      const bool agree = via_aid == via_tarski && via_tarski == via_kleene;
      out << "verdict: " << (agree ? "AGREE" : "DISAGREE") << "\n";
      if (!agree) return kExitDisagreement;
    } else if (pres->parsed()) {
      auto L = load_lattice(lattice_file);
      auto P = set_presentation(*L, limits.presentation);
      for (std::size_t pos = 0; pos < P.covers.size(); ++pos) {
        out << "covers " << L->name(L->generator(pos)) << ":";
        for (const auto& W : P.covers[pos])
          out << " " << detail::gens_text(*L, W);
        out << "\n";
      }
    } else if (stdind->parsed()) {
      auto phi = load_stdind(stdind_file);
      auto closure = std_lfp(phi);
      std::vector<std::string> names;
      for (std::size_t a : closure) names.push_back(phi.atoms()[a]);
      out << "closure: " << detail::set_text(std::move(names)) << "\n";
    } else if (dataflow->parsed()) {
      auto cfg = load_cfg(cfg_file);
      auto sol = analyze(cfg);
      for (std::size_t v = 0; v < cfg.nodes.size(); ++v) {
        std::vector<std::string> facts;
        for (const auto& [m, d] : sol.in_sets[v])
          facts.push_back(cfg.nodes[m] + "." + d);
        out << "in " << cfg.nodes[v] << ": " << detail::set_text(std::move(facts))
            << "\n";
      }
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const SizeLimitExceeded& e) {
    err << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace lfpkit::cli

#endif  // LFPKIT_CLI_HPP
