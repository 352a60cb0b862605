#include "splinemod/cli.hpp"

#include "splinemod/constructions.hpp"
#include "splinemod/crt.hpp"
#include "splinemod/cycles.hpp"
#include "splinemod/engine.hpp"
#include "splinemod/error.hpp"
#include "splinemod/number_theory.hpp"
#include "splinemod/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace splinemod::cli {

namespace {

using nlohmann::json;

struct Options {
  bool json = false;
  bool verify = false;
  bool crt = false;
  bool direct = false;
  std::optional<std::uint64_t> budget;
  std::string order;

  std::uint64_t effective_budget() const { return budget.value_or(default_budget()); }
};

// Thrown once the report is written but a cross-check failed.
struct Mismatch {};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

EdgeLabeledGraph load_graph(const std::string& path, const Options& opt, bool apply_order = true) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = (path.size() >= 5 && path.substr(path.size() - 5) == ".json") ||
                       (first != std::string::npos && text[first] == '{');
  EdgeLabeledGraph g = is_json ? parse_graph_json(text) : parse_graph(text);
  if (apply_order && !opt.order.empty()) g = g.reordered_by_names(split_names(opt.order));
  return g;
}

json spline_json(const Spline& s) { return s.values; }

json splines_json(const std::vector<Spline>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(spline_json(s));
  return out;
}

json generators_json(const std::vector<Spline>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back({{"values", s.values}, {"order", s.order()}});
  return out;
}

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& e : edges) out.push_back({e.u, e.v, e.label});
  return out;
}

json normalization_json(const NormalizationReport& r) {
  json collapsed = json::array();
  for (const auto& c : r.collapsed_parallel_edges) collapsed.push_back({c.u, c.v, c.surviving_label});
  return {{"identity", r.is_identity()},
          {"vertex_merge_map", r.vertex_merge_map},
          {"dropped_unit_edges", edges_json(r.dropped_unit_edges)},
          {"collapsed_parallel_edges", collapsed}};
}

std::vector<Spline> presentation_of(const EdgeLabeledGraph& g) {
  if (g.integer_mode() || g.modulus() < 2 || g.vertex_count() == 0) return {};
  return trivial_first_presentation(g).generators;
}

json module_json(const EdgeLabeledGraph& g, const SplineModule& mod) {
  json j;
  j["modulus"] = mod.modulus;
  j["rank"] = mod.rank();
  if (mod.integer_mode()) {
    j["integer_mode"] = true;
    j["basis"] = splines_json(mod.mgs);
    return j;
  }
  j["integer_mode"] = false;
  j["invariant_factors"] = mod.invariant_factors;
  j["raw_factors"] = mod.raw_factors;
  j["order"] = mod.order().get_str();
  j["invariant_generators"] = generators_json(mod.mgs);
  j["minimum_generating_set"] = generators_json(presentation_of(g));
  j["flow_up"] = splines_json(mod.flow_up);
  return j;
}

json instance_json(const EdgeLabeledGraph& g) {
  return {{"graph", json::parse(serialize_graph_json(g))}, {"modulus", g.modulus()}, {"vertex_order", g.names()}};
}

std::optional<std::uint64_t> to_u64(const Integer& x) {
  if (x < 0 || !x.fits_ulong_p()) return std::nullopt;
  return x.get_ui();
}

// Oracle check of a generating set against the expected invariant factors:
// full enumeration within budget, otherwise generator closure plus sampling.
json verify(const EdgeLabeledGraph& g, const std::vector<Spline>& gens, const std::vector<std::int64_t>& factors,
            const Options& opt) {
  json j;
  if (g.integer_mode()) {
    j["method"] = "none";
    j["ok"] = nullptr;
    j["note"] = "no oracle over the integers";
    return j;
  }
  const std::uint64_t budget = opt.effective_budget();
  Integer expected = 1;
  for (auto d : factors) expected *= static_cast<long>(d);
  const auto space = vector_space_size(g.modulus(), g.vertex_count());
  if (space && *space <= budget) {
    const SplineSet all = enumerate_splines(g, budget);
    const ModuleFingerprint fp = fingerprint(all);
    const bool spans = gens.empty() ? all.size() == 1 : span_equals(gens, all, budget);
    j["method"] = "enumeration";
    j["splines"] = all.size();
    j["invariant_factors"] = fp.invariant_factors;
    j["spans"] = spans;
    j["ok"] = spans && fp.invariant_factors == factors;
    return j;
  }
  const auto exp64 = to_u64(expected);
  if (!exp64) throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(), budget);
  const ClosureReport rep = verify_by_closure(g, gens, 10'000, 1, budget);
  j["method"] = "closure";
  j["closure_size"] = rep.closure_size;
  j["closure_inside"] = rep.closure_inside;
  j["random_vectors"] = rep.random_vectors;
  j["membership_disagreements"] = rep.membership_disagreements;
  j["lattice_samples"] = rep.lattice_samples;
  j["lattice_misses"] = rep.lattice_misses;
  j["ok"] = rep.ok(*exp64);
  return j;
}

bool verification_failed(const json& v) { return v.contains("ok") && v["ok"].is_boolean() && !v["ok"].get<bool>(); }

// ---------------------------------------------------------------- text output

std::string join(const std::vector<std::int64_t>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out.empty() ? "(none)" : out;
}

void print_generators(std::ostream& out, const char* title, const std::vector<Spline>& gens, bool with_order) {
  out << title << ":\n";
  if (gens.empty()) out << "  (none)\n";
  for (const auto& s : gens) {
    out << "  " << s;
    if (with_order) out << "  order " << s.order();
    out << '\n';
  }
}

void print_module(std::ostream& out, const json& mj, const EdgeLabeledGraph& g, const SplineModule& mod) {
  if (mod.integer_mode()) {
    out << "integer mode: free module of rank " << mod.rank() << "\n";
    print_generators(out, "basis", mod.mgs, false);
    return;
  }
  out << "invariant factors: " << join(mod.invariant_factors) << "\n";
  out << "rank: " << mod.rank() << "\n";
  out << "order: " << mj["order"].get<std::string>() << "\n";
  print_generators(out, "minimum generating set", presentation_of(g), true);
  print_generators(out, "flow-up generators", mod.flow_up, false);
}

void print_verification(std::ostream& out, const json& v) {
  if (v.is_null()) return;
  const std::string method = v["method"];
  if (method == "none") {
    out << "oracle: skipped (" << v["note"].get<std::string>() << ")\n";
    return;
  }
  out << "oracle: " << (v["ok"].get<bool>() ? "ok" : "MISMATCH") << " (" << method;
  if (method == "enumeration") out << ", " << v["splines"].get<std::uint64_t>() << " splines";
  else out << ", closure " << v["closure_size"].get<std::uint64_t>() << ", " << v["random_vectors"].get<std::uint64_t>()
           << " random vectors";
  out << ")\n";
}

void print_graph_line(std::ostream& out, const EdgeLabeledGraph& g) {
  out << "graph: " << g.vertex_count() << " vertices, " << g.edges().size() << " edges, ";
  if (g.integer_mode()) out << "over Z\n";
  else out << "mod " << g.modulus() << "\n";
  out << "vertex order:";
  for (const auto& n : g.names()) out << ' ' << n;
  out << "\n";
}

// ---------------------------------------------------------------- commands

int cmd_solve(const std::string& path, const Options& opt, std::ostream& out) {
  const EdgeLabeledGraph g = load_graph(path, opt);
  const std::int64_t m = g.modulus();
  const bool composite = m >= 4 && !is_prime(static_cast<std::uint64_t>(m));

  SplineModule mod;
  NormalizationReport norm;
  std::string path_name;
  json crt_block;
  bool consistent = true;
  if (opt.crt) {
    if (m < 2) throw Error(ErrorCode::PreconditionViolated, "--crt needs a modulus m >= 2");
    const Decomposition d = decompose(g);
    mod = d.recombined;
    norm = normalize(g).report;
    path_name = "crt";
  } else {
    Solution s = solve(g);
    mod = std::move(s.module);
    norm = std::move(s.report);
    path_name = "direct";
  }
  if (!opt.crt && !opt.direct && composite) {
    const Decomposition d = decompose(g);
    json comps = json::array();
    for (const auto& c : d.components)
      comps.push_back({{"prime", c.prime}, {"exponent", c.exponent}, {"q", c.q},
                       {"invariant_factors", c.module.invariant_factors}});
    consistent = d.recombined.invariant_factors == mod.invariant_factors;
    crt_block = {{"components", comps}, {"invariant_factors", d.recombined.invariant_factors}, {"agrees", consistent}};
    path_name = "direct+crt";
  }

  json report = instance_json(g);
  report["command"] = "solve";
  report["path"] = path_name;
  report["normalization"] = normalization_json(norm);
  report["module"] = module_json(g, mod);
  if (!crt_block.is_null()) report["crt_check"] = crt_block;
  json verification;
  if (opt.verify) {
    const auto gens = mod.integer_mode() ? mod.mgs : presentation_of(g);
    verification = verify(g, gens, mod.invariant_factors, opt);
    report["verification"] = verification;
  }

  if (opt.json) {
    out << report.dump(2) << "\n";
  } else {
    print_graph_line(out, g);
    out << "normalization: " << (norm.is_identity() ? "identity" : "applied") << "\n";
    out << "path: " << path_name;
    if (!crt_block.is_null()) out << " (crt " << (consistent ? "agrees" : "DISAGREES") << ")";
    out << "\n";
    print_module(out, report["module"], g, mod);
    print_verification(out, verification);
  }
  if (!consistent || verification_failed(verification)) throw Mismatch{};
  return kOk;
}

int cmd_cycle(const std::string& path, const Options& opt, std::ostream& out) {
  const EdgeLabeledGraph g = load_graph(path, opt);
  const CycleReport rep = classify_cycle(g);
  const bool size_ok = !rep.result.minimum || g.modulus() < 2 || rep.result.splines.size() == rep.engine_rank;
  bool consistent = rep.generates && size_ok;

  std::vector<std::string> cycle_names;
  for (auto v : rep.instance.order) cycle_names.push_back(g.names()[v]);
  json report = instance_json(g);
  report["command"] = "cycle";
  report["cycle_order"] = cycle_names;
  report["cycle_labels"] = rep.instance.labels;
  report["path"] = std::string(to_string(rep.path));
  report["rotation"] = rep.closed_form.rotation;
  report["closed_form"] = splines_json(rep.closed_form.splines);
  report["merge_factors"] = rep.merge_factors;
  report["minimum_generating_set"] = generators_json(rep.result.splines);
  report["minimum"] = rep.result.minimum;
  report["provenance"] = std::string(to_string(rep.result.provenance));
  report["engine_rank"] = rep.engine_rank;
  report["generates"] = rep.generates;
  report["note"] = rep.note;
  json verification;
  if (opt.verify) {
    verification = verify(g, rep.result.splines, invariant_factors(g).invariant_factors, opt);
    report["verification"] = verification;
  }

  if (opt.json) {
    out << report.dump(2) << "\n";
  } else {
    print_graph_line(out, g);
    out << "cycle:";
    for (std::size_t i = 0; i < cycle_names.size(); ++i)
      out << ' ' << cycle_names[i] << " -" << rep.instance.labels[i] << "-";
    out << ' ' << cycle_names.front() << "\n";
    out << "path: " << to_string(rep.path);
    if (rep.closed_form.rotation) out << " (rotated by " << rep.closed_form.rotation << ")";
    out << "\n";
    if (!rep.merge_factors.empty()) {
      print_generators(out, "closed form", rep.closed_form.splines, true);
      out << "merge factors: " << join(rep.merge_factors) << "\n";
    }
    print_generators(out, rep.result.minimum ? "minimum generating set" : "generating set", rep.result.splines, true);
    out << "engine rank: " << rep.engine_rank << "\n";
    out << "cross-check: " << (consistent ? "ok" : "MISMATCH") << "\n";
    if (!rep.note.empty()) out << "note: " << rep.note << "\n";
    print_verification(out, verification);
  }
  if (!consistent || verification_failed(verification)) throw Mismatch{};
  return kOk;
}

int cmd_construct(std::size_t n, std::int64_t m, std::size_t k, const Options& opt, std::ostream& out) {
  const Construction c = k == 1 ? build_rank_1(n, m) : build_rank_k(n, m, k);
  const std::size_t r = rank(c.graph);
  bool consistent = r == k;

  json steps = json::array();
  for (const auto& s : c.recipe.log)
    steps.push_back({{"kind", std::string(to_string(s.kind))}, {"vertex", c.graph.names()[s.vertex]}, {"edges", edges_json(s.edges)}});
  json report = instance_json(c.graph);
  report["command"] = "construct";
  report["recipe"] = {{"target_rank", k}, {"n", n}, {"m", m}, {"n1", c.recipe.n1}, {"n2", c.recipe.n2},
                      {"triangle_factors", c.recipe.triangle_factors}, {"steps", steps}};
  report["rank"] = r;
  json verification;
  if (opt.verify) {
    const SplineModule mod = invariant_factors(c.graph);
    verification = verify(c.graph, presentation_of(c.graph), mod.invariant_factors, opt);
    report["verification"] = verification;
  }

  if (opt.json) {
    out << report.dump(2) << "\n";
  } else {
    out << "# construction n=" << n << " m=" << m << " k=" << k << " (n1=" << c.recipe.n1 << ", n2=" << c.recipe.n2
        << ")\n";
    for (const auto& s : c.recipe.log) out << "# " << to_string(s.kind) << " step adds " << c.graph.names()[s.vertex] << "\n";
    out << "# rank " << r << (consistent ? " (verified)" : " (MISMATCH)") << "\n";
    out << serialize_graph(c.graph);
    if (!verification.is_null()) {
      std::ostringstream v;
      print_verification(v, verification);
      out << "# " << v.str();
    }
  }
  if (!consistent || verification_failed(verification)) throw Mismatch{};
  return kOk;
}

int cmd_extend(const std::string& base_path, const std::string& plus_path, std::string vertex, const Options& opt,
               std::ostream& out) {
  const EdgeLabeledGraph g = load_graph(base_path, opt);
  const EdgeLabeledGraph gp = load_graph(plus_path, opt, false);
  if (vertex.empty()) {
    for (const auto& name : gp.names())
      if (std::find(g.names().begin(), g.names().end(), name) == g.names().end()) {
        if (!vertex.empty()) throw Error(ErrorCode::NotAnExtension, "more than one new vertex; name it explicitly");
        vertex = name;
      }
    if (vertex.empty()) throw Error(ErrorCode::NotAnExtension, "extension adds no vertex");
  }
  const ExtensionAnalysis ea = extension_analysis(g, gp, vertex);
  const SplineModule base = solve(g).module;
  const SplineModule plus = solve(gp).module;

  json report;
  report["command"] = "extend";
  report["base"] = instance_json(g);
  report["extended"] = instance_json(gp);
  report["new_vertex"] = ea.new_vertex;
  report["N"] = ea.n_lcm;
  report["kernel_order"] = ea.kernel_order ? json(*ea.kernel_order) : json(nullptr);
  report["pi_surjective"] = ea.pi_surjective;
  report["unlifted"] = ea.unlifted ? spline_json(*ea.unlifted) : json(nullptr);
  report["base_module"] = module_json(g, base);
  report["extended_module"] = module_json(gp, plus);
  json verification;
  if (opt.verify) {
    if (gp.integer_mode()) {
      verification = {{"method", "none"}, {"ok", nullptr}, {"note", "no oracle over the integers"}};
    } else {
      const RestrictionCount rc = restriction_counts(gp, gp.index_of(vertex), opt.effective_budget());
      const auto base_order = to_u64(base.order());
      const bool ok = ea.kernel_order && rc.kernel == static_cast<std::uint64_t>(*ea.kernel_order) &&
                      (rc.image == base_order) == ea.pi_surjective;
      verification = {{"method", "enumeration"}, {"kernel", rc.kernel}, {"image", rc.image}, {"ok", ok}};
    }
    report["verification"] = verification;
  }

  if (opt.json) {
    out << report.dump(2) << "\n";
  } else {
    out << "new vertex: " << ea.new_vertex << "\n";
    out << "N (lcm of incident labels): " << ea.n_lcm << "\n";
    out << "kernel order: " << (ea.kernel_order ? std::to_string(*ea.kernel_order) : std::string("infinite")) << "\n";
    out << "restriction surjective: " << (ea.pi_surjective ? "yes" : "no") << "\n";
    if (ea.unlifted) out << "not in the image: " << *ea.unlifted << "\n";
    out << "-- base\n";
    print_graph_line(out, g);
    print_module(out, report["base_module"], g, base);
    out << "-- extended\n";
    print_graph_line(out, gp);
    print_module(out, report["extended_module"], gp, plus);
    if (!verification.is_null()) {
      if (verification["method"] == "none") out << "oracle: skipped (no oracle over the integers)\n";
      else
        out << "oracle: " << (verification["ok"].get<bool>() ? "ok" : "MISMATCH") << " (kernel "
            << verification["kernel"].get<std::uint64_t>() << ", image " << verification["image"].get<std::uint64_t>()
            << ")\n";
    }
  }
  if (verification_failed(verification)) throw Mismatch{};
  return kOk;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_flag("--json", opt.json, "machine-readable report");
  cmd->add_flag("--verify", opt.verify, "check against the brute-force oracle");
  auto* crt = cmd->add_flag("--crt", opt.crt, "solve through the prime-power decomposition");
  auto* direct = cmd->add_flag("--direct", opt.direct, "single SNF path, no CRT cross-check");
  crt->excludes(direct);
  cmd->add_option("--budget", opt.budget, "enumeration budget (overrides SPLINEMOD_BUDGET)")->check(CLI::PositiveNumber);
  cmd->add_option("--order", opt.order, "vertex order, e.g. v3,v1,v2");
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded: return kBudgetExceeded;
    case ErrorCode::InternalInconsistency: return kMismatch;
    default: return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized splines over Z/mZ on edge-labeled graphs", "splinemod"};
  app.require_subcommand(1);
  Options opt;

  std::string file, plus_file, vertex;
  std::size_t n = 0, k = 0;
  std::int64_t m = 0;
  auto* solve_cmd = app.add_subcommand("solve", "invariant factors and generating sets of the spline module");
  solve_cmd->add_option("graph", file, "graph file (text or JSON)")->required();
  auto* cycle_cmd = app.add_subcommand("cycle", "closed-form generating set for a cycle");
  cycle_cmd->add_option("graph", file, "graph file (text or JSON)")->required();
  auto* construct_cmd = app.add_subcommand("construct", "build a graph on n vertices with spline rank k over Z/m");
  construct_cmd->add_option("n", n)->required();
  construct_cmd->add_option("m", m)->required();
  construct_cmd->add_option("k", k)->required();
  auto* extend_cmd = app.add_subcommand("extend", "restriction from an extension graph G+ to G");
  extend_cmd->add_option("base", file, "graph G")->required();
  extend_cmd->add_option("extended", plus_file, "graph G+ with one extra vertex")->required();
  extend_cmd->add_option("vertex", vertex, "name of the new vertex (inferred when omitted)");
  for (auto* c : {solve_cmd, cycle_cmd, construct_cmd, extend_cmd}) add_common(c, opt);

  std::vector<std::string> argv_store{"splinemod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, opt, out);
    if (*cycle_cmd) return cmd_cycle(file, opt, out);
    if (*construct_cmd) return cmd_construct(n, m, k, opt, out);
    return cmd_extend(file, plus_file, vertex, opt, out);
  } catch (const Mismatch&) {
    err << "error: cross-check mismatch\n";
    return kMismatch;
  } catch (const ParseError& e) {
    err << "error: line " << e.line() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace splinemod::cli
