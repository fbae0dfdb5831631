// Copyright 2026 The structlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// structlab command-line front end. Exit status: 0 on success, 1 on domain
// errors (one-line JSON on stderr), 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "structlab/structlab.hpp"

using namespace structlab;
using nlohmann::json;

namespace {

// Raised for file-system problems; reported like a domain error.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> structures;
  std::vector<std::string> formulas;
  std::string formula_file;
  std::string free;
  std::vector<std::string> params;
  int rank = 0;
  int arity = 1;
  std::vector<std::string> splits;
  int max = 8;
  std::string mode = "strict";
  std::string property;
  std::string check;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t budget = 0;
  std::string format = "text";
  std::string output;
  int jobs = 1;
  std::string tuple_a;
  std::string tuple_b;
  std::string keep;
  std::string map;
  std::string map_out;
  std::string perm;
  bool generators = false;
  int cap = kDefaultPermutationCap;
  // corpus parameters
  int m = 1;
  int n = 0;
  int c = 1;
  int q = 0;
  int constants = 0;
  std::string wiring;
  std::string pattern;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw IoError("cannot write '" + o.output + "'");
  out << text;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text) {
    if (ch == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else if (ch != ' ') {
      token += ch;
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "'" + t + "' is not an integer");
    }
  }
  return out;
}

Tuple tuple_arg(const std::string& text) {
  std::string cleaned;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != '[' && ch != ']') cleaned += ch;
  }
  return int_list(cleaned);
}

FiniteStructure load_structure(const Options& o, std::size_t index) {
  if (o.structures.size() <= index) {
    throw Error(ErrorKind::kInvalidArgument, "missing --structure");
  }
  return parse_structure_any(read_file(o.structures[index]));
}

std::vector<Formula> load_formulas(const Options& o) {
  std::vector<Formula> out;
  for (const auto& f : o.formulas) out.push_back(parse_formula(f));
  if (!o.formula_file.empty()) {
    std::istringstream in(read_file(o.formula_file));
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out.push_back(parse_formula(line));
    }
  }
  return out;
}

Formula one_formula(const Options& o) {
  auto fs = load_formulas(o);
  if (fs.size() != 1) throw Error(ErrorKind::kInvalidArgument, "expected exactly one formula");
  return fs.front();
}

Assignment load_params(const Options& o) {
  Assignment a;
  for (const auto& group : o.params) {
    for (const auto& item : split_list(group)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorKind::kInvalidArgument, "parameter '" + item + "' must look like x=3");
      }
      const auto values = int_list(item.substr(eq + 1));
      if (values.size() != 1) throw Error(ErrorKind::kInvalidArgument, "bad parameter '" + item + "'");
      a[item.substr(0, eq)] = values.front();
    }
  }
  return a;
}

InvarianceMode load_mode(const Options& o) {
  if (o.mode == "strict") return InvarianceMode::kStrict;
  if (o.mode == "setwise") return InvarianceMode::kSetwise;
  throw Error(ErrorKind::kInvalidArgument, "mode must be strict or setwise");
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  if (o.budget) s.budget = o.budget;
  s.jobs = o.jobs;
  return s;
}

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

bool structured(const Options& o) { return o.format == "structured"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string bool_text(bool b) { return b ? "true" : "false"; }

// ------------------------------------------------------------- commands

std::string cmd_eval(const Options& o) {
  const bool value = evaluate(load_structure(o, 0), one_formula(o), load_params(o));
  return structured(o) ? dump({{"result", value}}) : bool_text(value) + "\n";
}

std::string cmd_defset(const Options& o) {
  const auto s = load_structure(o, 0);
  const auto f = one_formula(o);
  const auto vars = split_list(o.free);
  const auto tuples = definable_set(s, f, vars, load_params(o), o.jobs);
  if (structured(o)) return dump({{"free", vars}, {"count", tuples.size()}, {"tuples", tuples}});
  std::string out = "count: " + std::to_string(tuples.size()) + "\n";
  for (const auto& t : tuples) out += tuple_text(t) + "\n";
  return out;
}

std::string cmd_types(const Options& o) {
  const auto s = load_structure(o, 0);
  const auto p = o.budget ? qr_type_partition(s, o.arity, o.rank, o.budget)
                          : qr_type_partition(s, o.arity, o.rank);
  if (structured(o)) {
    return dump({{"arity", p.arity}, {"rank", p.rank}, {"blocks", p.blocks}});
  }
  std::string out = "blocks: " + std::to_string(p.block_count()) + "\n";
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    out += "block " + std::to_string(i) + ":";
    for (const auto& t : p.blocks[i]) out += " " + tuple_text(t);
    out += "\n";
  }
  return out;
}

std::string cmd_ef(const Options& o) {
  if (o.structures.size() != 2) throw Error(ErrorKind::kInvalidArgument, "ef needs two --structure files");
  const auto a = load_structure(o, 0), b = load_structure(o, 1);
  const Tuple x = tuple_arg(o.tuple_a), y = tuple_arg(o.tuple_b);
  const Winner w = o.budget ? ef_game_winner(a, x, b, y, o.rank, o.budget)
                            : ef_game_winner(a, x, b, y, o.rank);
  const std::string name(winner_name(w));
  return structured(o) ? dump({{"rounds", o.rank}, {"winner", name}}) : name + "\n";
}

std::string format_records(const Options& o, const std::vector<IndicatorRecord>& records) {
  if (o.format == "csv") return report_csv(records);
  if (structured(o)) {
    json j = json::array();
    for (const auto& r : records) j.push_back(to_json(r));
    return dump(j);
  }
  return report_text(records);
}

Split one_split(const Options& o) {
  if (o.splits.size() != 1) throw Error(ErrorKind::kInvalidArgument, "expected exactly one --split");
  return parse_split(o.splits.front());
}

std::string cmd_indicator(const Options& o, const std::string& which) {
  const auto s = load_structure(o, 0);
  const auto f = one_formula(o);
  const auto split = one_split(o);
  const auto search = search_options(o);
  IndicatorRecord r;
  if (which == "ladder") {
    r = ladder_record(s, f, split, o.max, search);
  } else if (which == "sop") {
    r = chain_record(s, f, split, o.max, search);
  } else {
    r = vc_record(s, f, split, o.max, search);
  }
  return format_records(o, {r});
}

std::string cmd_minprofile(const Options& o) {
  const auto s = load_structure(o, 0);
  std::vector<FamilyEntry> family;
  const auto formulas = load_formulas(o);
  if (formulas.empty()) {
    family = atomic_family(s);
  } else {
    if (o.splits.size() != formulas.size() && o.splits.size() != 1) {
      throw Error(ErrorKind::kInvalidArgument, "give one --split per formula or one shared split");
    }
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      const auto split = parse_split(o.splits[o.splits.size() == 1 ? 0 : i]);
      if (split.x.size() != 1) {
        throw Error(ErrorKind::kInvalidArgument, "the object side must be one variable");
      }
      family.push_back({formulas[i], split.x.front(), split.y});
    }
  }
  const auto p = minimality_profile(s, family, o.jobs);
  if (structured(o)) {
    json entries = json::array();
    for (const auto& e : p.entries) {
      entries.push_back({{"formula", e.formula},
                         {"object", e.object},
                         {"params", e.params},
                         {"value", e.value},
                         {"witness", e.witness},
                         {"set_size", e.set_size}});
    }
    return dump({{"entries", entries}, {"overall", p.overall}});
  }
  std::string out;
  for (const auto& e : p.entries) {
    std::string params;
    for (std::size_t i = 0; i < e.params.size(); ++i) params += (i ? "," : "") + e.params[i];
    out += e.formula + " [" + e.object + ";" + params + "]: " + std::to_string(e.value) +
           " at " + tuple_text(e.witness) + " (set size " + std::to_string(e.set_size) + ")\n";
  }
  return out + "overall: " + std::to_string(p.overall) + "\n";
}

std::string structure_output(const Options& o, const FiniteStructure& s,
                             const std::vector<std::string>& header = {}) {
  return structured(o) ? dump(structure_to_json(s)) : serialize_structure(s, header);
}

std::string cmd_fuse(const Options& o) {
  if (o.structures.size() != 2) throw Error(ErrorKind::kInvalidArgument, "fuse needs two --structure files");
  const auto f = fuse(load_structure(o, 0), load_structure(o, 1));
  if (structured(o)) {
    json dups = json::array();
    for (const auto& [a, b] : f.duplicates) dups.push_back({a, b});
    return dump({{"structure", structure_to_json(f.structure)},
                 {"regular", f.regular},
                 {"duplicates", dups}});
  }
  std::vector<std::string> header;
  for (const auto& [a, b] : f.duplicates) header.push_back("not regular: " + a + " and " + b + " share an extent");
  return serialize_structure(f.structure, header);
}

std::string cmd_intersect(const Options& o) {
  if (o.structures.size() != 2) {
    throw Error(ErrorKind::kInvalidArgument, "intersect needs two --structure files");
  }
  return structure_output(o, intersect(load_structure(o, 0), load_structure(o, 1)));
}

std::string cmd_restrict(const Options& o) {
  const auto names = split_list(o.keep);
  return structure_output(o, restrict(load_structure(o, 0), {names.begin(), names.end()}));
}

std::string cmd_regularize(const Options& o) {
  const auto r = regularize(load_structure(o, 0));
  if (!o.map_out.empty()) {
    std::ofstream out(o.map_out, std::ios::binary);
    if (!out) throw IoError("cannot write '" + o.map_out + "'");
    out << dump(name_map_to_json(r.names));
  }
  if (structured(o)) {
    return dump({{"structure", structure_to_json(r.structure)}, {"names", name_map_to_json(r.names)}});
  }
  return serialize_structure(r.structure);
}

std::string cmd_deregularize(const Options& o) {
  NameMap names;
  if (!o.map.empty()) {
    try {
      names = name_map_from_json(json::parse(read_file(o.map)));
    } catch (const json::parse_error& e) {
      throw SyntaxError(std::string("malformed name map: ") + e.what(), 1, 1);
    }
  }
  return structure_output(o, deregularize(load_structure(o, 0), names));
}

std::string cmd_perm(const Options& o) {
  const auto s = load_structure(o, 0);
  const auto out = apply_permutation(s, Permutation::parse(o.perm));
  std::vector<std::string> header;
  if (!out.regular) header.push_back("not regular: two extents coincide after the permutation");
  if (structured(o)) {
    return dump({{"structure", structure_to_json(out.structure)}, {"regular", out.regular}});
  }
  return serialize_structure(out.structure, header);
}

std::string cmd_autos(const Options& o) {
  const auto s = load_structure(o, 0);
  const auto mode = load_mode(o);
  std::vector<Permutation> perms;
  std::uint64_t order = 0;
  if (o.generators) {
    auto g = automorphism_generators(s, mode);
    perms = g.generators;
    order = g.group_order();
  } else {
    perms = automorphisms(s, {mode, o.cap});
    order = perms.size();
  }
  if (structured(o)) {
    json list = json::array();
    for (const auto& p : perms) list.push_back(p.image());
    return dump({{"mode", std::string(mode_name(mode))},
                 {"generators_only", o.generators},
                 {"group_order", order},
                 {"permutations", list}});
  }
  std::string out = "mode: " + std::string(mode_name(mode)) + "\ngroup order: " + std::to_string(order) +
                    "\n" + (o.generators ? "generators:" : "automorphisms:") + "\n";
  for (const auto& p : perms) out += p.to_string() + "\n";
  return out;
}

std::string cmd_invariant(const Options& o) {
  const auto mode = load_mode(o);
  const bool value = is_perm_invariant(load_structure(o, 0), mode);
  if (structured(o)) return dump({{"mode", std::string(mode_name(mode))}, {"invariant", value}});
  return bool_text(value) + "\n";
}

json members_json(const AmbientAlgebra& a, const std::vector<SymbolSet>& ms) {
  json j = json::array();
  for (SymbolSet m : ms) j.push_back(a.names(m));
  return j;
}

std::string cmd_lattice(const Options& o) {
  const AmbientAlgebra a(load_structure(o, 0));
  const auto mode = load_mode(o);
  if (o.property.empty()) {
    // Seeded sweep of random properties over this ambient.
    if (o.samples == 0) throw Error(ErrorKind::kInvalidArgument, "give --property or --samples");
    std::size_t inconsistent = 0;
    auto summary = for_each_property(a.symbol_count(), {o.samples, o.seed}, [&](const PropertySet& p) {
      inconsistent += !verify_duality(p).consistent() || !check_er_triviality(p) ||
                      !check_lattice_cone_collapse(p).holds();
    });
    if (structured(o)) {
      return dump({{"samples", summary.visited}, {"seed", o.seed}, {"counterexamples", inconsistent}});
    }
    return "samples: " + std::to_string(summary.visited) + "\nseed: " + std::to_string(o.seed) +
           "\ncounterexamples: " + std::to_string(inconsistent) + "\n";
  }
  json rule_json;
  try {
    rule_json = json::parse(read_file(o.property));
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("malformed property rule: ") + e.what(), 1, 1);
  }
  const PropertySet p = realize(rule_from_json(rule_json), a);
  auto checks = split_list(o.check.empty() ? "E,R,L" : o.check);
  json result = json::object();
  result["members"] = members_json(a, p.canonical_members());
  std::string text;
  auto line = [&](const std::string& key, const std::string& value) { text += key + ": " + value + "\n"; };
  std::string members;
  for (SymbolSet m : p.canonical_members()) members += (members.empty() ? "" : " ") + format_element(a, m);
  line("members", members.empty() ? "(none)" : members);
  for (const auto& c : checks) {
    if (c == "E") {
      result["E_closed"] = is_expansion_closed(p);
      line("E-closed", bool_text(is_expansion_closed(p)));
    } else if (c == "R") {
      result["R_closed"] = is_restriction_closed(p);
      line("R-closed", bool_text(is_restriction_closed(p)));
    } else if (c == "L") {
      result["L_property"] = is_lattice_property(p);
      line("L-property", bool_text(is_lattice_property(p)));
    } else if (c == "perm") {
      auto r = is_perm_closed_property(p, a, mode);
      json w = nullptr;
      std::string wtext;
      if (r.witness) {
        w = {{"permutation", r.witness->permutation.image()},
             {"member", a.names(r.witness->member)},
             {"image", r.witness->image ? json(a.names(*r.witness->image)) : json(nullptr)}};
        wtext = " (witness " + r.witness->permutation.to_string() + " moves " +
                format_element(a, r.witness->member) + " to " +
                (r.witness->image ? format_element(a, *r.witness->image) : std::string("outside the algebra")) +
                ")";
      }
      result["perm_closed"] = {{"mode", std::string(mode_name(mode))}, {"closed", r.closed}, {"witness", w}};
      line("perm-closed (" + std::string(mode_name(mode)) + ")", bool_text(r.closed) + wtext);
    } else if (c == "cones") {
      json cones = json::object();
      for (auto [dir, key] : {std::pair{Direction::kUp, "up"}, std::pair{Direction::kDown, "down"}}) {
        const bool closed = dir == Direction::kUp ? is_expansion_closed(p) : is_restriction_closed(p);
        if (!closed) {
          cones[key] = nullptr;
          line(std::string("cones ") + key, "not applicable");
          continue;
        }
        auto gens = cone_decomposition(p, dir);
        cones[key] = members_json(a, gens);
        std::string g;
        for (SymbolSet m : gens) g += (g.empty() ? "" : " ") + format_element(a, m);
        line(std::string("cones ") + key, g.empty() ? "(none)" : g);
      }
      auto collapse = check_lattice_cone_collapse(p);
      auto side = [&](const ConeCollapse& cc) -> json {
        if (!cc.preconditions) return {{"preconditions", false}, {"failed", cc.failed_precondition}};
        return {{"preconditions", true}, {"generator", a.names(*cc.generator)}, {"equals_cone", cc.equals_cone}};
      };
      cones["collapse_lower"] = side(collapse.lower);
      cones["collapse_upper"] = side(collapse.upper);
      result["cones"] = cones;
      for (auto [cc, key] : {std::pair{&collapse.lower, "lower"}, std::pair{&collapse.upper, "upper"}}) {
        line(std::string("collapse ") + key,
             cc->preconditions ? format_element(a, *cc->generator) + (cc->equals_cone ? "" : " (mismatch)")
                               : "precondition failed: " + cc->failed_precondition);
      }
    } else if (c == "duality") {
      const auto r = verify_duality(p);
      result["duality"] = {{"consistent", r.consistent()},
                           {"E_closed", r.expansion_closed},
                           {"R_closed", r.restriction_closed},
                           {"complement_E_closed", r.complement_expansion_closed},
                           {"complement_R_closed", r.complement_restriction_closed},
                           {"ER_triviality", check_er_triviality(p)}};
      line("duality", r.consistent() ? "consistent" : "inconsistent");
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown check '" + c + "'");
    }
  }
  return structured(o) ? dump(result) : text;
}

std::string cmd_report(const Options& o) {
  const auto s = load_structure(o, 0);
  const auto formulas = load_formulas(o);
  if (formulas.empty()) throw Error(ErrorKind::kInvalidArgument, "report needs at least one formula");
  if (o.splits.size() != formulas.size() && o.splits.size() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "give one --split per formula or one shared split");
  }
  std::vector<std::pair<Formula, Split>> items;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    items.emplace_back(formulas[i], parse_split(o.splits[o.splits.size() == 1 ? 0 : i]));
  }
  ReportOptions ro;
  ro.max_k = ro.max_r = ro.max_m = o.max;
  ro.search = search_options(o);
  return format_records(o, indicator_report(s, items, ro));
}

Generated run_corpus(const std::string& name, const Options& o) {
  if (name == "matching-pair") return gen_matching_pair(o.m, int_list(o.wiring));
  if (name == "order-predicate") return gen_order_with_predicate(o.n, int_list(o.pattern));
  if (name == "ehrenfeucht") return gen_ehrenfeucht_encoding(o.q, o.constants);
  if (name == "bijection-pair") return gen_bijection_pair(o.n);
  if (name == "comb-ladder") return gen_comb_ladder(o.m);
  if (name == "bipartite-encoding") return gen_random_bipartite_encoding(o.m);
  if (name == "bounded-equivalence") return gen_bounded_equivalence(o.n, o.c);
  if (name == "singleton-orbit") return gen_singleton_orbit(o.n);
  throw Error(ErrorKind::kInvalidArgument, "unknown generator '" + name + "'");
}

void report_domain_error(const std::string& kind, const std::string& message,
                         std::optional<std::pair<int, int>> position = std::nullopt) {
  json j = {{"error", kind}, {"message", message}};
  if (position) {
    j["line"] = position->first;
    j["column"] = position->second;
  }
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structlab: finite structures, definability and combinatorial indicators"};
  app.require_subcommand(1);
  Options o;

  auto structure = [&](CLI::App* c, bool two = false) {
    auto* opt = c->add_option("--structure", o.structures, two ? "structure files (give two)" : "structure file")
                    ->required();
    if (two) {
      opt->expected(1, 2);
    } else {
      opt->expected(1);
    }
  };
  auto formula = [&](CLI::App* c, bool many = false) {
    auto* f = c->add_option("--formula", o.formulas, "formula text");
    if (!many) f->expected(1);
    c->add_option("--formula-file", o.formula_file, "file with one formula per line");
  };
  auto format = [&](CLI::App* c, bool csv = false) {
    std::vector<std::string> allowed = {"text", "structured"};
    if (csv) allowed.push_back("csv");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto output = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output file"); };
  auto jobs = [&](CLI::App* c) { c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256)); };
  auto budget = [&](CLI::App* c) { c->add_option("--budget", o.budget, "search budget (nodes)"); };
  auto mode = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "strict or setwise")->check(CLI::IsMember({"strict", "setwise"}));
  };
  auto common = [&](CLI::App* c, bool csv = false) {
    format(c, csv);
    output(c);
  };

  auto* eval = app.add_subcommand("eval", "evaluate a formula under an assignment");
  structure(eval);
  formula(eval);
  eval->add_option("--params", o.params, "assignment such as x=3,y=0");
  common(eval);

  auto* defset = app.add_subcommand("defset", "list the tuples defined by a formula");
  structure(defset);
  formula(defset);
  defset->add_option("--free", o.free, "free variable order, e.g. x,y")->required();
  defset->add_option("--params", o.params, "parameter values such as z=2");
  jobs(defset);
  common(defset);

  auto* types = app.add_subcommand("types", "partition m-tuples by rank-q type");
  structure(types);
  types->add_option("--arity", o.arity, "tuple length m");
  types->add_option("--rank", o.rank, "quantifier rank q");
  budget(types);
  common(types);

  auto* ef = app.add_subcommand("ef", "solve an Ehrenfeucht-Fraisse game");
  structure(ef, true);
  ef->add_option("--tuple-a", o.tuple_a, "start tuple in the first structure");
  ef->add_option("--tuple-b", o.tuple_b, "start tuple in the second structure");
  ef->add_option("--rank", o.rank, "number of rounds");
  budget(ef);
  common(ef);

  std::map<std::string, CLI::App*> indicators;
  for (const char* name : {"ladder", "sop", "vc"}) {
    auto* c = app.add_subcommand(name, std::string(name) == "ladder" ? "ladder index"
                                       : std::string(name) == "sop" ? "strict order chain"
                                                                    : "VC dimension");
    structure(c);
    formula(c);
    c->add_option("--split", o.splits, "variable split such as x;y")->required()->expected(1);
    c->add_option("--max", o.max, "upper bound for the search")->check(CLI::PositiveNumber);
    budget(c);
    jobs(c);
    common(c, true);
    indicators[name] = c;
  }

  auto* minprofile = app.add_subcommand("minprofile", "co-finiteness defect of one-variable formulas");
  structure(minprofile);
  formula(minprofile, true);
  minprofile->add_option("--split", o.splits, "object;parameters, per formula or shared");
  jobs(minprofile);
  common(minprofile);

  auto* fuse_cmd = app.add_subcommand("fuse", "union of two structures on one universe");
  structure(fuse_cmd, true);
  common(fuse_cmd);
  auto* intersect_cmd = app.add_subcommand("intersect", "common restriction of two structures");
  structure(intersect_cmd, true);
  common(intersect_cmd);
  auto* restrict_cmd = app.add_subcommand("restrict", "keep only the named symbols");
  structure(restrict_cmd);
  restrict_cmd->add_option("--keep", o.keep, "symbols to keep, e.g. R1,R2")->required();
  common(restrict_cmd);

  auto* reg = app.add_subcommand("regularize", "graphs for functions and constants, one name per extent");
  structure(reg);
  reg->add_option("--map", o.map_out, "write the name map to this file");
  common(reg);
  auto* dereg = app.add_subcommand("deregularize", "undo regularization from a name map");
  structure(dereg);
  dereg->add_option("--map", o.map, "name map file");
  common(dereg);

  auto* perm = app.add_subcommand("perm", "apply a universe permutation");
  structure(perm);
  perm->add_option("--perm", o.perm, "image list such as [2,0,1]")->required();
  common(perm);

  auto* autos = app.add_subcommand("autos", "automorphisms");
  structure(autos);
  mode(autos);
  autos->add_flag("--generators", o.generators, "stabilizer-chain generators only (no size cap)");
  autos->add_option("--cap", o.cap, "largest universe for full enumeration");
  common(autos);

  auto* invariant = app.add_subcommand("invariant", "invariance under all permutations");
  structure(invariant);
  mode(invariant);
  common(invariant);

  auto* lattice = app.add_subcommand("lattice", "properties in the restriction algebra of an ambient");
  structure(lattice);
  lattice->add_option("--property", o.property, "property rule file");
  lattice->add_option("--check", o.check, "comma list of E,R,L,perm,cones,duality");
  lattice->add_option("--samples", o.samples, "random properties to sweep when no rule is given");
  lattice->add_option("--seed", o.seed, "seed for --samples");
  mode(lattice);
  common(lattice);

  auto* corpus = app.add_subcommand("corpus", "generate a corpus structure");
  std::string corpus_name;
  corpus->add_option("name", corpus_name,
                     "matching-pair, order-predicate, ehrenfeucht, bijection-pair, comb-ladder, "
                     "bipartite-encoding, bounded-equivalence or singleton-orbit")
      ->required();
  corpus->add_option("--m", o.m, "half size, rung count or column count");
  corpus->add_option("--n", o.n, "universe size");
  corpus->add_option("--c", o.c, "class size");
  corpus->add_option("--q", o.q, "base row length");
  corpus->add_option("--constants", o.constants, "number of marked points");
  corpus->add_option("--wiring", o.wiring, "cycle lengths such as 4,8");
  corpus->add_option("--pattern", o.pattern, "predicate elements such as 1,3");
  common(corpus);

  auto* report = app.add_subcommand("report", "every indicator for a list of formulas");
  structure(report);
  formula(report, true);
  report->add_option("--split", o.splits, "split per formula or one shared")->required();
  report->add_option("--max", o.max, "upper bound for every search")->check(CLI::PositiveNumber);
  budget(report);
  jobs(report);
  common(report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string out;
    if (*eval) out = cmd_eval(o);
    else if (*defset) out = cmd_defset(o);
    else if (*types) out = cmd_types(o);
    else if (*ef) out = cmd_ef(o);
    else if (*minprofile) out = cmd_minprofile(o);
    else if (*fuse_cmd) out = cmd_fuse(o);
    else if (*intersect_cmd) out = cmd_intersect(o);
    else if (*restrict_cmd) out = cmd_restrict(o);
    else if (*reg) out = cmd_regularize(o);
    else if (*dereg) out = cmd_deregularize(o);
    else if (*perm) out = cmd_perm(o);
    else if (*autos) out = cmd_autos(o);
    else if (*invariant) out = cmd_invariant(o);
    else if (*lattice) out = cmd_lattice(o);
    else if (*report) out = cmd_report(o);
    else if (*corpus) {
      const auto g = run_corpus(corpus_name, o);
      out = structure_output(o, g.structure, g.header);
    } else {
      for (const auto& [name, c] : indicators) {
        if (*c) out = cmd_indicator(o, name);
      }
    }
    emit(o, out);
  } catch (const SyntaxError& e) {
    report_domain_error(std::string(error_kind_name(e.kind())), e.what(), std::pair{e.line(), e.column()});
    return 1;
  } catch (const Error& e) {
    report_domain_error(std::string(error_kind_name(e.kind())), e.what());
    return 1;
  } catch (const IoError& e) {
    report_domain_error("io", e.what());
    return 1;
  }
  return 0;
}
