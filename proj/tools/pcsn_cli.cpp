// pcsn: prize-collecting Steiner network solver CLI.
// Subcommands: gen | solve | reduce | verify | trace | bench.
// Exit codes: 0 ok, 1 verification failure, 2 parse/missing input,
// 3 capacity (budget) error, 4 infeasible configuration.

#include "pcsn/clustering.hpp"
#include "pcsn/errors.hpp"
#include "pcsn/gadgets.hpp"
#include "pcsn/generators.hpp"
#include "pcsn/instance_io.hpp"
#include "pcsn/oracle.hpp"
#include "pcsn/reduction.hpp"
#include "pcsn/treedp.hpp"
#include "pcsn/treewidth.hpp"
#include "pcsn/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pcsn;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitParse = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitConfig = 4;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void put_rat(json& j, const std::string& field, const Rat& value) {
  j[field] = rat_to_string(value);
  j[field + "_frac"] = rat_to_fraction(value);
}

json solution_json(const Instance& inst, const Solution& sol, const std::string& alg) {
  json j;
  j["algorithm"] = alg;
  put_rat(j, "total", sol.total);
  put_rat(j, "length", sol.length);
  put_rat(j, "penalty", sol.penalty);
  j["satisfied"] = json::array();
  for (int d = 0; d < inst.num_demands(); ++d)
    if (sol.satisfied & (DemandMask{1} << d)) j["satisfied"].push_back(d);
  j["witness_edges"] = json::array();
  for (std::size_t i = 0; i < sol.edges.size(); ++i)
    j["witness_edges"].push_back(json::array({sol.edges[i], sol.multiplicities[i]}));
  return j;
}

json dual_json(const Instance& inst, const ClusteringOutput& out) {
  json j;
  j["forest"] = out.forest;
  j["dead"] = json::array();
  for (int d = 0; d < inst.num_demands(); ++d)
    if (out.dead & (DemandMask{1} << d)) j["dead"].push_back(d);
  j["clusters"] = json::array();
  for (const ClusterNode& c : out.dual.clusters) {
    json cj;
    cj["vertices"] = c.vertices;
    put_rat(cj, "y", c.y_total);
    cj["y_demand"] = json::array();
    for (const auto& [d, y] : c.y_demand)
      cj["y_demand"].push_back(json::array({d, rat_to_fraction(y)}));
    j["clusters"].push_back(std::move(cj));
  }
  j["y_demand"] = json::array();
  for (const Rat& y : out.dual.y_demand) j["y_demand"].push_back(rat_to_fraction(y));
  return j;
}

// Reads a dual artifact back into a shape verify can check.
struct DualArtifact {
  std::vector<int> forest;
  DemandMask dead = 0;
  DualState dual;
};

DualArtifact dual_from_json(const json& j) {
  DualArtifact art;
  for (const auto& e : j.at("forest")) art.forest.push_back(e.get<int>());
  for (const auto& d : j.at("dead")) art.dead |= DemandMask{1} << d.get<int>();
  for (const auto& cj : j.at("clusters")) {
    ClusterNode node;
    for (const auto& v : cj.at("vertices")) node.vertices.push_back(v.get<int>());
    node.y_total = parse_rat(cj.at("y_frac").get<std::string>());
    for (const auto& pair : cj.at("y_demand"))
      node.y_demand[pair[0].get<int>()] = parse_rat(pair[1].get<std::string>());
    art.dual.clusters.push_back(std::move(node));
  }
  for (const auto& y : j.at("y_demand"))
    art.dual.y_demand.push_back(parse_rat(y.get<std::string>()));
  return art;
}

NiceDecomposition decomposition_for(const Instance& inst, const std::string& td_path,
                                    int root) {
  TreeDecomposition td;
  if (!td_path.empty())
    td = decomposition_from_pace(read_file(td_path));
  else
    td = heuristic_decompose(inst.graph());
  return to_nice(td, inst.graph(), root);
}

Graph named_source_graph(const std::string& name) {
  if (name == "k4") return source_graph_k4();
  if (name == "k33") return source_graph_k33();
  if (name == "prism") return source_graph_prism();
  if (name == "petersen") return source_graph_petersen();
  throw DomainError("unknown source graph: " + name +
                    " (expected k4|k33|prism|petersen)");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

int run_gen(const std::string& kind, const RandomSpec& spec, const std::string& graph,
            std::int64_t scale_divisor, const std::string& out_path) {
  Instance inst;
  if (kind == "vc-gadget") {
    inst = gen_vc_gadget(named_source_graph(graph)).instance;
  } else if (kind == "euclid-gadget") {
    inst = gen_euclidean_gadget(named_source_graph(graph), scale_divisor).instance;
  } else {
    RandomSpec s = spec;
    s.kind = random_kind_from_name(kind);
    inst = gen_random(s);
  }
  std::string text = instance_to_json(inst);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int run_solve(const std::string& inst_path, const std::string& alg,
              const std::string& problem, const std::string& td_path,
              const Rat& epsilon, const std::string& initial_kind,
              const std::string& out_path, const std::string& dual_path) {
  Instance inst = load_instance(inst_path);
  OracleBudget budget = OracleBudget::from_env();
  const bool needs_root = problem == "tsp" || problem == "stroll" || alg == "dp";
  if (needs_root && !inst.root())
    throw std::invalid_argument("problem/algorithm requires a rooted instance");

  Timer timer;
  Solution sol;
  json extra;
  if (alg == "exact") {
    if (problem == "tsp")
      sol = oracle_tour(inst, budget);
    else if (problem == "stroll")
      sol = oracle_stroll(inst, budget);
    else
      sol = oracle_spcsf(inst, budget);
  } else if (alg == "dp") {
    NiceDecomposition nd = decomposition_for(inst, td_path, *inst.root());
    if (problem == "tsp")
      sol = dp_pctsp(inst, nd);
    else if (problem == "stroll")
      sol = dp_pcs(inst, nd);
    else
      sol = dp_pcst(inst, nd);
  } else if (alg == "cluster") {
    ClusteringOutput out = submodular_pc_clustering(inst);
    sol = solution_cost(inst, out.forest);
    if (!dual_path.empty()) write_file(dual_path, dual_json(inst, out).dump(2) + "\n");
  } else if (alg == "restrict") {
    InitialSolver initial = initial_kind == "cluster" ? clustering_initial_solver()
                                                      : exact_initial_solver();
    RestrictOutput out = restrict_demands(inst, epsilon, initial);
    sol = solution_cost(inst, out.forest);
    extra["dropped"] = json::array();
    for (int d = 0; d < inst.num_demands(); ++d)
      if (out.dropped & (DemandMask{1} << d)) extra["dropped"].push_back(d);
    if (!dual_path.empty()) {
      // The dual lives on the derived instance (zeroed F+ edges, scaled
      // penalties); embed it so verification is self-contained.
      json dj = dual_json(out.derived_instance, out.clustering);
      dj["instance"] = json::parse(instance_to_json(out.derived_instance));
      write_file(dual_path, dj.dump(2) + "\n");
    }
  } else {
    throw std::invalid_argument("unknown algorithm: " + alg);
  }

  json j = solution_json(inst, sol, alg);
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  std::cerr << "solved in " << timer.ms() << " ms\n";
  return 0;
}

int run_reduce(const std::string& inst_path, const Rat& epsilon,
               const std::string& initial_kind, const std::string& out_dir) {
  Instance inst = load_instance(inst_path);
  InitialSolver initial = initial_kind == "cluster" ? clustering_initial_solver()
                                                    : exact_initial_solver();
  PipelineOutput pipe = reduction_pipeline(inst, epsilon, initial);
  fs::create_directories(out_dir);

  json manifest;
  put_rat(manifest, "epsilon", epsilon);
  manifest["dropped"] = json::array();
  for (int d = 0; d < inst.num_demands(); ++d)
    if (pipe.restricted.dropped & (DemandMask{1} << d)) manifest["dropped"].push_back(d);
  put_rat(manifest, "penalty_offset", pipe.restricted.restricted_penalty.eval(0));
  manifest["pieces"] = json::array();
  for (std::size_t i = 0; i < pipe.merged.trees.size(); ++i) {
    std::vector<int> ids;
    Instance sub = piece_instance(inst, pipe, static_cast<int>(i), &ids);
    std::ostringstream name;
    name << "piece_" << i << ".json";
    save_instance(sub, (fs::path(out_dir) / name.str()).string());
    json pj;
    pj["file"] = name.str();
    pj["demands"] = ids;
    manifest["pieces"].push_back(std::move(pj));
  }
  json base;
  base["forest"] = pipe.restricted.forest;
  put_rat(base, "forest_length", pipe.restricted.forest_length);
  manifest["restrict"] = std::move(base);
  write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

  // Merge artifact for `verify --merge`.
  json merge;
  merge["base_forest"] = pipe.restricted.forest;
  merge["trees"] = json::array();
  for (const auto& tree : pipe.merged.trees) merge["trees"].push_back(tree);
  merge["demand_partition"] = json::array();
  for (DemandMask part : pipe.merged.demand_partition) {
    json ids = json::array();
    for (int d = 0; d < inst.num_demands(); ++d)
      if (part & (DemandMask{1} << d)) ids.push_back(d);
    merge["demand_partition"].push_back(std::move(ids));
  }
  write_file((fs::path(out_dir) / "merge.json").string(), merge.dump(2) + "\n");
  return 0;
}

int run_verify(const std::string& inst_path, const std::string& dual_path,
               const std::string& merge_path, const Rat& epsilon) {
  Instance inst = load_instance(inst_path);
  CheckReport total;
  if (!dual_path.empty()) {
    json j = json::parse(read_file(dual_path));
    // A restrict dual embeds the derived instance it was produced on.
    Instance target =
        j.contains("instance") ? parse_instance_json(j.at("instance").dump()) : inst;
    DualArtifact art = dual_from_json(j);
    ClusteringOutput out;
    out.forest = art.forest;
    out.dead = art.dead;
    out.dual = std::move(art.dual);
    std::vector<int> cluster_of(target.graph().num_vertices());
    for (int v = 0; v < target.graph().num_vertices(); ++v) {
      for (std::size_t c = 0; c < out.dual.clusters.size(); ++c)
        if (out.dual.clusters[c].contains(v)) cluster_of[v] = static_cast<int>(c);
    }
    out.cluster_of = std::move(cluster_of);
    CheckReport report = verify_clustering_output(target, out);
    for (const std::string& f : report.failures) total.failures.push_back(f);
  }
  if (!merge_path.empty()) {
    json j = json::parse(read_file(merge_path));
    std::vector<int> base_forest;
    for (const auto& e : j.at("base_forest")) base_forest.push_back(e.get<int>());
    MergeOutput merged;
    DemandMask considered = 0;
    for (const auto& part : j.at("demand_partition")) {
      DemandMask mask = 0;
      for (const auto& d : part) mask |= DemandMask{1} << d.get<int>();
      merged.demand_partition.push_back(mask);
      considered |= mask;
    }
    for (const auto& tree : j.at("trees")) {
      merged.trees.emplace_back();
      for (const auto& e : tree) merged.trees.back().push_back(e.get<int>());
    }
    merged.total_tree_length = 0;
    for (const auto& tree : merged.trees)
      merged.total_tree_length += inst.graph().length_of(tree);
    CheckReport report =
        verify_merge_output(inst, base_forest, merged, epsilon, considered);
    for (const std::string& f : report.failures) total.failures.push_back(f);
  }
  if (!total.ok()) {
    for (const std::string& f : total.failures) std::cout << "FAIL " << f << "\n";
    return kExitVerify;
  }
  std::cout << "PASS all checks\n";
  return 0;
}

int run_trace(const std::string& inst_path, const std::string& out_path) {
  Instance inst = load_instance(inst_path);
  ClusteringOutput out = submodular_pc_clustering(inst);
  std::string text = trace_to_jsonl(inst, out);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int run_bench(const std::string& corpus_dir, const std::string& out_path) {
  if (!fs::is_directory(corpus_dir)) throw DomainError("corpus is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  OracleBudget budget = OracleBudget::from_env();
  std::ostringstream csv;
  csv << "instance,algorithm,value,ratio_to_exact,wall_time_ms\n";
  for (const fs::path& file : files) {
    Instance inst = load_instance(file.string());
    std::optional<Rat> exact;
    {
      Timer t;
      try {
        Solution sol = oracle_spcsf(inst, budget);
        exact = sol.total;
        csv << file.filename().string() << ",exact," << rat_to_string(sol.total)
            << ",1," << t.ms() << "\n";
      } catch (const CapacityError&) {
        csv << file.filename().string() << ",exact,,," << t.ms() << "\n";
      }
    }
    auto emit = [&](const std::string& alg, const Solution& sol, const Timer& t) {
      csv << file.filename().string() << "," << alg << "," << rat_to_string(sol.total)
          << ",";
      if (exact && *exact != 0)
        csv << rat_to_string(sol.total / *exact);
      else if (exact && sol.total == 0)
        csv << "1";
      csv << "," << t.ms() << "\n";
    };
    {
      Timer t;
      ClusteringOutput out = submodular_pc_clustering(inst);
      emit("cluster", solution_cost(inst, out.forest), t);
    }
    if (inst.root() && inst.is_rooted() && inst.penalty().is_additive()) {
      Timer t;
      try {
        NiceDecomposition nd = decomposition_for(inst, "", *inst.root());
        emit("dp", dp_pcst(inst, nd), t);
      } catch (const DomainError&) {
        // Not DP-solvable (e.g. non-additive after projection); skip the row.
      }
    }
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"prize-collecting Steiner network toolbox"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_kind = "grid";
  RandomSpec spec;
  std::string gen_graph = "k4";
  std::int64_t scale_divisor = 1;
  std::string gen_out;
  std::string penalty_kind = "additive";
  gen->add_option("kind", gen_kind,
                  "grid|series-parallel|erdos-renyi|vc-gadget|euclid-gadget");
  gen->add_option("--rows", spec.rows);
  gen->add_option("--cols", spec.cols);
  gen->add_option("--n", spec.n);
  gen->add_option("--edge-percent", spec.edge_percent);
  gen->add_option("--demands", spec.demand_count);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--penalty", penalty_kind, "additive|capped");
  gen->add_flag("--rooted", spec.rooted);
  gen->add_option("--graph", gen_graph, "k4|k33|prism|petersen");
  gen->add_option("--scale-divisor", scale_divisor);
  gen->add_option("--out", gen_out);

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string inst_path, alg = "exact", problem = "sf", td_path, out_path, dual_path;
  std::string epsilon_text = "1/2", initial_kind = "exact";
  solve->add_option("instance", inst_path)->required();
  solve->add_option("--alg", alg, "exact|dp|cluster|restrict");
  solve->add_option("--problem", problem, "sf|st|tsp|stroll");
  solve->add_option("--td", td_path, "PACE decomposition file");
  solve->add_option("--epsilon", epsilon_text);
  solve->add_option("--initial", initial_kind, "exact|cluster");
  solve->add_option("--out", out_path);
  solve->add_option("--dual", dual_path, "write the clustering dual artifact");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "restrict + merge, export pieces");
  std::string red_inst, red_out = "pieces";
  std::string red_eps = "1/2", red_initial = "exact";
  reduce->add_option("instance", red_inst)->required();
  reduce->add_option("--epsilon", red_eps);
  reduce->add_option("--initial", red_initial, "exact|cluster");
  reduce->add_option("--out", red_out);

  // verify
  auto* verify = app.add_subcommand("verify", "re-check solver artifacts");
  std::string ver_inst, ver_dual, ver_merge;
  std::string ver_eps = "1/2";
  verify->add_option("instance", ver_inst)->required();
  verify->add_option("--dual", ver_dual);
  verify->add_option("--merge", ver_merge);
  verify->add_option("--epsilon", ver_eps);

  // trace
  auto* trace = app.add_subcommand("trace", "clustering event trace as JSON lines");
  std::string tr_inst, tr_out;
  trace->add_option("instance", tr_inst)->required();
  trace->add_option("--out", tr_out);

  // bench
  auto* bench = app.add_subcommand("bench", "run a corpus, emit CSV");
  std::string bench_dir, bench_out;
  bench->add_option("corpus", bench_dir)->required();
  bench->add_option("--out", bench_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen(gen_kind, [&] {
             RandomSpec s = spec;
             s.capped_penalty = penalty_kind == "capped";
             return s;
           }(), gen_graph, scale_divisor, gen_out);
    if (*solve)
      return run_solve(inst_path, alg, problem, td_path, parse_rat(epsilon_text),
                       initial_kind, out_path, dual_path);
    if (*reduce) return run_reduce(red_inst, parse_rat(red_eps), red_initial, red_out);
    if (*verify) return run_verify(ver_inst, ver_dual, ver_merge, parse_rat(ver_eps));
    if (*trace) return run_trace(tr_inst, tr_out);
    if (*bench) return run_bench(bench_dir, bench_out);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
