#include "pcsn/instance_io.hpp"

#include "pcsn/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pcsn {

using json = nlohmann::ordered_json;

namespace {

Rat rat_field(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  throw DomainError("rational fields must be strings or integers");
}

PenaltyFn parse_penalty(const json& j, int demand_count) {
  if (!j.is_object() || !j.contains("kind"))
    throw DomainError("penalty object with a kind is required");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "table") {
    std::vector<Rat> values;
    for (const auto& v : j.at("values")) values.push_back(rat_field(v));
    int ground = 0;
    while ((std::size_t{1} << ground) < values.size()) ++ground;
    if ((std::size_t{1} << ground) != values.size())
      throw DomainError("table penalty values must have power-of-two length");
    if (ground != demand_count)
      throw DomainError("table penalty ground size must match demand count");
    return PenaltyFn::table(ground, std::move(values));
  }
  std::vector<Rat> values;
  for (const auto& v : j.at("values")) values.push_back(rat_field(v));
  if (static_cast<int>(values.size()) != demand_count)
    throw DomainError("penalty values must match demand count");
  if (kind == "additive") return PenaltyFn::additive(std::move(values));
  if (kind == "capped")
    return PenaltyFn::capped_additive(std::move(values), rat_field(j.at("cap")));
  throw DomainError("unknown penalty kind: " + kind);
}

} // namespace

Instance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(std::string("instance JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("instance must be a JSON object");
  Graph g(j.at("vertices").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw DomainError("edge entries are [u, v, cost]");
    g.add_edge(e[0].get<int>(), e[1].get<int>(), rat_field(e[2]));
  }
  std::vector<Demand> demands;
  for (const auto& d : j.at("demands")) {
    if (!d.is_array() || d.size() != 2) throw DomainError("demand entries are [s, t]");
    demands.push_back({d[0].get<int>(), d[1].get<int>()});
  }
  PenaltyFn pi = parse_penalty(j.at("penalty"), static_cast<int>(demands.size()));
  std::optional<int> root;
  if (j.contains("root") && !j.at("root").is_null()) root = j.at("root").get<int>();
  Instance inst(std::move(g), std::move(demands), std::move(pi), root);
  if (j.contains("points")) {
    std::vector<std::array<std::int64_t, 2>> pts;
    for (const auto& p : j.at("points"))
      pts.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
    if (static_cast<int>(pts.size()) != inst.graph().num_vertices())
      throw DomainError("points array must cover every vertex");
    inst.set_points(std::move(pts));
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["vertices"] = inst.graph().num_vertices();
  j["edges"] = json::array();
  for (const Edge& e : inst.graph().edges())
    j["edges"].push_back(json::array({e.u, e.v, rat_to_string(e.cost)}));
  j["demands"] = json::array();
  for (const Demand& d : inst.demands())
    j["demands"].push_back(json::array({d.s, d.t}));
  json pi;
  const PenaltyFn& p = inst.penalty();
  // Scaled additive/capped views bake into plain values; a forced-union view
  // (or an explicit table) exports as a table.
  const bool needs_table = p.kind() == PenaltyFn::Kind::Table || p.forced_union() != 0;
  if (needs_table && p.ground_size() > 20)
    throw CapacityError("penalty view export needs a table (ground <= 20)");
  if (needs_table) {
    pi["kind"] = "table";
    pi["values"] = json::array();
    for (DemandMask m = 0; m < (DemandMask{1} << p.ground_size()); ++m)
      pi["values"].push_back(rat_to_string(p.eval(m)));
  } else {
    pi["kind"] = p.kind() == PenaltyFn::Kind::Additive ? "additive" : "capped";
    pi["values"] = json::array();
    for (const Rat& v : p.per_demand())
      pi["values"].push_back(rat_to_string(p.scale_factor() * v));
    if (p.kind() == PenaltyFn::Kind::CappedAdditive)
      pi["cap"] = rat_to_string(p.scale_factor() * p.cap());
  }
  j["penalty"] = std::move(pi);
  if (inst.root()) j["root"] = *inst.root();
  if (!inst.points().empty()) {
    j["points"] = json::array();
    for (const auto& pt : inst.points()) j["points"].push_back(json::array({pt[0], pt[1]}));
  }
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write instance file: " + path);
  out << instance_to_json(inst);
}

} // namespace pcsn
