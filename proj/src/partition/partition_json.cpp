#include "incwb/partition/partition.hpp"

namespace incwb {

std::string_view to_string(SearchStatus s) { return s == SearchStatus::Ok ? "ok" : "budget_exhausted"; }
std::string_view to_string(CrossingKind k) { return k == CrossingKind::Exact ? "exact" : "lower_bound"; }

Json to_json(const PartitionResult& r, bool with_points) {
  Json j;
  j["schema"] = "incwb.partition/1";
  j["dim"] = r.dim;
  j["r"] = r.r;
  j["delta"] = r.delta;
  j["status"] = std::string(to_string(r.status));
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"degree", s.degree},
                      {"sets", s.sets},
                      {"imbalance", s.imbalance},
                      {"restart", s.restart},
                      {"status", std::string(to_string(s.status))}});
  j["stages"] = std::move(stages);
  Json bisectors = Json::array();
  for (const auto& b : r.bisectors) bisectors.push_back(to_json(b));
  j["bisectors"] = std::move(bisectors);
  j["product_degree"] = r.product_degree();
  j["interior"] = r.interior;
  j["on_surface"] = r.on_surface;
  j["max_class"] = r.max_class();
  j["classes"] = r.occupancy.size();
  Json occ = Json::object();
  for (const auto& [key, count] : r.occupancy) occ[key] = count;
  j["occupancy"] = std::move(occ);
  if (with_points) {
    Json signs = Json::array();
    for (const auto& s : r.signs) signs.push_back(sign_key(s));
    j["point_classes"] = std::move(signs);
  }
  return j;
}

Json to_json(const CrossingStats& c) {
  Json j;
  j["kind"] = std::string(to_string(c.kind));
  j["contained"] = c.contained;
  j["classes_visited"] = c.classes_visited;
  j["surface_crossings"] = c.surface_crossings;
  j["classes"] = c.classes;
  return j;
}

}  // namespace incwb
