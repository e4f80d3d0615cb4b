#include "relumap/region_io.hpp"

#include <json.hpp>

#include "relumap/io_util.hpp"

namespace relumap {

using nlohmann::json;

namespace {

json vertices_to_json(const ConvexPolygon& poly) {
  json out = json::array();
  for (const Point2& p : poly.vertices) out.push_back(json::array({p.x(), p.y()}));
  return out;
}

}  // namespace

std::string arrangement_to_json(const RegionArrangement& arr) {
  const bool has_logits = !arr.regions.empty() && !arr.regions.front().logit_affines.empty();
  std::vector<DecisionCell> cells;
  if (has_logits) cells = decision_cells(arr);

  json doc;
  doc["domain"] = vertices_to_json(arr.domain);
  doc["per_layer_counts"] = arr.per_layer_counts;
  doc["layers_cut"] = arr.layers_cut;
  json regions = json::array();
  for (std::size_t i = 0; i < arr.regions.size(); ++i) {
    const LinearRegion& region = arr.regions[i];
    json entry;
    entry["vertices"] = vertices_to_json(region.cell);
    entry["pattern"] = pattern_to_string(region.pattern);
    entry["winner"] = has_logits ? cells[i].winner : -1;
    json affines = json::array();
    for (const Affine& f : region.logit_affines) {
      json a = json::array();
      for (Eigen::Index k = 0; k < f.a.size(); ++k) a.push_back(f.a(k));
      affines.push_back(json{{"a", std::move(a)}, {"b", f.b}});
    }
    entry["logit_affines"] = std::move(affines);
    regions.push_back(std::move(entry));
  }
  doc["regions"] = std::move(regions);
  return doc.dump(2) + "\n";
}

void write_region_dump(const std::filesystem::path& path, const RegionArrangement& arr) {
  write_file_atomic(path, arrangement_to_json(arr));
}

std::string line_scan_to_json(const LineScan& scan) {
  json doc;
  json a = json::array(), b = json::array();
  for (Eigen::Index i = 0; i < scan.a.size(); ++i) a.push_back(scan.a(i));
  for (Eigen::Index i = 0; i < scan.b.size(); ++i) b.push_back(scan.b(i));
  doc["a"] = std::move(a);
  doc["b"] = std::move(b);
  doc["breakpoints"] = scan.breakpoints;
  doc["count"] = scan.count();
  return doc.dump(2) + "\n";
}

}  // namespace relumap
