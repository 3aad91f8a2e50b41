#include "lipcap/scene_io.hpp"

#include <fstream>

namespace lipcap {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    fail(ErrorCode::BadInput, "expected [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json scene_to_json(const Scene& scene) {
  Json j;
  j["root"] = {{"m", scene.root.m}, {"r", scene.root.r}, {"n", scene.root.n}};
  Json shapes = Json::array();
  for (const Shape& shape : scene.shapes) {
    std::visit(
        [&shapes](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          Json item;
          if constexpr (std::is_same_v<T, Segment>) {
            item["type"] = "segment";
            item["from"] = complex_to_json(s.a);
            item["to"] = complex_to_json(s.b);
          } else if constexpr (std::is_same_v<T, Disc>) {
            item["type"] = "disc";
            item["center"] = complex_to_json(s.center);
            item["radius"] = s.radius;
          } else if constexpr (std::is_same_v<T, DyadicSquare>) {
            item["type"] = "dyadic";
            item["m"] = s.m;
            item["r"] = s.r;
            item["n"] = s.n;
          } else {
            item["type"] = "bitmap";
            item["n"] = s.level;
            Json cells = Json::array();
            for (const auto& [m, r] : s.cells) cells.push_back(Json::array({m, r}));
            item["cells"] = cells;
          }
          shapes.push_back(item);
        },
        shape);
  }
  j["shapes"] = shapes;
  if (scene.parametric) {
    const auto& d = *scene.parametric;
    j["parametric"] = {
        {"kind", d.kind == DomainKind::Slit ? "slit" : "roadrunner"},
        {"a0", d.a0}, {"q", d.q}, {"c0", d.c0}, {"p", d.p},
        {"R", d.enclosing_radius}};
  }
  return j;
}

Scene scene_from_json(const Json& j) {
  Scene scene;
  if (j.contains("root")) {
    const Json& root = j.at("root");
    scene.root = DyadicSquare{root.at("m").get<std::int64_t>(),
                              root.at("r").get<std::int64_t>(),
                              root.at("n").get<int>()};
    if (scene.root.n < 0) fail(ErrorCode::BadInput, "root level must be >= 0");
  }
  for (const Json& item : j.value("shapes", Json::array())) {
    std::string type = item.at("type").get<std::string>();
    if (type == "segment") {
      scene.shapes.push_back(Segment{complex_from_json(item.at("from")),
                                     complex_from_json(item.at("to"))});
    } else if (type == "disc") {
      scene.shapes.push_back(Disc{complex_from_json(item.at("center")),
                                  item.at("radius").get<double>()});
    } else if (type == "dyadic") {
      scene.shapes.push_back(DyadicSquare{item.at("m").get<std::int64_t>(),
                                          item.at("r").get<std::int64_t>(),
                                          item.at("n").get<int>()});
    } else if (type == "bitmap") {
      BitmapShape bitmap;
      bitmap.level = item.at("n").get<int>();
      for (const Json& cell : item.at("cells")) {
        bitmap.cells.emplace_back(cell[0].get<std::int64_t>(),
                                  cell[1].get<std::int64_t>());
      }
      scene.shapes.push_back(bitmap);
    } else {
      fail(ErrorCode::BadInput, "unknown shape type: " + type);
    }
  }
  if (j.contains("parametric")) {
    const Json& d = j.at("parametric");
    std::string kind = d.at("kind").get<std::string>();
    if (kind != "slit" && kind != "roadrunner") {
      fail(ErrorCode::BadInput, "parametric kind must be slit or roadrunner");
    }
    std::optional<double> radius;
    if (d.contains("R")) radius = d.at("R").get<double>();
    scene.parametric = ParametricDomain::make(
        kind == "slit" ? DomainKind::Slit : DomainKind::RoadRunner,
        d.at("a0").get<double>(), d.at("q").get<double>(),
        d.at("c0").get<double>(), d.at("p").get<double>(), radius);
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open scene file: " + path);
  Json j;
  in >> j;
  return scene_from_json(j);
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) {
    atoms.push_back(Json::array({a.position.real(), a.position.imag(), a.weight}));
  }
  return Json{{"atoms", atoms}, {"exclusion_radius", mu.exclusion_radius}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  DiscreteMeasure mu;
  for (const Json& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 3) {
      fail(ErrorCode::BadInput, "atom entries are [x, y, w]");
    }
    mu.atoms.push_back(
        {{a[0].get<double>(), a[1].get<double>()}, a[2].get<double>()});
  }
  mu.exclusion_radius = j.value("exclusion_radius", 0.0);
  return mu;
}

DiscreteMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open measure file: " + path);
  Json j;
  in >> j;
  return measure_from_json(j);
}

Json grid_function_to_json(const GridFunction& f) {
  return Json{{"origin", complex_to_json(f.origin)},
              {"spacing", f.spacing},
              {"rows", f.rows},
              {"cols", f.cols},
              {"values", f.values}};
}

GridFunction grid_function_from_json(const Json& j) {
  GridFunction f;
  f.origin = complex_from_json(j.at("origin"));
  f.spacing = j.at("spacing").get<double>();
  f.rows = j.at("rows").get<int>();
  f.cols = j.at("cols").get<int>();
  f.values = j.at("values").get<std::vector<double>>();
  if (f.rows < 1 || f.cols < 1 ||
      f.values.size() != static_cast<std::size_t>(f.rows) * f.cols) {
    fail(ErrorCode::BadInput, "grid dimensions do not match the value count");
  }
  return f;
}

namespace {

const char* content_kind_name(ContentKind kind) {
  switch (kind) {
    case ContentKind::DyadicExact: return "DyadicExact";
    case ContentKind::GaugeDyadicExact: return "GaugeDyadicExact";
    case ContentKind::BallBracket: return "BallBracket";
    case ContentKind::LadderSequence: return "LadderSequence";
  }
  return "Unknown";
}

}  // namespace

Json content_result_to_json(const ContentResult& r, int depth) {
  Json j{{"value", r.value},
         {"kind", content_kind_name(r.kind)},
         {"depth", depth},
         {"truncated", r.depth_capped}};
  if (r.kind == ContentKind::BallBracket) {
    j["lower"] = r.lower;
    j["upper"] = r.upper;
  }
  if (r.kind == ContentKind::LadderSequence) j["ladder"] = r.ladder;
  return j;
}

Json growth_report_to_json(const GrowthReport& r) {
  return Json{{"max_ratio", r.max_ratio},
              {"worst", {{"center", complex_to_json(r.worst.center)},
                         {"radius", r.worst.radius}}},
              {"samples", r.samples},
              {"passes", r.passes()}};
}

Json ts_norm_to_json(const TsNormEstimate& e) {
  return Json{{"s", e.s},
              {"value", e.value},
              {"at", {{"z", complex_to_json(e.attaining_z)}, {"t", e.attaining_t}}},
              {"little_o_slope", e.little_o_slope},
              {"tmin_limited", e.tmin_limited}};
}

Json series_report_to_json(const SeriesReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back(Json{{"n", t.n}, {"term", t.value}, {"content", t.content}});
  }
  Json j{{"verdict", verdict_name(r.verdict)},
         {"terms", terms},
         {"partial_sums", r.partial_sums},
         {"dual_norm_estimate", r.dual_norm_estimate},
         {"truncation_index", r.truncation_index},
         {"warnings", r.warnings}};
  if (r.exact_sum) j["exact_sum"] = *r.exact_sum;
  if (!r.tail_model.empty()) j["tail_model"] = r.tail_model;
  if (!r.continuum_hits.empty()) j["continuum_hits"] = r.continuum_hits;
  if (r.ladder_capped) j["ladder_capped"] = true;
  return j;
}

Json partition_summary_to_json(const PartitionResult& r) {
  return Json{{"atomCount", r.atoms.size()},
              {"maxN" + std::to_string(r.k), r.max_nk},
              {"sumErrorMax", r.sum_error_max},
              {"supportViolations", r.support_violations}};
}

ParametricDomain parse_parametric_spec(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    fail(ErrorCode::BadInput, "expected kind:a0=..,q=..,c0=..,p=..");
  }
  std::string kind = text.substr(0, colon);
  if (kind != "slit" && kind != "roadrunner") {
    fail(ErrorCode::BadInput, "parametric kind must be slit or roadrunner");
  }
  double a0 = 0, q = 0, c0 = 0, p = 0;
  std::optional<double> radius;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto next = rest.find(',', pos);
    std::string field = rest.substr(pos, next == std::string::npos ? next : next - pos);
    auto eq = field.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::BadInput, "bad parametric field: " + field);
    }
    std::string key = field.substr(0, eq);
    double value = std::stod(field.substr(eq + 1));
    if (key == "a0") a0 = value;
    else if (key == "q") q = value;
    else if (key == "c0") c0 = value;
    else if (key == "p") p = value;
    else if (key == "R") radius = value;
    else fail(ErrorCode::BadInput, "unknown parametric field: " + key);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return ParametricDomain::make(
      kind == "slit" ? DomainKind::Slit : DomainKind::RoadRunner, a0, q, c0, p,
      radius);
}

}  // namespace lipcap
