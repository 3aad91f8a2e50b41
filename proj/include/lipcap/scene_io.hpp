#pragma once

#include <string>

#include "json.hpp"
#include "lipcap/content.hpp"
#include "lipcap/grid_function.hpp"
#include "lipcap/measure.hpp"
#include "lipcap/partition.hpp"
#include "lipcap/transforms.hpp"
#include "lipcap/wiener.hpp"

namespace lipcap {

using Json = nlohmann::json;

Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& j);
Scene load_scene(const std::string& path);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);
DiscreteMeasure load_measure(const std::string& path);

Json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

Json content_result_to_json(const ContentResult& r, int depth);
Json growth_report_to_json(const GrowthReport& r);
Json ts_norm_to_json(const TsNormEstimate& e);
Json series_report_to_json(const SeriesReport& r);
Json partition_summary_to_json(const PartitionResult& r);

// "slit:a0=0.5,q=0.5,c0=0.25,p=0.25" -> domain
ParametricDomain parse_parametric_spec(const std::string& text);

}  // namespace lipcap
