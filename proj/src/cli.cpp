#include "lipcap/cli.hpp"

#include <cstdio>
#include <optional>

#include "CLI11.hpp"
#include "lipcap/acceptance.hpp"
#include "lipcap/measure.hpp"
#include "lipcap/partition.hpp"
#include "lipcap/scene_io.hpp"
#include "lipcap/transforms.hpp"
#include "lipcap/wiener.hpp"

namespace lipcap {

namespace {

Complex parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    fail(ErrorCode::BadInput, "expected x,y");
  }
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

Gauge parse_gauge(const std::string& text, double beta) {
  if (text.empty() || text == "power") return Gauge(PowerLawGauge{beta});
  if (text.rfind("ladder:", 0) == 0) {
    double eta = 0.5;
    int j = 1;
    std::string rest = text.substr(7);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto next = rest.find(',', pos);
      std::string field =
          rest.substr(pos, next == std::string::npos ? next : next - pos);
      auto eq = field.find('=');
      if (eq == std::string::npos) fail(ErrorCode::BadInput, "bad gauge field");
      std::string key = field.substr(0, eq);
      if (key == "eta") eta = std::stod(field.substr(eq + 1));
      else if (key == "j") j = std::stoi(field.substr(eq + 1));
      else fail(ErrorCode::BadInput, "unknown gauge field: " + key);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return Gauge(LadderGauge{beta, eta, j});
  }
  fail(ErrorCode::BadInput, "unknown gauge spec: " + text);
}

struct SweepRange {
  double start = 0, stop = 0, step = 0;
};

SweepRange parse_range(const std::string& text) {
  auto first = text.find(':');
  auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    fail(ErrorCode::BadInput, "expected start:stop:step");
  }
  SweepRange range;
  range.start = std::stod(text.substr(0, first));
  range.stop = std::stod(text.substr(first + 1, second - first - 1));
  range.step = std::stod(text.substr(second + 1));
  if (!(range.step > 0)) fail(ErrorCode::BadInput, "step must be positive");
  return range;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"planar Hausdorff contents and annulus-series classifiers"};
  app.require_subcommand(1);

  // content
  auto* content_cmd = app.add_subcommand("content", "dyadic or gauge content of a scene");
  std::string content_scene, content_gauge;
  double content_beta = 0.5;
  int content_depth = 10;
  bool content_bracket = false, content_inner = false;
  content_cmd->add_option("--scene", content_scene)->required();
  content_cmd->add_option("--beta", content_beta)->required();
  content_cmd->add_option("--depth", content_depth);
  content_cmd->add_option("--gauge", content_gauge);
  content_cmd->add_flag("--bracket", content_bracket);
  content_cmd->add_flag("--inner", content_inner);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "series verdict for a domain");
  std::string classify_scene, classify_param, classify_b, classify_content = "upper";
  double classify_s = -0.5;
  int classify_k = 0, classify_nmax = 8, classify_depth = 10;
  classify_cmd->add_option("--scene", classify_scene);
  classify_cmd->add_option("--param", classify_param);
  classify_cmd->add_option("--s", classify_s)->required();
  classify_cmd->add_option("--k", classify_k);
  classify_cmd->add_option("--content", classify_content);
  classify_cmd->add_option("--nmax", classify_nmax);
  classify_cmd->add_option("--depth", classify_depth);
  classify_cmd->add_option("--b", classify_b);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV verdict sweep over s");
  std::string sweep_param, sweep_range;
  int sweep_k = 0;
  sweep_cmd->add_option("--param", sweep_param)->required();
  sweep_cmd->add_option("--s-range", sweep_range)->required();
  sweep_cmd->add_option("--k", sweep_k);

  // frostman
  auto* frostman_cmd = app.add_subcommand("frostman", "Frostman measure of a scene");
  std::string frostman_scene;
  double frostman_beta = 0.5;
  int frostman_depth = 8;
  bool frostman_check = false;
  frostman_cmd->add_option("--scene", frostman_scene)->required();
  frostman_cmd->add_option("--beta", frostman_beta)->required();
  frostman_cmd->add_option("--depth", frostman_depth);
  frostman_cmd->add_flag("--check", frostman_check);

  // poisson-norm
  auto* norm_cmd = app.add_subcommand("poisson-norm", "T_s norm estimate of a measure");
  std::string norm_measure;
  double norm_s = -2.0;
  int norm_nx = 64, norm_nt = 48;
  double norm_tmin = 0, norm_tmax = 4;
  norm_cmd->add_option("--measure", norm_measure)->required();
  norm_cmd->add_option("--s", norm_s)->required();
  norm_cmd->add_option("--grid-nx", norm_nx);
  norm_cmd->add_option("--grid-nt", norm_nt);
  norm_cmd->add_option("--tmin", norm_tmin);
  norm_cmd->add_option("--tmax", norm_tmax);

  // cauchy
  auto* cauchy_cmd = app.add_subcommand("cauchy", "Cauchy transform of a measure");
  std::string cauchy_measure, cauchy_at;
  cauchy_cmd->add_option("--measure", cauchy_measure)->required();
  cauchy_cmd->add_option("--at", cauchy_at)->required();

  // partition
  auto* partition_cmd = app.add_subcommand("partition", "partition of unity over a scene");
  std::string partition_scene;
  int partition_depth = 6, partition_k = 3;
  partition_cmd->add_option("--scene", partition_scene)->required();
  partition_cmd->add_option("--depth", partition_depth);
  partition_cmd->add_option("--k", partition_k);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  std::uint64_t verify_seed = 20250810;
  verify_cmd->add_option("--seed", verify_seed);

  std::vector<const char*> argv;
  argv.push_back("lipcap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (content_cmd->parsed()) {
      Scene scene = load_scene(content_scene);
      RasterSet raster = rasterize(
          scene, content_depth,
          content_inner ? RasterMode::Inner : RasterMode::Outer);
      ContentResult result;
      if (content_bracket) {
        result = ball_bracket(raster, content_beta);
      } else if (!content_gauge.empty()) {
        result = gauge_content(raster, parse_gauge(content_gauge, content_beta));
      } else {
        result = dyadic_content(raster, content_beta);
      }
      out << content_result_to_json(result, content_depth).dump(2) << "\n";
    } else if (classify_cmd->parsed()) {
      SeriesSpec spec;
      spec.s = classify_s;
      spec.k = classify_k;
      spec.content = classify_content == "lower" ? ContentSelector::Lower
                                                 : ContentSelector::Upper;
      if (!classify_b.empty()) spec.b = parse_point(classify_b);
      SeriesReport report;
      if (!classify_param.empty()) {
        report = classify_parametric(parse_parametric_spec(classify_param), spec);
      } else if (!classify_scene.empty()) {
        report = classify(load_scene(classify_scene), spec, classify_nmax,
                          classify_depth);
      } else {
        fail(ErrorCode::BadInput, "classify needs --scene or --param");
      }
      out << series_report_to_json(report).dump(2) << "\n";
    } else if (sweep_cmd->parsed()) {
      ParametricDomain domain = parse_parametric_spec(sweep_param);
      SweepRange range = parse_range(sweep_range);
      out << "s,verdict,sum\n";
      int steps = static_cast<int>(
          std::lround((range.stop - range.start) / range.step));
      for (int i = 0; i <= steps; ++i) {
        double s = range.start + i * range.step;
        SeriesSpec spec;
        spec.s = s;
        spec.k = sweep_k;
        SeriesReport report = classify_parametric(domain, spec);
        out << format_double(s) << "," << verdict_name(report.verdict) << ",";
        if (report.exact_sum) {
          out << format_double(*report.exact_sum);
        } else {
          out << "inf";
        }
        out << "\n";
      }
    } else if (frostman_cmd->parsed()) {
      Scene scene = load_scene(frostman_scene);
      RasterSet raster = rasterize(scene, frostman_depth);
      DiscreteMeasure mu = frostman(raster, frostman_beta);
      Json j = measure_to_json(mu);
      if (frostman_check) {
        j["growth"] = growth_report_to_json(growth_check(mu, frostman_beta));
      }
      out << j.dump(2) << "\n";
    } else if (norm_cmd->parsed()) {
      DiscreteMeasure mu = load_measure(norm_measure);
      PoissonGridSpec grid = PoissonGridSpec::for_measure(mu);
      grid.nx = grid.ny = norm_nx;
      grid.nt = norm_nt;
      if (norm_tmin > 0) grid.t_min = norm_tmin;
      grid.t_max = norm_tmax;
      out << ts_norm_to_json(ts_norm_estimate(mu, norm_s, grid)).dump(2) << "\n";
    } else if (cauchy_cmd->parsed()) {
      DiscreteMeasure mu = load_measure(cauchy_measure);
      Complex z = parse_point(cauchy_at);
      Complex value = cauchy_transform(mu, z);
      out << Json{{"value", {value.real(), value.imag()}}}.dump(2) << "\n";
    } else if (partition_cmd->parsed()) {
      Scene scene = load_scene(partition_scene);
      RasterSet raster = rasterize(scene, partition_depth);
      std::vector<DyadicSquare> cover;
      int level = raster.root.n + raster.depth;
      for (auto code : raster.leaves) {
        std::uint32_t ix, iy;
        morton_decode(code, ix, iy);
        cover.push_back(DyadicSquare{
            raster.root.m * (std::int64_t{1} << raster.depth) + ix,
            raster.root.r * (std::int64_t{1} << raster.depth) + iy, level});
      }
      PartitionResult result = build_partition(cover, raster, partition_k);
      out << partition_summary_to_json(result).dump(2) << "\n";
    } else if (verify_cmd->parsed()) {
      bool ok = acceptance::report(out, verify_seed);
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    out << Json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump(2)
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << Json{{"error", "Internal"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lipcap
