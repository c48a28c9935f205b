#include "wigcoh/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigcoh/sweep.hpp"

namespace wigcoh {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QuadratureScheme parse_scheme(std::string_view name) {
  if (name == "gauss-hermite" || name == "gh") return QuadratureScheme::GaussHermite;
  if (name == "adaptive-simpson" || name == "simpson") return QuadratureScheme::AdaptiveSimpson;
  throw InvalidConfig("unknown quadrature scheme '" + std::string(name) + "'");
}

GridFormat parse_format(std::string_view name) {
  if (name == "csv") return GridFormat::CSV;
  if (name == "json") return GridFormat::JSON;
  throw InvalidConfig("unknown format '" + std::string(name) + "'");
}

std::set<Measure> parse_measures(std::string_view list) {
  std::set<Measure> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto pos = list.find(',', start);
    const auto item = list.substr(start, pos == std::string_view::npos ? pos : pos - start);
    if (!item.empty()) out.insert(parse_measure(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Flat key/value settings gathered from the config file or the command line.
struct Settings {
  std::optional<std::string> scenario, alpha, sigma, measures, format, out, heatmap, heatmap_out,
      scheme;
  std::optional<double> mass, center, rel_tol;
  std::optional<int> quad_order, max_order, threads;
};

template <class T>
void take(const nlohmann::json& doc, const char* key, std::optional<T>& slot) {
  if (doc.contains(key)) slot = doc.at(key).get<T>();
}

Settings load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw InvalidConfig("config file must hold a JSON object");

  static const std::set<std::string> known{
      "scenario", "mass",  "center",      "alpha",       "sigma",     "measures",
      "format",   "out",   "heatmap",     "heatmap_out", "quad_order", "max_order",
      "rel_tol",  "scheme", "threads"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw InvalidConfig("unknown config key '" + key + "'");
  }

  Settings s;
  try {
    take(doc, "scenario", s.scenario);
    take(doc, "alpha", s.alpha);
    take(doc, "sigma", s.sigma);
    take(doc, "format", s.format);
    take(doc, "out", s.out);
    take(doc, "heatmap", s.heatmap);
    take(doc, "heatmap_out", s.heatmap_out);
    take(doc, "scheme", s.scheme);
    take(doc, "mass", s.mass);
    take(doc, "center", s.center);
    take(doc, "rel_tol", s.rel_tol);
    take(doc, "quad_order", s.quad_order);
    take(doc, "max_order", s.max_order);
    take(doc, "threads", s.threads);
    if (doc.contains("measures")) {
      const auto& m = doc.at("measures");
      if (m.is_array()) {
        std::string joined;
        for (const auto& item : m) joined += item.get<std::string>() + ",";
        s.measures = joined;
      } else {
        s.measures = m.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("config file value has the wrong type: ") + e.what());
  }
  return s;
}

// Later settings win.
template <class T>
void overlay(std::optional<T>& base, const std::optional<T>& top) {
  if (top) base = top;
}

Settings merge(Settings base, const Settings& top) {
  overlay(base.scenario, top.scenario);
  overlay(base.alpha, top.alpha);
  overlay(base.sigma, top.sigma);
  overlay(base.measures, top.measures);
  overlay(base.format, top.format);
  overlay(base.out, top.out);
  overlay(base.heatmap, top.heatmap);
  overlay(base.heatmap_out, top.heatmap_out);
  overlay(base.scheme, top.scheme);
  overlay(base.mass, top.mass);
  overlay(base.center, top.center);
  overlay(base.rel_tol, top.rel_tol);
  overlay(base.quad_order, top.quad_order);
  overlay(base.max_order, top.max_order);
  overlay(base.threads, top.threads);
  return base;
}

SweepConfig build_config(const Settings& s) {
  const Scenario scenario = parse_scenario(s.scenario.value_or("case1-zero"));
  SweepConfig c = SweepConfig::defaults(scenario);
  if (s.mass) {
    c.mass = *s.mass;
    // Electron-scenario widths default to [0, m].
    if (scenario != Scenario::Case3DNeutron) c.sigma.max = c.mass;
  }
  if (s.center) c.center = *s.center;
  if (s.alpha) c.alpha = AxisRange::parse(*s.alpha);
  if (s.sigma) c.sigma = AxisRange::parse(*s.sigma);
  if (s.measures) c.measures = parse_measures(*s.measures);
  if (s.format) c.format = parse_format(*s.format);
  if (s.out) c.output = *s.out;
  if (s.heatmap) c.heatmap = *s.heatmap;
  if (s.scheme) c.quad.scheme = parse_scheme(*s.scheme);
  if (s.rel_tol) c.quad.rel_tol = *s.rel_tol;
  if (s.quad_order) c.quad.order = *s.quad_order;
  if (s.max_order) c.quad.max_order = *s.max_order;
  if (s.threads) c.threads = *s.threads;
  c.validate();
  return c;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace

int run_sweep_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence of a boosted spin-1/2 Gaussian packet over an (alpha, sigma) grid",
               "sweep"};
  std::string scenario, alpha, sigma, measures, format, out_path, heatmap, heatmap_out, config,
      scheme;
  double mass = 0.0, center = 0.0, rel_tol = 0.0;
  int quad_order = 0, max_order = 0, threads = 0;

  auto* o_scenario = app.add_option("--scenario", scenario, "case1-zero | case1-p | case3-neutron");
  auto* o_mass = app.add_option("--mass", mass, "Rest mass (MeV)");
  auto* o_center = app.add_option("--center", center, "Packet centre (MeV), case1-p only");
  auto* o_alpha = app.add_option("--alpha", alpha, "Rapidity range min:max:steps");
  auto* o_sigma = app.add_option("--sigma", sigma, "Width range min:max:steps (MeV)");
  auto* o_measures = app.add_option("--measures", measures,
                                    "Comma list of l1,rel_entropy,skew,frobenius,rho12,deficit");
  auto* o_format = app.add_option("--format", format, "csv | json");
  auto* o_out = app.add_option("--out", out_path, "Output path, '-' for stdout");
  auto* o_heatmap = app.add_option("--heatmap", heatmap, "Grid column rendered as a PGM heatmap");
  auto* o_heatmap_out = app.add_option("--heatmap-out", heatmap_out,
                                       "Heatmap path (default <out>.<field>.pgm)");
  app.add_option("--config", config, "Flat JSON config file; flags take precedence");
  auto* o_order = app.add_option("--quad-order", quad_order, "Base Gauss order");
  auto* o_max_order = app.add_option("--max-order", max_order, "Largest Gauss order tried");
  auto* o_rel_tol = app.add_option("--rel-tol", rel_tol, "Quadrature tolerance");
  auto* o_scheme = app.add_option("--scheme", scheme, "gauss-hermite | adaptive-simpson");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sweep: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  SweepConfig cfg;
  std::optional<std::string> heatmap_path;
  try {
    Settings flags;
    auto str = [](CLI::Option* o, const std::string& v) {
      return o->count() ? std::optional<std::string>(v) : std::nullopt;
    };
    flags.scenario = str(o_scenario, scenario);
    flags.alpha = str(o_alpha, alpha);
    flags.sigma = str(o_sigma, sigma);
    flags.measures = str(o_measures, measures);
    flags.format = str(o_format, format);
    flags.out = str(o_out, out_path);
    flags.heatmap = str(o_heatmap, heatmap);
    flags.heatmap_out = str(o_heatmap_out, heatmap_out);
    flags.scheme = str(o_scheme, scheme);
    if (o_mass->count()) flags.mass = mass;
    if (o_center->count()) flags.center = center;
    if (o_rel_tol->count()) flags.rel_tol = rel_tol;
    if (o_order->count()) flags.quad_order = quad_order;
    if (o_max_order->count()) flags.max_order = max_order;
    if (o_threads->count()) flags.threads = threads;

    const Settings merged = config.empty() ? flags : merge(load_config_file(config), flags);
    cfg = build_config(merged);
    if (cfg.heatmap) {
      if (merged.heatmap_out) {
        heatmap_path = *merged.heatmap_out;
      } else if (cfg.output != "-") {
        heatmap_path = cfg.output + "." + *cfg.heatmap + ".pgm";
      } else {
        throw InvalidConfig("--heatmap with stdout output needs --heatmap-out");
      }
    }
  } catch (const std::invalid_argument& e) {
    err << "sweep: invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  SweepGrid grid;
  try {
    grid = run_sweep(cfg);
  } catch (const CellFailure& e) {
    err << "sweep: quadrature failure at alpha=" << e.alpha() << " sigma=" << e.sigma()
        << ": " << e.what() << "\n";
    return kExitQuadratureFailure;
  } catch (const NumericFailure& e) {
    err << "sweep: quadrature failure: " << e.what() << "\n";
    return kExitQuadratureFailure;
  } catch (const std::invalid_argument& e) {
    err << "sweep: invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    const std::string data = emit_grid(grid, cfg.format);
    if (cfg.output == "-") {
      out << data;
      out.flush();
      if (!out) throw IoError("write to stdout failed");
    } else {
      write_file(cfg.output, data);
    }
    if (cfg.heatmap) {
      const Heatmap h = emit_heatmap(grid, *cfg.heatmap);
      write_file(*heatmap_path, h.pgm);
      write_file(*heatmap_path + ".txt", h.sidecar);
    }
  } catch (const IoError& e) {
    err << "sweep: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidConfig& e) {
    err << "sweep: invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  return kExitOk;
}

}  // namespace wigcoh
