#include "wigcoh/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <thread>

#include <json.hpp>

#include "wigcoh/coherence.hpp"
#include "wigcoh/srdm.hpp"

namespace wigcoh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end) {
    throw InvalidConfig("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

constexpr std::array<std::pair<Scenario, std::string_view>, 3> kScenarioNames{{
    {Scenario::Case1DCenteredZero, "case1-zero"},
    {Scenario::Case1DCenteredP, "case1-p"},
    {Scenario::Case3DNeutron, "case3-neutron"},
}};

constexpr std::array<std::pair<Measure, std::string_view>, 6> kMeasureNames{{
    {Measure::L1, "l1"},
    {Measure::RelEntropy, "rel_entropy"},
    {Measure::Skew, "skew"},
    {Measure::Frobenius, "frobenius"},
    {Measure::Rho12, "rho12"},
    {Measure::Deficit, "deficit"},
}};

void set_field(SweepCell& cell, std::size_t column, double v) {
  switch (column) {
    case 0: cell.alpha = v; break;
    case 1: cell.sigma = v; break;
    case 2: cell.rho11 = v; break;
    case 3: cell.rho12 = v; break;
    case 4: cell.c_l1 = v; break;
    case 5: cell.c_rel_ent = v; break;
    case 6: cell.skew = v; break;
    case 7: cell.c_frobenius = v; break;
    case 8: cell.deficit = v; break;
    case 9: cell.quad_err = v; break;
    default: throw InvalidConfig("column index out of range");
  }
}

// Rebuilds the axes from row-major cells and checks the grid is complete.
void rebuild_axes(SweepGrid& grid) {
  grid.alphas.clear();
  grid.sigmas.clear();
  for (const auto& c : grid.cells) {
    if (grid.alphas.empty() || grid.alphas.back() != c.alpha) {
      grid.alphas.push_back(c.alpha);
    }
    if (grid.alphas.size() == 1) grid.sigmas.push_back(c.sigma);
  }
  if (grid.alphas.size() * grid.sigmas.size() != grid.cells.size()) {
    throw InvalidConfig("grid is not rectangular");
  }
  for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
    for (std::size_t j = 0; j < grid.sigmas.size(); ++j) {
      const auto& c = grid.at(i, j);
      if (c.alpha != grid.alphas[i] || c.sigma != grid.sigmas[j]) {
        throw InvalidConfig("grid cells are not in alpha-major order");
      }
    }
  }
}

}  // namespace

CellFailure::CellFailure(double alpha, double sigma, const NumericFailure& cause)
    : NumericFailure("quadrature failed at alpha=" + format_double(alpha) +
                         " sigma=" + format_double(sigma) + ": " + cause.what(),
                     cause.error_estimate()),
      alpha_(alpha),
      sigma_(sigma) {}

SweepCell evaluate_cell(const SweepConfig& config, double alpha, double sigma) {
  const BoostParams boost = BoostParams::along_z(alpha);
  const SrdmResult r =
      config.scenario == Scenario::Case3DNeutron
          ? srdm_boosted_3d(sigma, boost, config.mass, config.quad)
          : srdm_boosted_1d(GaussianPacket::one_d(sigma, config.center), boost, config.mass,
                            config.quad);

  const auto& m = config.measures;
  auto pick = [&](Measure which, double value) { return m.count(which) ? value : kNaN; };
  SweepCell cell;
  cell.alpha = alpha;
  cell.sigma = sigma;
  cell.rho11 = r.rho.rho11();
  cell.rho12 = pick(Measure::Rho12, r.rho.rho12().real());
  cell.c_l1 = pick(Measure::L1, coherence_l1(r.rho));
  cell.c_rel_ent = pick(Measure::RelEntropy, coherence_rel_entropy(r.rho));
  cell.skew = pick(Measure::Skew, skew_information(r.rho));
  cell.c_frobenius = pick(Measure::Frobenius, coherence_frobenius(r.rho));
  cell.deficit = pick(Measure::Deficit, r.coherence_deficit);
  cell.quad_err = r.error_estimate;
  return cell;
}

std::string_view scenario_name(Scenario s) {
  for (const auto& [k, v] : kScenarioNames) {
    if (k == s) return v;
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& [k, v] : kScenarioNames) {
    if (v == name) return k;
  }
  throw InvalidConfig("unknown scenario '" + std::string(name) + "'");
}

std::string_view measure_name(Measure m) {
  for (const auto& [k, v] : kMeasureNames) {
    if (k == m) return v;
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  for (const auto& [k, v] : kMeasureNames) {
    if (v == name) return k;
  }
  throw InvalidConfig("unknown measure '" + std::string(name) + "'");
}

std::set<Measure> all_measures() {
  std::set<Measure> s;
  for (const auto& [k, v] : kMeasureNames) s.insert(k);
  return s;
}

AxisRange AxisRange::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidConfig("range must be min:max:steps, got '" + std::string(text) + "'");
  AxisRange r;
  r.min = parse_double(parts[0]);
  r.max = parse_double(parts[1]);
  int steps = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
  if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size()) {
    throw InvalidConfig("range steps must be an integer");
  }
  r.steps = steps;
  return r;
}

std::vector<double> AxisRange::values() const {
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) {
    v[i] = (i + 1 == steps) ? max : min + (max - min) * i / (steps - 1);
  }
  return v;
}

SweepConfig SweepConfig::defaults(Scenario scenario) {
  SweepConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::Case1DCenteredZero:
      c.mass = kElectronMass;
      c.center = 0.0;
      c.sigma = {0.0, kElectronMass, 50};
      break;
    case Scenario::Case1DCenteredP:
      c.mass = kElectronMass;
      c.center = kElectronCenter;
      c.sigma = {0.0, kElectronMass, 50};
      break;
    case Scenario::Case3DNeutron:
      c.mass = kNeutronMass;
      c.center = 0.0;
      c.sigma = {0.0, 100.0, 50};
      break;
  }
  return c;
}

void SweepConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidConfig("mass must be positive");
  if (!std::isfinite(center)) throw InvalidConfig("center must be finite");
  if (scenario != Scenario::Case1DCenteredP && center != 0.0) {
    throw InvalidConfig("scenario " + std::string(scenario_name(scenario)) +
                        " is centred at zero");
  }
  for (const auto* r : {&alpha, &sigma}) {
    const char* name = r == &alpha ? "alpha" : "sigma";
    if (r->steps < 2) throw InvalidConfig(std::string(name) + " steps must be at least 2");
    if (!std::isfinite(r->min) || !std::isfinite(r->max) || !(r->min < r->max)) {
      throw InvalidConfig(std::string(name) + " range needs min < max");
    }
  }
  if (alpha.min < 0.0) throw InvalidConfig("alpha must be non-negative");
  if (sigma.min < 0.0) throw InvalidConfig("sigma must be non-negative");
  if (measures.empty()) throw InvalidConfig("at least one measure is required");
  if (threads < 0) throw InvalidConfig("threads must be non-negative");
  try {
    quad.validate();
  } catch (const InvalidState& e) {
    throw InvalidConfig(e.what());
  }
  if (heatmap) {
    const auto& cols = grid_columns();
    if (std::find(cols.begin(), cols.end(), *heatmap) == cols.end()) {
      throw InvalidConfig("unknown heatmap field '" + *heatmap + "'");
    }
  }
}

const std::vector<std::string>& grid_columns() {
  static const std::vector<std::string> cols{"alpha",          "sigma_mev", "rho11",
                                             "rho12",          "c_l1",      "c_rel_ent_nats",
                                             "skew_info",      "c_frobenius", "deficit",
                                             "quad_err"};
  return cols;
}

double cell_field(const SweepCell& cell, std::string_view field) {
  const double values[] = {cell.alpha, cell.sigma,    cell.rho11,       cell.rho12,
                           cell.c_l1,  cell.c_rel_ent, cell.skew,       cell.c_frobenius,
                           cell.deficit, cell.quad_err};
  const auto& cols = grid_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == field) return values[i];
  }
  throw InvalidConfig("unknown field '" + std::string(field) + "'");
}

SweepGrid run_sweep(const SweepConfig& config) {
  config.validate();
  SweepGrid grid;
  grid.scenario = config.scenario;
  grid.mass = config.mass;
  grid.center = config.center;
  grid.alphas = config.alpha.values();
  grid.sigmas = config.sigma.values();
  const std::size_t n_sigma = grid.sigmas.size();
  const std::size_t total = grid.alphas.size() * n_sigma;
  grid.cells.resize(total);

  // Warm the node caches before fanning out.
  if (config.quad.scheme == QuadratureScheme::GaussHermite) {
    const bool three_d = config.scenario == Scenario::Case3DNeutron;
    gauss_hermite(three_d ? config.quad.order_3d() : config.quad.order_1d());
    if (three_d) gauss_laguerre(config.quad.order_3d());
  }

  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_failure{total};
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total || k > first_failure.load()) return;
      const double a = grid.alphas[k / n_sigma];
      const double s = grid.sigmas[k % n_sigma];
      try {
        grid.cells[k] = evaluate_cell(config, a, s);
      } catch (...) {
        errors[k] = std::current_exception();
        std::size_t cur = first_failure.load();
        while (k < cur && !first_failure.compare_exchange_weak(cur, k)) {
        }
      }
    }
  };

  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  const std::size_t k = first_failure.load();
  if (k < total) {
    const double a = grid.alphas[k / n_sigma];
    const double s = grid.sigmas[k % n_sigma];
    try {
      std::rethrow_exception(errors[k]);
    } catch (const NumericFailure& e) {
      throw CellFailure(a, s, e);
    }
  }
  return grid;
}

std::string emit_grid(const SweepGrid& grid, GridFormat format) {
  const auto& cols = grid_columns();
  if (format == GridFormat::CSV) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out += cols[i];
      out += i + 1 == cols.size() ? '\n' : ',';
    }
    for (const auto& cell : grid.cells) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        out += format_double(cell_field(cell, cols[i]));
        out += i + 1 == cols.size() ? '\n' : ',';
      }
    }
    return out;
  }

  using nlohmann::ordered_json;
  auto number = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
  ordered_json doc;
  doc["schema"] = "wigcoh.sweep/1";
  doc["scenario"] = scenario_name(grid.scenario);
  doc["mass_mev"] = grid.mass;
  doc["center_mev"] = grid.center;
  doc["alpha"] = grid.alphas;
  doc["sigma_mev"] = grid.sigmas;
  doc["columns"] = cols;
  ordered_json cells = ordered_json::array();
  for (const auto& cell : grid.cells) {
    ordered_json c = ordered_json::object();
    for (const auto& name : cols) c[name] = number(cell_field(cell, name));
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(1) + "\n";
}

SweepGrid parse_csv_grid(std::string_view text) {
  const auto& cols = grid_columns();
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw InvalidConfig("empty CSV");
  const auto header = split(lines.front(), ',');
  if (header.size() != cols.size() || !std::equal(header.begin(), header.end(), cols.begin())) {
    throw InvalidConfig("unexpected CSV header");
  }
  SweepGrid grid;
  grid.cells.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != cols.size()) throw InvalidConfig("CSV row has wrong field count");
    SweepCell cell;
    for (std::size_t c = 0; c < cols.size(); ++c) set_field(cell, c, parse_double(fields[c]));
    grid.cells.push_back(cell);
  }
  rebuild_axes(grid);
  return grid;
}

SweepGrid parse_json_grid(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  const auto& cols = grid_columns();
  SweepGrid grid;
  grid.scenario = parse_scenario(doc.at("scenario").get<std::string>());
  grid.mass = doc.at("mass_mev").get<double>();
  grid.center = doc.at("center_mev").get<double>();
  for (const auto& c : doc.at("cells")) {
    SweepCell cell;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& v = c.at(cols[i]);
      set_field(cell, i, v.is_null() ? kNaN : v.get<double>());
    }
    grid.cells.push_back(cell);
  }
  rebuild_axes(grid);
  if (grid.alphas != doc.at("alpha").get<std::vector<double>>() ||
      grid.sigmas != doc.at("sigma_mev").get<std::vector<double>>()) {
    throw InvalidConfig("JSON axes disagree with cells");
  }
  return grid;
}

Heatmap emit_heatmap(const SweepGrid& grid, std::string_view field) {
  if (grid.cells.empty()) throw InvalidConfig("empty grid");
  std::vector<double> values;
  values.reserve(grid.cells.size());
  for (const auto& c : grid.cells) {
    const double v = cell_field(c, field);
    if (!std::isfinite(v)) {
      throw InvalidConfig("field '" + std::string(field) + "' is not populated in this grid");
    }
    values.push_back(v);
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const bool flat = !(hi > lo);

  const std::size_t width = grid.sigmas.size();
  const std::size_t height = grid.alphas.size();
  Heatmap h;
  h.pgm = "P5 " + std::to_string(width) + " " + std::to_string(height) + " 65535\n";
  for (double v : values) {
    const auto level = flat ? std::uint16_t{32768}
                            : static_cast<std::uint16_t>(std::lround((v - lo) / (hi - lo) * 65535.0));
    h.pgm += static_cast<char>(level >> 8);
    h.pgm += static_cast<char>(level & 0xff);
  }

  h.sidecar = "field " + std::string(field) + "\n";
  h.sidecar += "min " + format_double(lo) + "\n";
  h.sidecar += "max " + format_double(hi) + "\n";
  h.sidecar += "width " + std::to_string(width) + " (sigma_mev " + format_double(grid.sigmas.front()) +
               " .. " + format_double(grid.sigmas.back()) + ")\n";
  h.sidecar += "height " + std::to_string(height) + " (alpha " + format_double(grid.alphas.front()) +
               " .. " + format_double(grid.alphas.back()) + ", first row = first alpha)\n";
  if (flat) h.sidecar += "range zero: uniform mid-gray\n";
  return h;
}

}  // namespace wigcoh
