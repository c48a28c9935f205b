#pragma once

// Rectangular (alpha, sigma) sweeps of the boosted SRDM and its coherence
// measures, plus CSV/JSON/PGM emitters.

#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wigcoh/core.hpp"
#include "wigcoh/quadrature.hpp"

namespace wigcoh {

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cell whose quadrature failed; carries its grid coordinates.
class CellFailure : public NumericFailure {
 public:
  CellFailure(double alpha, double sigma, const NumericFailure& cause);
  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double alpha_;
  double sigma_;
};

enum class Scenario { Case1DCenteredZero, Case1DCenteredP, Case3DNeutron };
enum class Measure { L1, RelEntropy, Skew, Frobenius, Rho12, Deficit };
enum class GridFormat { CSV, JSON };

inline constexpr double kElectronMass = 0.5;      // MeV
inline constexpr double kNeutronMass = 939.36;    // MeV
// Momentum of an electron at half the speed of light, 1/(2 sqrt 3) MeV.
inline constexpr double kElectronCenter = 0.5 * std::numbers::inv_sqrt3;

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view name);
std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view name);
std::set<Measure> all_measures();

// Inclusive linear axis: steps points from min to max.
struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  static AxisRange parse(std::string_view text);  // "min:max:steps"
  std::vector<double> values() const;
};

struct SweepConfig {
  Scenario scenario = Scenario::Case1DCenteredZero;
  double mass = kElectronMass;
  double center = 0.0;
  AxisRange alpha{0.0, 5.0, 50};
  AxisRange sigma{0.0, kElectronMass, 50};
  QuadratureConfig quad;
  std::set<Measure> measures = all_measures();
  GridFormat format = GridFormat::CSV;
  std::string output = "-";
  std::optional<std::string> heatmap;
  // 0 uses the hardware concurrency.
  int threads = 0;

  static SweepConfig defaults(Scenario scenario);
  // Throws InvalidConfig.
  void validate() const;
};

struct SweepCell {
  double alpha = 0.0;
  double sigma = 0.0;
  double rho11 = 0.0;
  double rho12 = 0.0;
  double c_l1 = 0.0;
  double c_rel_ent = 0.0;
  double skew = 0.0;
  double c_frobenius = 0.0;
  double deficit = 0.0;
  double quad_err = 0.0;
};

struct SweepGrid {
  Scenario scenario = Scenario::Case1DCenteredZero;
  double mass = 0.0;
  double center = 0.0;
  std::vector<double> alphas;
  std::vector<double> sigmas;
  // Row-major, alpha outer.
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t alpha_index, std::size_t sigma_index) const {
    return cells[alpha_index * sigmas.size() + sigma_index];
  }
};

// Column order of the CSV and JSON outputs.
const std::vector<std::string>& grid_columns();
// Value of a named column ("rho12", "c_frobenius", ...); throws InvalidConfig
// for unknown names.
double cell_field(const SweepCell& cell, std::string_view field);

// One grid cell. Does not validate the axis ranges of `config`.
SweepCell evaluate_cell(const SweepConfig& config, double alpha, double sigma);

// Evaluates every cell, in parallel; output is independent of the thread
// count. Throws CellFailure for the first failing cell in grid order.
SweepGrid run_sweep(const SweepConfig& config);

std::string emit_grid(const SweepGrid& grid, GridFormat format);
// Inverse of emit_grid(CSV); header metadata (scenario, mass) is not part of
// the CSV and is left default.
SweepGrid parse_csv_grid(std::string_view text);
SweepGrid parse_json_grid(std::string_view text);

struct Heatmap {
  std::string pgm;      // binary P5, maxval 65535, width = sigma steps, height = alpha steps
  std::string sidecar;  // value range and layout
};

Heatmap emit_heatmap(const SweepGrid& grid, std::string_view field);

}  // namespace wigcoh
