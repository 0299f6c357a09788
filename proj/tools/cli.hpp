#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "euler2c/io.hpp"
#include "euler2c/types.hpp"

namespace euler2c::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kUnreliable = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double mu1 = 2.0;
  double mu2 = 1.0;
  double a = 1.0;
  std::string preset;
  std::string out;
  std::string format;
  std::uint64_t seed = 1;

  Params params() const;
  nlohmann::json to_json() const;
};

struct Output {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<std::string> notes;
  nlohmann::json results_extra = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
};

/// Path for one output file; a non-empty tag is inserted before the extension.
std::string output_path(const Common& c, const std::string& command, const std::string& tag);

/// Writes `o` as CSV or JSON to output_path(...), or to `console` when --out is "-".
void emit(const Common& c, const std::string& command, const std::string& tag, const nlohmann::json& config,
          const Output& o, std::ostream& console);

std::vector<double> parse_list(const std::string& text, std::size_t expected = 0);

struct BifdiagOptions {
  std::string plane = "spatial";
  std::vector<double> energies{1.0};
  std::vector<double> h_range{-3.0, 3.0};
  std::vector<double> l_range{-2.0, 2.0};
  std::vector<double> g_range{};
  int grid = 81;
  int curve_samples = 400;
};

struct MonodromyOptions {
  std::string ref = "o2";
  double h = 0.0;
  std::vector<std::string> loops;
  double g_a = 0.0, g_b = 0.0, dl = 0.0;
  std::string shape = "ellipse";
  int orientation = 1;
};

struct ScatterOptions {
  std::string q, p, fiber;
  double theta = 1.0471975511965976;
  double t_max = 200.0;
  double r_max = 100.0;
  double tol = 1e-10;
  std::string ref = "o2";
  std::string knauf;
  double h = 1.0;
  double strength = 1.0;
  double direction = 0.0;
  int samples = 0;
  std::string deflection_loop;
  int points = 64;
  int random = 0;
};

int run_bifdiag(const Common& c, const BifdiagOptions& o, std::ostream& console);
int run_monodromy(const Common& c, const MonodromyOptions& o, std::ostream& console);
int run_scatter(const Common& c, const ScatterOptions& o, std::ostream& console);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& console, std::ostream& errors);

}  // namespace euler2c::cli
