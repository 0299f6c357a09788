#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace euler2c::cli {

Params Common::params() const {
  if (!(a > 0.0)) throw ConfigError("--a must be positive");
  return Params(mu1, mu2, a);
}

nlohmann::json Common::to_json() const {
  return {{"mu1", mu1}, {"mu2", mu2}, {"a", a}, {"preset", preset}, {"format", format}, {"seed", seed}};
}

std::string output_path(const Common& c, const std::string& command, const std::string& tag) {
  const std::string ext = "." + c.format;
  std::string base = c.out.empty() ? (c.preset.empty() ? command : c.preset) + ext : c.out;
  if (tag.empty()) return base;
  const auto slash = base.find_last_of('/');
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return base.substr(0, dot) + "_" + tag + base.substr(dot);
  return base + "_" + tag;
}

namespace {

nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void write(std::ostream& os, const nlohmann::json& config, const Output& o, const std::string& format) {
  if (format == "csv") {
    write_csv(os, config, o.columns, o.rows, o.notes);
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : o.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < o.columns.size() && i < r.size(); ++i) obj[o.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(obj));
  }
  nlohmann::json results = o.results_extra;
  results["rows"] = std::move(rows);
  nlohmann::json diagnostics = o.diagnostics;
  if (!o.notes.empty()) diagnostics["notes"] = o.notes;
  write_json(os, config, results, diagnostics);
}

}  // namespace

void emit(const Common& c, const std::string& command, const std::string& tag, const nlohmann::json& config,
          const Output& o, std::ostream& console) {
  if (c.out == "-") {
    write(console, config, o, c.format);
    return;
  }
  const std::string path = output_path(c, command, tag);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path);
  write(f, config, o, c.format);
  if (!f) throw std::runtime_error("write failed: " + path);
  console << path << "\n";
}

std::vector<double> parse_list(const std::string& text, std::size_t expected) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  if (expected && v.size() != expected)
    throw ConfigError("expected " + std::to_string(expected) + " comma-separated values in '" + text + "'");
  return v;
}

}  // namespace euler2c::cli
