#include "euler2c/io.hpp"

#include <cmath>
#include <cstdio>

namespace euler2c {

std::string library_version() { return EULER2C_VERSION; }

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const nlohmann::json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

nlohmann::json stamped_config(const nlohmann::json& config) {
  nlohmann::json c = config;
  c["version"] = library_version();
  c["config_hash"] = config_hash(config);
  return c;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const nlohmann::json& config, const std::vector<std::string>& columns,
               const std::vector<Row>& rows, const std::vector<std::string>& notes) {
  os << "# euler2c " << library_version() << "\n";
  os << "# config_hash " << config_hash(config) << "\n";
  os << "# config " << config.dump() << "\n";
  for (const auto& n : notes) os << "# " << n << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const nlohmann::json& config, const nlohmann::json& results,
                const nlohmann::json& diagnostics) {
  nlohmann::json doc;
  doc["config"] = stamped_config(config);
  doc["results"] = results;
  doc["diagnostics"] = diagnostics;
  os << doc.dump(2) << "\n";
}

}  // namespace euler2c
