#include "streamcolor/metrics.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace streamcolor {

namespace {
std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace

void RunMetrics::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunMetrics::set(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
}
void RunMetrics::set(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}
void RunMetrics::set(const std::string& key, double value) { set(key, format_double(value)); }

const std::string* RunMetrics::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

void RunMetrics::write_flat(std::ostream& out, bool include_wall_time) const {
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  if (include_wall_time && wall_time_ms_ >= 0.0)
    out << "wall_time_ms=" << format_double(wall_time_ms_) << '\n';
}

void RunMetrics::write_json(std::ostream& out, bool include_wall_time) const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : entries_) j[k] = v;
  if (include_wall_time && wall_time_ms_ >= 0.0) j["wall_time_ms"] = format_double(wall_time_ms_);
  out << j.dump(2) << '\n';
}

}  // namespace streamcolor
