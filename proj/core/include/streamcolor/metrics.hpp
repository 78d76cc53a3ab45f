#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace streamcolor {

// Flat key=value record, one pair per line, emitted in insertion order so
// repeated runs with equal seeds serialize identically. Wall time is the one
// volatile field; callers exclude it when byte-stable output matters.
class RunMetrics {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, double value);
  void set_wall_time_ms(double ms) { wall_time_ms_ = ms; }

  const std::string* find(const std::string& key) const;

  void write_flat(std::ostream& out, bool include_wall_time = true) const;
  void write_json(std::ostream& out, bool include_wall_time = true) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  double wall_time_ms_ = -1.0;
};

}  // namespace streamcolor
