#pragma once
// Deterministic report emission: CSV (LF, '.' decimal, header row) and JSON
// with stable key order. Identical inputs must produce identical bytes.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cosieve/density.hpp"
#include "cosieve/sieve.hpp"

namespace cosieve {

using Json = nlohmann::ordered_json;

// Shortest representation with up to `digits` significant digits that
// round-trips the rounded value; always '.' as separator, never locale-aware.
std::string format_sig(double x, int digits = 12);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return data_; }

 private:
  size_t columns_;
  std::string data_;
};

void write_file(const std::filesystem::path& path, const std::string& bytes);

Csv experiment_csv(const ExperimentReport& report);
Json experiment_json(const ExperimentReport& report);

Csv density_csv(const std::vector<DensityRecord>& records);
Json density_json(const std::vector<DensityRecord>& records);

}  // namespace cosieve
