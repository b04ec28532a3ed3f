#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace gml {

inline constexpr const char* kVersion = "0.1.0";

/// Worker count: GML_THREADS if set, else hardware concurrency (capped at 16).
int env_threads();

/// Chunked parallel loop over [0, count); deterministic work split.
/// Exceptions from the body are rethrown on the calling thread.
void parallel_for(int count, const std::function<void(int)>& body);

std::uint64_t fnv1a(const std::string& text);

/// CSV with '#'-prefixed provenance header lines (config, hash, version).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& config_line,
            const std::vector<std::string>& columns, bool append = false);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);

 private:
  std::ofstream out_;
};

}  // namespace gml
