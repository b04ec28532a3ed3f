#include "gml/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gml {

int env_threads() {
  if (const char* env = std::getenv("GML_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 4u : hw, 16u));
}

void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  int workers = std::min(count, env_threads());
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& config_line,
                     const std::vector<std::string>& columns, bool append) {
  out_.open(path, append ? std::ios::app : std::ios::out);
  if (!out_) throw std::runtime_error("cannot open report file: " + path);
  out_ << "# config: " << config_line << "\n";
  out_ << "# config_hash: " << fnv1a(config_line) << "\n";
  out_ << "# version: " << kVersion << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  out_.flush();
}

std::string CsvWriter::num(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

}  // namespace gml
