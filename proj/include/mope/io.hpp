#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace mope {

// One CSV field, quoted per RFC 4180 when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

// Doubles are formatted with 17 significant digits so files are byte-stable.
std::string format_double(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> fields);
  // Serializes header + rows; trailing newline, \n line endings.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Write-temp-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Thread budget: min(requested tasks, MOPE_THREADS if set, hardware threads).
int thread_budget(int tasks);

// Runs fn(i) for i in [0, n). Results must be written to per-index slots by the
// caller; reduction order stays deterministic regardless of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace mope
