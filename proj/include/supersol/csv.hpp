#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace supersol {

/// Scientific notation with 12 significant digits; infinities print as
/// "inf"/"-inf". All emitted data files go through this, so identical runs
/// produce byte-identical bodies.
std::string sci(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace supersol
