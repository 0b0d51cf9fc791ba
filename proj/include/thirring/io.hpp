#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace thirring {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form of a double (17 significant digits max).
std::string format_double(double x);

/// Comma-separated writer with a header row; floats via format_double so
/// identical runs produce byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Record of one CLI invocation: command, parameters, outputs, timestamps.
/// Written as manifest.json next to the data files.
class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::json parameters);

  void add_output(const std::filesystem::path& file);
  void note(const std::string& key, const nlohmann::json& value);
  void write(const std::filesystem::path& directory);

  const nlohmann::json& json() const { return doc_; }

 private:
  nlohmann::json doc_;
};

}  // namespace thirring
