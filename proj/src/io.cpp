#include "thirring/io.hpp"

#include <charconv>
#include <chrono>
#include <stdexcept>

namespace thirring {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_)
    throw std::runtime_error("CsvWriter: cannot open " + path.string());
  raw_row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::runtime_error("CsvWriter: row width does not match header");
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (j) out_ << ',';
    out_ << cells[j];
  }
  out_ << '\n';
}

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%T%z", std::localtime(&t));
  return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command, nlohmann::json parameters) {
  doc_["command"] = std::move(command);
  doc_["parameters"] = std::move(parameters);
  doc_["version"] = kVersion;
  doc_["started_at"] = iso_now();
  doc_["outputs"] = nlohmann::json::array();
}

void RunManifest::add_output(const std::filesystem::path& file) {
  doc_["outputs"].push_back(file.filename().string());
}

void RunManifest::note(const std::string& key, const nlohmann::json& value) {
  doc_[key] = value;
}

void RunManifest::write(const std::filesystem::path& directory) {
  doc_["finished_at"] = iso_now();
  std::ofstream out(directory / "manifest.json");
  if (!out)
    throw std::runtime_error("RunManifest: cannot write manifest in " +
                             directory.string());
  out << doc_.dump(2) << '\n';
}

}  // namespace thirring
