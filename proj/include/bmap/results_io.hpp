#pragma once

#include "bmap/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bmap {

enum class OutputFormat { Csv, Json, Svg };

OutputFormat parse_format(const std::string& name);
/// "csv,json" -> {Csv, Json}
std::vector<OutputFormat> parse_formats(const std::string& list);

inline constexpr const char* kCsvHeader = "algorithm,K,M,N,ensemble,snr_db,trials,successes,recon_prob,seed";

/// One CSV line. snr_db is empty for noise-free sweeps and written as "inf".
struct CsvRecord {
  std::string algorithm;
  int K = 0;
  Index M = 0;
  Index N = 0;
  std::string ensemble;
  std::optional<double> snr_db;
  int trials = 0;
  int successes = 0;
  double recon_prob = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const CsvRecord&) const = default;
};

std::vector<CsvRecord> csv_records(const SweepResult& result);

void write_csv(const SweepResult& result, std::ostream& out);
std::vector<CsvRecord> read_csv(std::istream& in);
void write_json(const SweepResult& result, std::ostream& out);
/// recon_prob against K, one polyline per algorithm.
void write_svg(const SweepResult& result, std::ostream& out);

/// Writes results.<ext> for each format into dir (created if missing).
/// Returns the written paths.
std::vector<std::filesystem::path> emit_results(const SweepResult& result, const std::vector<OutputFormat>& formats,
                                                const std::filesystem::path& dir);

}  // namespace bmap
