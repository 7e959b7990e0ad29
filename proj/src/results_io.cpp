#include "bmap/results_io.hpp"

#include "bmap/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bmap {

namespace {

// shortest representation that parses back to the same double
std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

std::vector<OutputFormat> parse_formats(const std::string& list) {
  std::vector<OutputFormat> out;
  for (const auto& part : split(list, ','))
    if (!part.empty()) out.push_back(parse_format(part));
  return out;
}

std::vector<CsvRecord> csv_records(const SweepResult& result) {
  std::vector<CsvRecord> out;
  for (const auto& row : result.rows) {
    CsvRecord r;
    r.algorithm = row.algorithm;
    r.K = row.K;
    r.M = result.spec.M;
    r.N = result.spec.N;
    r.ensemble = std::string(to_string(result.spec.ensemble));
    r.snr_db = result.spec.snr_db;
    r.trials = row.trials;
    r.successes = row.successes;
    r.recon_prob = row.recon_prob;
    r.seed = result.spec.base_seed;
    out.push_back(std::move(r));
  }
  return out;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : csv_records(result)) {
    out << r.algorithm << ',' << r.K << ',' << r.M << ',' << r.N << ',' << r.ensemble << ','
        << (r.snr_db ? fmt_double(*r.snr_db) : std::string("inf")) << ',' << r.trials << ',' << r.successes << ','
        << fmt_double(r.recon_prob) << ',' << r.seed << '\n';
  }
}

std::vector<CsvRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv header mismatch");
  std::vector<CsvRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("csv row has " + std::to_string(f.size()) + " fields");
    CsvRecord r;
    r.algorithm = f[0];
    r.K = std::stoi(f[1]);
    r.M = std::stol(f[2]);
    r.N = std::stol(f[3]);
    r.ensemble = f[4];
    const double snr = parse_double(f[5]);
    if (!std::isinf(snr)) r.snr_db = snr;
    r.trials = std::stoi(f[6]);
    r.successes = std::stoi(f[7]);
    r.recon_prob = parse_double(f[8]);
    r.seed = std::stoull(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

void write_json(const SweepResult& result, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"algorithm", row.algorithm},
                    {"K", row.K},
                    {"trials", row.trials},
                    {"successes", row.successes},
                    {"recon_prob", row.recon_prob},
                    {"mean_runtime", row.mean_runtime}});
  }
  nlohmann::json doc = {
      {"metadata",
       {{"spec", to_json(result.spec)},
        {"seed", result.spec.base_seed},
        {"version", result.version},
        {"wall_clock", result.wall_clock}}},
      {"results", rows}};
  out << doc.dump(2) << '\n';
}

void write_svg(const SweepResult& result, std::ostream& out) {
  constexpr double width = 640, height = 420;
  constexpr double left = 60, right = 150, top = 30, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  // keep first-seen algorithm order
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::pair<int, double>>> series;
  int k_min = 0, k_max = 1;
  bool first = true;
  for (const auto& row : result.rows) {
    if (!series.count(row.algorithm)) names.push_back(row.algorithm);
    series[row.algorithm].emplace_back(row.K, row.recon_prob);
    k_min = first ? row.K : std::min(k_min, row.K);
    k_max = first ? row.K : std::max(k_max, row.K);
    first = false;
  }
  if (k_max == k_min) k_max = k_min + 1;
  auto px = [&](double K) { return left + plot_w * (K - k_min) / (k_max - k_min); };
  auto py = [&](double p) { return top + plot_h * (1.0 - p); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(p) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << fmt_double(p) << "</text>\n";
  }
  for (const auto& [K, _] : names.empty() ? std::vector<std::pair<int, double>>{} : series[names.front()]) {
    out << "<text x=\"" << px(K) << "\" y=\"" << top + plot_h + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << K << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">sparsity K</text>\n"
      << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\">reconstruction probability</text>\n";

  for (std::size_t s = 0; s < names.size(); ++s) {
    const char* color = colors[s % (sizeof colors / sizeof *colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool sep = false;
    for (const auto& [K, p] : series[names[s]]) {
      out << (sep ? " " : "") << px(K) << ',' << py(p);
      sep = true;
    }
    out << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(s) + 8;
    out << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 32 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << xml_escape(names[s])
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<std::filesystem::path> emit_results(const SweepResult& result, const std::vector<OutputFormat>& formats,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (auto f : formats) {
    const char* ext = f == OutputFormat::Csv ? "csv" : f == OutputFormat::Json ? "json" : "svg";
    const auto path = dir / (std::string("results.") + ext);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    switch (f) {
      case OutputFormat::Csv: write_csv(result, out); break;
      case OutputFormat::Json: write_json(result, out); break;
      case OutputFormat::Svg: write_svg(result, out); break;
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace bmap
