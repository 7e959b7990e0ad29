#include "bmap/harness.hpp"
#include "bmap/results_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

using namespace bmap;

namespace {

SweepResult sample_result() {
  SweepSpec s;
  s.N = 40;
  s.M = 16;
  s.K_values = {1, 3, 5};
  s.trials = 15;
  s.base_seed = 9;
  s.snr_db = 20.0;
  for (auto a : {Algorithm::BMAP, Algorithm::OMP}) {
    SolverConfig c;
    c.algorithm = a;
    s.algorithms.push_back({std::string(to_string(a)), c});
  }
  return run_sweep(s, 2);
}

// Minimal well-formedness check: balanced tags, quoted attributes.
bool well_formed(const std::string& xml, int& polylines) {
  std::vector<std::string> stack;
  polylines = 0;
  std::size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    const std::size_t end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (name == "polyline") ++polylines;
    if (tag.back() != '/') stack.push_back(name);
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("empty sweep writes only the header") {
  SweepResult r;
  std::ostringstream os;
  write_csv(r, os);
  CHECK(os.str() == std::string(kCsvHeader) + "\n");
  std::istringstream in(os.str());
  CHECK(read_csv(in).empty());
}

TEST_CASE("csv round trip") {
  const SweepResult r = sample_result();
  std::ostringstream os;
  write_csv(r, os);
  CHECK(os.str().rfind("algorithm,K,M,N,ensemble,snr_db,trials,successes,recon_prob,seed\n", 0) == 0);
  std::istringstream in(os.str());
  const auto back = read_csv(in);
  CHECK(back == csv_records(r));
  REQUIRE(back.size() == 6);
  CHECK(back[0].algorithm == "BMAP");
  CHECK(back[0].snr_db == 20.0);
  CHECK(back[0].seed == 9);
  CHECK(back[0].ensemble == "GaussianInvM");
}

TEST_CASE("noise-free runs write inf") {
  SweepResult r = sample_result();
  r.spec.snr_db.reset();
  std::ostringstream os;
  write_csv(r, os);
  CHECK(os.str().find(",inf,") != std::string::npos);
  std::istringstream in(os.str());
  CHECK_FALSE(read_csv(in)[0].snr_db.has_value());
}

TEST_CASE("json carries rows and metadata") {
  const SweepResult r = sample_result();
  std::ostringstream os;
  write_json(r, os);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["results"].size() == 6);
  CHECK(j["metadata"]["seed"] == 9);
  CHECK(j["metadata"]["version"] == kVersion);
  CHECK(j["metadata"]["spec"]["N"] == 40);
  CHECK(j["results"][0].contains("mean_runtime"));
}

TEST_CASE("svg is well formed with one polyline per algorithm") {
  const SweepResult r = sample_result();
  std::ostringstream os;
  write_svg(r, os);
  int lines = 0;
  CHECK(well_formed(os.str(), lines));
  CHECK(lines == 2);
  CHECK(os.str().find("version=\"1.1\"") != std::string::npos);
}

TEST_CASE("emit_results writes the requested files") {
  const auto dir = std::filesystem::temp_directory_path() / "bmap_emit_test";
  std::filesystem::remove_all(dir);
  const auto paths = emit_results(sample_result(), parse_formats("csv,json,svg"), dir);
  CHECK(paths.size() == 3);
  for (const auto& p : paths) CHECK(std::filesystem::file_size(p) > 0);
  CHECK_THROWS(parse_formats("csv,xml"));
  std::filesystem::remove_all(dir);
}
