// The shared library exercised strictly through its C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kinexam.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("kinexam_capi_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

kx_recording* make_ft(uint64_t seed) {
  const std::string params =
      "{\"kind\": \"FT\", \"duration\": 6.0, \"seed\": " +
      std::to_string(seed) + "}";
  kx_recording* rec = nullptr;
  REQUIRE(kx_synth_generate(params.c_str(), &rec) == KX_OK);
  return rec;
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(kx_version() != nullptr);
  CHECK(kx_last_error() != nullptr);
}

TEST_CASE("recording round trip through the C surface") {
  TempDir tmp;
  kx_recording* rec = make_ft(4);

  kx_recording_info info{};
  REQUIRE(kx_recording_info_get(rec, &info) == KX_OK);
  CHECK(info.fps == doctest::Approx(60.0));
  CHECK(info.n_frames == 360);
  CHECK(std::strcmp(info.test_kind, "FT") == 0);

  const std::string path = tmp.file("rec.json");
  REQUIRE(kx_recording_save(rec, path.c_str()) == KX_OK);

  kx_recording* loaded = nullptr;
  REQUIRE(kx_recording_load(path.c_str(), &loaded) == KX_OK);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(kx_recording_to_json(rec, &a) == KX_OK);
  REQUIRE(kx_recording_to_json(loaded, &b) == KX_OK);
  CHECK(std::string(a) == std::string(b));
  kx_string_free(a);
  kx_string_free(b);
  kx_recording_free(rec);
  kx_recording_free(loaded);
}

TEST_CASE("error paths set status codes and messages") {
  kx_recording* rec = nullptr;
  CHECK(kx_recording_load("/nonexistent/path.json", &rec) == KX_ERR_IO);
  CHECK(std::strlen(kx_last_error()) > 0);

  CHECK(kx_recording_from_json("{broken", &rec) == KX_ERR_PARSE);
  CHECK(kx_recording_from_json(nullptr, &rec) == KX_ERR_VALUE);
  CHECK(kx_synth_generate("{\"fps\": -2}", &rec) == KX_ERR_VALUE);
  CHECK(kx_synth_generate("{\"nope\": 1}", &rec) == KX_ERR_PARSE);

  // zero-amplitude tapping has no cycles to extract
  kx_recording* flat = nullptr;
  REQUIRE(kx_synth_generate(
              "{\"kind\": \"FT\", \"amp.right\": 0, \"amp.left\": 0}",
              &flat) == KX_OK);
  char* out = nullptr;
  CHECK(kx_extract_features(flat, nullptr, &out) == KX_ERR_NO_CYCLES);
  kx_recording_free(flat);
}

TEST_CASE("feature extraction through the C surface") {
  kx_recording* rec = make_ft(8);
  char* json = nullptr;
  REQUIRE(kx_extract_features(rec, "{}", &json) == KX_OK);
  const std::string text(json);
  CHECK(text.find("\"test_kind\": \"FT\"") != std::string::npos);
  CHECK(text.find("ft.amplitude.right.mean") != std::string::npos);
  CHECK(text.find("config_hash") != std::string::npos);
  kx_string_free(json);
  kx_recording_free(rec);
}

TEST_CASE("whole pipeline through the C surface") {
  TempDir tmp;
  size_t n_files = 0;
  REQUIRE(kx_run_synth_cohort("FT", 6, 31, tmp.path.string().c_str(),
                              &n_files) == KX_OK);
  CHECK(n_files == 24);

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(tmp.path))
    names.push_back(entry.path().string());
  std::sort(names.begin(), names.end());
  std::vector<const char*> inputs;
  for (const std::string& n : names) inputs.push_back(n.c_str());

  const std::string csv = tmp.file("features.csv");
  size_t ok = 0, failed = 0;
  REQUIRE(kx_run_extract(inputs.data(), inputs.size(), nullptr, csv.c_str(),
                         tmp.file("errors.json").c_str(), nullptr, &ok,
                         &failed) == KX_OK);
  CHECK(ok == 24);
  CHECK(failed == 0);

  REQUIRE(kx_run_classify(csv.c_str(), "subject", "rf", nullptr,
                          tmp.file("report.json").c_str()) == KX_OK);
  CHECK(slurp(tmp.file("report.json")).find("\"mean\"") != std::string::npos);

  REQUIRE(kx_run_pca(csv.c_str(), 2, tmp.file("proj.csv").c_str(),
                     tmp.file("pca.svg").c_str()) == KX_OK);
  CHECK(slurp(tmp.file("pca.svg")).find("<svg") != std::string::npos);

  REQUIRE(kx_run_distance(csv.c_str(), tmp.file("dist.json").c_str(),
                          nullptr) == KX_OK);
  CHECK(slurp(tmp.file("dist.json")).find("mean_na") != std::string::npos);

  CHECK(kx_run_classify(csv.c_str(), "bogus", "rf", nullptr,
                        tmp.file("x.json").c_str()) == KX_ERR_VALUE);
}
