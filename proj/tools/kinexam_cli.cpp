// kinexam command line: synth -> extract -> classify / pca / distance.
// Talks to the analysis core exclusively through the C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinexam.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAllFailed = 2;
constexpr int kExitInternal = 3;

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flat-keyed config document with the --seed flag folded in.
std::string effective_config(const Common& c) {
  json j = json::object();
  if (!c.config_path.empty()) {
    j = json::parse(read_file(c.config_path));
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  }
  if (c.seed_given || !j.contains("seed")) j["seed"] = c.seed;
  return j.dump();
}

int fail(kx_status st, const std::string& what) {
  std::cerr << "error: " << what << ": " << kx_last_error() << "\n";
  switch (st) {
    case KX_ERR_PARSE:
    case KX_ERR_SCHEMA:
    case KX_ERR_VALUE:
    case KX_ERR_RANGE:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "flat-keyed JSON config file");
  cmd->add_option("--seed", c.seed, "RNG seed (overrides config)")
      ->each([&c](const std::string&) { c.seed_given = true; });
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--format", c.format, "feature table format")
      ->check(CLI::IsMember({"csv", "json"}));
}

// CSV rows as JSON objects, for --format json.
json csv_to_json_rows(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) return json::array();
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
  }
  json rows = json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::object();
    std::size_t pos = 0, col = 0;
    while (col < header.size()) {
      const std::size_t next = line.find(',', pos);
      const std::string cell = next == std::string::npos
                                   ? line.substr(pos)
                                   : line.substr(pos, next - pos);
      if (col < 4) {
        row[header[col]] = cell;
      } else if (cell.empty()) {
        row[header[col]] = nullptr;
      } else {
        row[header[col]] = std::stod(cell);
      }
      if (next == std::string::npos) break;
      pos = next + 1;
      ++col;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinematic exam analysis pipeline"};
  app.require_subcommand(1);

  Common c_extract, c_classify, c_pca, c_distance, c_synth;

  // extract
  auto* extract = app.add_subcommand(
      "extract", "extract feature vectors from recordings into a table");
  std::vector<std::string> extract_inputs;
  std::string segments_out;
  extract->add_option("inputs", extract_inputs, "recording files")
      ->required()
      ->expected(-1);
  extract->add_option("--segments-out", segments_out,
                      "directory for per-recording walk segment reports");
  add_common(extract, c_extract);

  // classify
  auto* classify = app.add_subcommand(
      "classify", "cross-validated normal/abnormal classification");
  std::string classify_csv, classify_model = "rf", classify_split = "video";
  classify->add_option("features", classify_csv, "feature CSV")->required();
  classify->add_option("--model", classify_model, "logreg | rf")
      ->check(CLI::IsMember({"logreg", "rf"}));
  classify->add_option("--split", classify_split, "video | subject")
      ->check(CLI::IsMember({"video", "subject"}));
  add_common(classify, c_classify);

  // pca
  auto* pca = app.add_subcommand("pca", "PCA projection of the feature table");
  std::string pca_csv;
  std::size_t pca_k = 2;
  pca->add_option("features", pca_csv, "feature CSV")->required();
  pca->add_option("-k,--components", pca_k, "component count");
  add_common(pca, c_pca);

  // distance
  auto* distance = app.add_subcommand(
      "distance", "intra/inter-class feature distances per subject");
  std::string distance_csv;
  distance->add_option("features", distance_csv, "feature CSV")->required();
  add_common(distance, c_distance);

  // synth
  auto* synth = app.add_subcommand(
      "synth", "generate synthetic recordings (single or cohort)");
  std::string synth_params, synth_kind = "FT";
  int synth_cohort = 0;
  synth->add_option("--params", synth_params, "flat-keyed params JSON file");
  synth->add_option("--kind", synth_kind, "FT | FTF | FR | SAW")
      ->check(CLI::IsMember({"FT", "FTF", "FR", "SAW"}));
  synth->add_option("--cohort", synth_cohort,
                    "subjects to generate (4 recordings each)");
  add_common(synth, c_synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract) {
      std::vector<const char*> inputs;
      for (const std::string& s : extract_inputs) inputs.push_back(s.c_str());
      const std::string cfg = effective_config(c_extract);
      const std::string csv_path = c_extract.out_dir + "/features.csv";
      const std::string err_path = c_extract.out_dir + "/extract_errors.json";
      size_t n_ok = 0, n_failed = 0;
      const kx_status st = kx_run_extract(
          inputs.data(), inputs.size(), cfg.c_str(), csv_path.c_str(),
          err_path.c_str(), segments_out.empty() ? nullptr : segments_out.c_str(),
          &n_ok, &n_failed);
      if (st != KX_OK) return fail(st, "extract");
      std::cout << "extracted " << n_ok << "/" << (n_ok + n_failed)
                << " recordings" << std::endl;
      if (n_ok == 0) return kExitAllFailed;
      if (c_extract.format == "json") {
        const json rows = csv_to_json_rows(read_file(csv_path));
        std::ofstream out(c_extract.out_dir + "/features.json",
                          std::ios::binary);
        out << rows.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*classify) {
      const std::string cfg = effective_config(c_classify);
      const std::string out = c_classify.out_dir + "/report_" +
                              classify_model + "_" + classify_split + ".json";
      const kx_status st =
          kx_run_classify(classify_csv.c_str(), classify_split.c_str(),
                          classify_model.c_str(), cfg.c_str(), out.c_str());
      if (st != KX_OK) return fail(st, "classify");
      std::cout << "report written to " << out << std::endl;
      return kExitOk;
    }

    if (*pca) {
      const std::string out_csv = c_pca.out_dir + "/projections.csv";
      const std::string out_svg = c_pca.out_dir + "/pca.svg";
      const kx_status st = kx_run_pca(pca_csv.c_str(), pca_k,
                                      out_csv.c_str(), out_svg.c_str());
      if (st != KX_OK) return fail(st, "pca");
      std::cout << "projection written to " << out_csv << std::endl;
      return kExitOk;
    }

    if (*distance) {
      const std::string out_json = c_distance.out_dir + "/distances.json";
      const std::string out_svg = c_distance.out_dir + "/distances.svg";
      const kx_status st = kx_run_distance(distance_csv.c_str(),
                                           out_json.c_str(), out_svg.c_str());
      if (st != KX_OK) return fail(st, "distance");
      std::cout << "distance report written to " << out_json << std::endl;
      return kExitOk;
    }

    if (*synth) {
      if (synth_cohort > 0) {
        size_t n_files = 0;
        const kx_status st =
            kx_run_synth_cohort(synth_kind.c_str(), synth_cohort,
                                c_synth.seed, c_synth.out_dir.c_str(),
                                &n_files);
        if (st != KX_OK) return fail(st, "synth");
        std::cout << "wrote " << n_files << " recordings to "
                  << c_synth.out_dir << std::endl;
        return kExitOk;
      }
      json params = json::object();
      if (!synth_params.empty()) params = json::parse(read_file(synth_params));
      if (!params.contains("kind")) params["kind"] = synth_kind;
      if (c_synth.seed_given || !params.contains("seed"))
        params["seed"] = c_synth.seed;

      kx_recording* rec = nullptr;
      kx_status st = kx_synth_generate(params.dump().c_str(), &rec);
      if (st != KX_OK) return fail(st, "synth");
      kx_recording_info info{};
      kx_recording_info_get(rec, &info);
      const std::string path = c_synth.out_dir + "/" +
                               std::string(info.test_kind) + "_single.json";
      st = kx_recording_save(rec, path.c_str());
      kx_recording_free(rec);
      if (st != KX_OK) return fail(st, "synth");
      std::cout << "wrote " << path << std::endl;
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
