// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

// rsf command-line front end: build, convert, verify and trace networks.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsf/rsf.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

// Maps a failed call to an exit code and reports it.
class Failure {
 public:
  explicit Failure(rsf_status status) : status_(status) {}
  rsf_status status() const { return status_; }

 private:
  rsf_status status_;
};

void check(rsf_status status) {
  if (status != RSF_OK) throw Failure(status);
}

int exit_code(rsf_status status) {
  switch (status) {
    case RSF_OK: return kExitPass;
    case RSF_ERR_CONDITIONING:
    case RSF_ERR_INTERNAL: return kExitFail;
    default: return kExitConfig;
  }
}

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  rsf_string_free(s);
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "rsf: cannot write " << path.string() << "\n";
    throw Failure(RSF_ERR_IO);
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "rsf: cannot create " << dir.string() << ": " << ec.message() << "\n";
    throw Failure(RSF_ERR_IO);
  }
}

// --seed beats RSF_SEED, which beats the config file.
std::optional<std::uint64_t> seed_override(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  const char* env = std::getenv("RSF_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno != 0 || env[0] == '-') {
    std::cerr << "rsf: RSF_SEED must be an unsigned 64-bit integer\n";
    throw Failure(RSF_ERR_CONFIG);
  }
  return static_cast<std::uint64_t>(v);
}

struct Config {
  rsf_config* handle = nullptr;
  ~Config() { rsf_config_free(handle); }
};

struct Network {
  rsf_network* handle = nullptr;
  ~Network() { rsf_network_free(handle); }
};

void load_config(const std::string& path, const std::optional<std::uint64_t>& seed,
                 Config& config) {
  check(rsf_config_load(path.c_str(), &config.handle));
  if (auto s = seed_override(seed)) check(rsf_config_set_seed(config.handle, *s));
}

json network_summary(const rsf_network* net) {
  rsf_network_info info;
  check(rsf_network_info_get(net, &info));
  return {{"form", info.form == RSF_FORM_MODIFIED ? "modified" : "relu"},
          {"d", info.dim},
          {"layers", info.layers},
          {"stages", info.stages},
          {"layer_bound", info.layer_bound},
          {"stage_bound", info.stage_bound},
          {"error_bound", info.error_bound},
          {"rho", info.rho}};
}

// manifest.json collects one entry per command run into the directory.
void update_manifest(const fs::path& dir, const std::string& command, json entry) {
  const fs::path path = dir / "manifest.json";
  json manifest;
  if (std::ifstream in(path); in) {
    manifest = json::parse(in, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) manifest = json::object();
  }
  manifest["tool"] = "rsf";
  manifest["version"] = rsf_version();
  manifest["runs"][command] = std::move(entry);
  write_text(path, manifest.dump(2) + "\n");
}

struct Options {
  std::string config;
  std::string weights;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int grid = 201;
  double rho = 0.0;
  double margin = 0.0;
  std::vector<double> x;
  double y = 0.0;
  bool csv = false;
  rsf_verify_options verify{};
};

int cmd_build(const Options& o) {
  const std::string started = timestamp();
  Config config;
  load_config(o.config, o.seed, config);
  Network net;
  check(rsf_build(config.handle, &net.handle));
  ensure_dir(o.out);
  const fs::path weights = fs::path(o.out) / "modified.json";
  check(rsf_network_save(net.handle, weights.string().c_str()));

  char* config_json = nullptr;
  check(rsf_config_to_json(config.handle, &config_json));
  std::uint64_t seed = 0;
  check(rsf_config_seed(config.handle, &seed));
  update_manifest(o.out, "build",
                  {{"config", json::parse(take(config_json))},
                   {"seed", seed},
                   {"started_at", started},
                   {"finished_at", timestamp()},
                   {"outputs", {{"weights", weights.string()}}},
                   {"summary", network_summary(net.handle)}});
  const auto summary = network_summary(net.handle);
  std::cout << "built " << summary["layers"] << " layers in " << summary["stages"]
            << " stages -> " << weights.string() << "\n";
  return kExitPass;
}

int cmd_convert(const Options& o) {
  const std::string started = timestamp();
  Network in;
  check(rsf_network_load(o.weights.c_str(), &in.handle));
  Network out;
  check(rsf_convert(in.handle, o.rho, o.margin, &out.handle));
  ensure_dir(o.out);
  const fs::path weights = fs::path(o.out) / "relu.json";
  check(rsf_network_save(out.handle, weights.string().c_str()));

  char* text = nullptr;
  check(rsf_network_to_json(out.handle, &text));
  const json relu = json::parse(take(text));
  double worst = 0.0;
  double worst_cumulative = 0.0;
  for (const auto& entry : relu["meta"]["cond_diag"]) {
    worst = std::max(worst, std::stod(entry["condition"].get<std::string>()));
    worst_cumulative = std::max(worst_cumulative, std::stod(entry["cumulative"].get<std::string>()));
  }
  update_manifest(o.out, "convert",
                  {{"input", o.weights},
                   {"started_at", started},
                   {"finished_at", timestamp()},
                   {"outputs", {{"weights", weights.string()}}},
                   {"summary", network_summary(out.handle)},
                   {"conditioning", {{"max_layer", worst}, {"max_cumulative", worst_cumulative}}}});
  std::cout << "converted " << relu["layers"].size() << " layers (max cond " << worst
            << ", max cumulative cond " << worst_cumulative << ") -> " << weights.string()
            << "\n";
  return kExitPass;
}

int cmd_verify(const Options& o) {
  const std::string started = timestamp();
  Config config;
  load_config(o.config, o.seed, config);
  Network net;
  check(rsf_network_load(o.weights.c_str(), &net.handle));

  rsf_verify_options options = o.verify;
  options.grid = o.grid;
  options.threads = o.threads;
  check(rsf_config_seed(config.handle, &options.seed));

  int passed = 0;
  char* report = nullptr;
  char* csv = nullptr;
  check(rsf_verify(net.handle, config.handle, &options, &passed, &report,
                   o.csv ? &csv : nullptr));
  const std::string report_text = take(report);
  const std::string csv_text = take(csv);

  ensure_dir(o.out);
  const fs::path report_path = fs::path(o.out) / "report.json";
  write_text(report_path, report_text);
  json outputs = {{"report", report_path.string()}};
  if (o.csv) {
    const fs::path csv_path = fs::path(o.out) / "grid.csv";
    write_text(csv_path, csv_text);
    outputs["grid"] = csv_path.string();
  }

  const json r = json::parse(report_text);
  json summary = network_summary(net.handle);
  summary["sup_error"] = r["sup_error"]["sup_error"];
  summary["pass"] = r["pass"];
  update_manifest(o.out, "verify",
                  {{"weights", o.weights},
                   {"seed", options.seed},
                   {"grid", o.grid},
                   {"started_at", started},
                   {"finished_at", timestamp()},
                   {"outputs", outputs},
                   {"summary", summary}});

  std::cout << "sup error " << r["sup_error"]["sup_error"] << " (bound "
            << r["sup_error"]["bound"] << "), sign errors " << r["sign_check"]["errors"]
            << "\n";
  if (passed) {
    std::cout << "verify: PASS\n";
    return kExitPass;
  }
  for (const auto& c : r["checks"]) {
    if (c["pass"].get<bool>()) continue;
    std::cout << "FAIL " << c["name"].get<std::string>() << ": measured " << c["measured"]
              << ", bound " << c["bound"];
    if (c.contains("stage")) std::cout << " (stage " << c["stage"] << ")";
    std::cout << "\n";
  }
  std::cout << "verify: FAIL\n";
  return kExitFail;
}

int cmd_trace(const Options& o) {
  Network net;
  check(rsf_network_load(o.weights.c_str(), &net.handle));
  char* csv = nullptr;
  check(rsf_trace_csv(net.handle, o.x.data(), o.x.size(), o.y, &csv));
  const std::string text = take(csv);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    ensure_dir(o.out);
    write_text(fs::path(o.out) / "trace.csv", text);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit ReLU networks whose zero contour approximates a level-set surface"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rsf_version()));

  Options o;
  rsf_verify_options_default(&o.verify);

  auto* build = app.add_subcommand("build", "Construct the modified-form network");
  build->add_option("--config", o.config, "Build config (JSON)")->required();
  build->add_option("--out", o.out, "Output directory")->required();
  build->add_option("--seed", o.seed, "Seed (overrides RSF_SEED and the config)");
  build->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* convert = app.add_subcommand("convert", "Convert modified weights to standard ReLU form");
  convert->add_option("--weights", o.weights, "Modified-form weight file")->required();
  convert->add_option("--out", o.out, "Output directory")->required();
  convert->add_option("--rho", o.rho, "Bounding radius (default: stored value)");
  convert->add_option("--margin", o.margin, "Bias margin beyond rho (default: stored value)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite and error measurements");
  verify->add_option("--weights", o.weights, "Weight file, either form")->required();
  verify->add_option("--config", o.config, "Config the network was built from")->required();
  verify->add_option("--out", o.out, "Output directory")->required();
  verify->add_option("--grid", o.grid, "Grid points per axis")->check(CLI::Range(2, 100000));
  verify->add_option("--seed", o.seed, "Sampling seed (overrides RSF_SEED and the config)");
  verify->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  verify->add_flag("--csv", o.csv, "Also write grid heights to grid.csv");
  verify->add_option("--sign-samples", o.verify.sign_samples, "Sign-check samples");
  verify->add_option("--boundary-samples", o.verify.boundary_samples,
                     "Traced boundary starts per stage");
  verify->add_option("--graph-samples", o.verify.graph_samples, "Pushed graph samples");
  verify->add_option("--nesting-samples", o.verify.nesting_samples, "Nesting samples per stage");
  verify->add_option("--coverage-samples", o.verify.coverage_samples,
                     "Net coverage samples per stage");

  auto* trace = app.add_subcommand("trace", "Per-layer trajectory of one point as CSV");
  trace->add_option("--weights", o.weights, "Modified-form weight file")->required();
  trace->add_option("--x", o.x, "Point coordinates, comma separated")
      ->required()
      ->delimiter(',');
  trace->add_option("--y", o.y, "Lifted coordinate");
  trace->add_option("--out", o.out, "Output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (build->parsed()) return cmd_build(o);
    if (convert->parsed()) return cmd_convert(o);
    if (verify->parsed()) return cmd_verify(o);
    if (trace->parsed()) return cmd_trace(o);
  } catch (const Failure& f) {
    const char* message = rsf_last_error();
    std::cerr << "rsf: " << rsf_status_name(f.status());
    if (message != nullptr && *message != '\0') std::cerr << ": " << message;
    std::cerr << "\n";
    return exit_code(f.status());
  }
  return kExitConfig;
}
