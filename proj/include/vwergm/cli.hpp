#pragma once

// Command-line front end. Every command that receives --out writes its
// outputs next to a `<out>.manifest.json` recording the argument vector,
// resolved parameters, seeds and SHA-256 digests of inputs and outputs;
// `replay` reruns a manifest and compares digests.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace vwergm::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCapacity = 2,
  kNonConvergence = 3,
  kReplayMismatch = 4,
};

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json seeds = nlohmann::json::object();
  std::string version = kVersion;
  std::string rng_algorithm;
  struct File {
    std::string path;
    std::string suffix;  // appended to --out; empty for the main output
    std::string sha256;
  };
  std::vector<File> inputs;
  std::vector<File> outputs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  static RunManifest load(const std::string& path);
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace vwergm::cli
