#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "vwergm/cli.hpp"
#include "vwergm/error.hpp"

namespace vwergm::cli {

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << f.rdbuf();
  return sha256_hex(buf.str());
}

namespace {

nlohmann::json files_json(const std::vector<RunManifest::File>& files) {
  auto a = nlohmann::json::array();
  for (const auto& f : files) a.push_back({{"path", f.path}, {"suffix", f.suffix}, {"sha256", f.sha256}});
  return a;
}

std::vector<RunManifest::File> files_from(const nlohmann::json& a) {
  std::vector<RunManifest::File> out;
  for (const auto& f : a) out.push_back({f.at("path"), f.value("suffix", ""), f.at("sha256")});
  return out;
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},       {"args", args},
          {"parameters", parameters}, {"seeds", seeds},
          {"version", version},       {"rng_algorithm", rng_algorithm},
          {"inputs", files_json(inputs)}, {"outputs", files_json(outputs)}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command");
    m.args = j.at("args").get<std::vector<std::string>>();
    m.parameters = j.value("parameters", nlohmann::json::object());
    m.seeds = j.value("seeds", nlohmann::json::object());
    m.version = j.at("version");
    m.rng_algorithm = j.value("rng_algorithm", "");
    m.inputs = files_from(j.value("inputs", nlohmann::json::array()));
    m.outputs = files_from(j.at("outputs"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open manifest");
  try {
    return from_json(nlohmann::json::parse(f));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace vwergm::cli
