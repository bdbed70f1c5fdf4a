#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>
#include <unistd.h>

#include <json.hpp>

#include "ldes/report.hpp"

namespace ldes::report {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["format"] = "ldes-run-manifest";
  doc["engine_version"] = kEngineVersion;
  doc["command"] = command;
  doc["config_sha256"] = config_sha256;
  auto digests = [](const std::vector<std::pair<std::string, std::string>>& entries) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& [name, digest] : entries) a.push_back({{"path", name}, {"sha256", digest}});
    return a;
  };
  doc["inputs"] = digests(inputs);
  doc["outputs"] = digests(outputs);
  doc["solver"] = {{"backend", solver.backend},
                   {"feasibility_tol", solver.feasibility_tol},
                   {"optimality_tol", solver.optimality_tol},
                   {"time_limit_s", std::isfinite(solver.time_limit_s)
                                        ? nlohmann::ordered_json(solver.time_limit_s)
                                        : nlohmann::ordered_json(nullptr)},
                   {"threads", solver.threads},
                   {"seed", solver.seed}};
  doc["workers"] = workers;
  doc["started_utc"] = started_utc;
  doc["finished_utc"] = finished_utc;
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& t : timings) stages.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  doc["timings"] = std::move(stages);
  return doc.dump(2) + "\n";
}

void OutputSet::add(const std::string& name, std::string contents) {
  files_.emplace_back(name, std::move(contents));
}

std::vector<std::pair<std::string, std::string>> OutputSet::commit() const {
  std::filesystem::create_directories(dir_);
  std::vector<std::pair<std::string, std::string>> digests;
  for (const auto& [name, contents] : files_) {
    write_atomic(dir_ / name, contents);
    digests.emplace_back(name, sha256_hex(contents));
  }
  return digests;
}

}  // namespace ldes::report
