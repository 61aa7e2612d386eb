#include "interx/checkpoint.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "interx/digest.hpp"
#include "interx/error.hpp"

namespace interx {

std::string to_hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

namespace {

constexpr const char* kMagic = "interx-checkpoint v1";

std::string body_of(const Checkpoint& cp) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "config_digest " << to_hex(cp.config_digest) << '\n';
  out << "base_seed " << cp.base_seed << '\n';
  out << "completed " << cp.completed << '\n';
  out << "histogram";
  for (auto h : cp.histogram) out << ' ' << h;
  out << '\n';
  return out.str();
}

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& why) {
  throw DataError("checkpoint " + path.string() + " failed integrity check: " + why);
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  const std::string body = body_of(cp);
  const std::string sum = to_hex(Fnv1a{}.text(body).digest());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
    out << body << "checksum " << sum << '\n';
    if (!out.flush()) throw Error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::ostringstream all;
  all << in.rdbuf();
  const std::string text = all.str();

  const auto sum_pos = text.rfind("checksum ");
  if (sum_pos == std::string::npos) corrupt(path, "missing checksum");
  const std::string body = text.substr(0, sum_pos);
  std::string stored = text.substr(sum_pos + 9);
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
  if (stored != to_hex(Fnv1a{}.text(body).digest())) corrupt(path, "checksum mismatch");

  std::istringstream lines(body);
  std::string line;
  if (!std::getline(lines, line) || line != kMagic) corrupt(path, "bad header");

  Checkpoint cp;
  auto field = [&](const char* name) {
    if (!std::getline(lines, line)) corrupt(path, std::string("missing ") + name);
    std::istringstream f(line);
    std::string key;
    f >> key;
    if (key != name) corrupt(path, std::string("expected ") + name);
    return f;
  };
  {
    auto f = field("config_digest");
    std::string hex;
    f >> hex;
    cp.config_digest = std::stoull(hex, nullptr, 16);
  }
  if (!(field("base_seed") >> cp.base_seed)) corrupt(path, "bad base_seed");
  if (!(field("completed") >> cp.completed)) corrupt(path, "bad completed");
  {
    auto f = field("histogram");
    std::uint64_t v = 0;
    while (f >> v) cp.histogram.push_back(v);
  }
  std::uint64_t total = 0;
  for (auto h : cp.histogram) total += h;
  if (total != cp.completed) corrupt(path, "histogram does not sum to completed");
  return cp;
}

}  // namespace interx
