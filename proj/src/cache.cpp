#include "patex/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "patex/error.hpp"
#include "patex/containment.hpp"
#include "patex/symmetry.hpp"

namespace patex {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json witness_rows(const Matrix01& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string s;
    for (std::size_t c = 0; c < m.cols(); ++c) s.push_back(m.get(r, c) ? '1' : '0');
    rows.push_back(std::move(s));
  }
  return rows;
}

CacheRecord parse_record(const std::string& line) {
  const json j = json::parse(line);  // throws json::exception
  if (!j.is_object()) throw std::runtime_error("not an object");
  CacheRecord rec;
  rec.pattern = j.at("pattern").get<std::string>();
  parse_matrix_key(rec.pattern);  // validates
  rec.n = j.at("n").get<std::size_t>();
  rec.value = j.at("value").get<std::size_t>();
  rec.exact = j.at("exact").get<bool>();
  if (j.contains("witness")) {
    std::string text;
    for (const auto& row : j.at("witness")) text += row.get<std::string>() + "\n";
    Matrix01 w = parse_matrix(text);
    if (w.rows() != rec.n || w.cols() != rec.n || w.ones() != rec.value)
      throw std::runtime_error("witness does not match n and value");
    rec.witness = std::move(w);
  }
  return rec;
}

}  // namespace

std::string format_cache_record(const CacheRecord& record) {
  json j{{"pattern", record.pattern}, {"n", record.n}, {"value", record.value},
         {"exact", record.exact}};
  if (record.witness) j["witness"] = witness_rows(*record.witness);
  return j.dump();
}

std::vector<CacheRecord> read_cache(const fs::path& path, std::vector<std::string>& warnings) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return {};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read cache file " + path.string());
  std::vector<CacheRecord> records;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(parse_record(line));
    } catch (const std::exception& e) {
      warnings.push_back(path.string() + ":" + std::to_string(number) +
                         ": skipping corrupt cache record (" + e.what() + ")");
    }
  }
  if (in.bad()) throw Error(ErrorKind::Io, "error while reading cache file " + path.string());
  return records;
}

void append_cache_record(const fs::path& path, const CacheRecord& record) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const std::string line = format_cache_record(record) + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0)
    throw Error(ErrorKind::Io, "cannot open cache file " + path.string() + ": " +
                                   std::strerror(errno));
  const ssize_t written = ::write(fd, line.data(), line.size());
  const int saved = errno;
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size()))
    throw Error(ErrorKind::Io, "short write to cache file " + path.string() + ": " +
                                   std::strerror(saved));
}

fs::path default_cache_path() {
  if (const char* p = std::getenv("PATEX_CACHE"); p && *p) return p;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
    return fs::path(x) / "patex" / "ex_cache.jsonl";
  if (const char* h = std::getenv("HOME"); h && *h)
    return fs::path(h) / ".cache" / "patex" / "ex_cache.jsonl";
  return fs::path(".patex_cache.jsonl");
}

CachedExtremal cache_lookup_or_compute(std::size_t n, const Matrix01& pattern,
                                       const std::optional<fs::path>& path,
                                       std::uint64_t node_budget, std::uint64_t seed) {
  const SymmetrySet sym = symmetry_set(pattern);
  const Matrix01& canon = sym.canonical;
  const Symmetry back = inverse(sym.canonical_op);
  const std::string key = matrix_key(canon);

  CachedExtremal out;
  if (path) {
    try {
      for (const auto& rec : read_cache(*path, out.warnings)) {
        if (rec.pattern != key || rec.n != n || !rec.exact || !rec.witness) continue;
        if (contains(*rec.witness, canon)) {
          out.warnings.push_back("cache record for " + key + " n=" + std::to_string(n) +
                                 " has a witness containing the pattern; ignored");
          continue;
        }
        out.cache_hit = true;
        out.result.n = n;
        out.result.pattern = pattern;
        out.result.value = rec.value;
        out.result.exact = true;
        out.result.witness = apply(back, *rec.witness);
        return out;
      }
    } catch (const Error& e) {
      out.warnings.push_back(e.what());
    }
  }

  const auto warm = ex_lower_greedy(n, canon, seed);
  out.result = ex_exact(n, canon, node_budget, warm.witness);
  out.result.pattern = pattern;
  CacheRecord rec{key, n, out.result.value, out.result.exact, out.result.witness};
  out.result.witness = apply(back, out.result.witness);
  if (path && rec.exact) {
    try {
      append_cache_record(*path, rec);
    } catch (const Error& e) {
      out.warnings.push_back(e.what());
    }
  }
  return out;
}

}  // namespace patex
