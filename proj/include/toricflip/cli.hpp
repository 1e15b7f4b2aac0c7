#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toricflip/serialize.hpp"

namespace toricflip {

/// A parsed command line or job file.
struct JobSpec {
  std::string command;  // classify, blowup, resolve, reduce, hj, scan
  std::optional<std::string> family;
  std::optional<std::int64_t> r, a, d, max_r;
  std::vector<std::int64_t> n;
  std::optional<std::string> file;  // germ descriptor path
  std::optional<Json> germ;         // inline germ descriptor (job files)
  std::string format;               // json, dot or table; empty picks the command default
  std::optional<std::string> out;
  unsigned workers = 0;  // scan threads; 0 = hardware concurrency
};

/// Job file: {"command": ..., "germ": {...}, "r": ..., "format": ..., ...}.
JobSpec job_from_json(const Json& j);

/// Exit status 0 on success, 2 for malformed jobs or input, 1 for domain
/// errors; errors go to `err` as one JSON object.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

struct ScanRow {
  std::string family;
  std::int64_t r = 0, a = 0, n = 0;
  std::size_t blowups = 0, depth = 0;
  std::vector<Rational> discrepancies;  // distinct, ascending
  bool terminal = false, semistable = false, leaves_smooth = false;
  bool certified() const { return terminal && semistable && leaves_smooth; }
};

/// Resolves every coprime (r, a) with 2 <= r <= max_r (and each n for the
/// binomial family); rows come back in input order whatever the thread count.
std::vector<ScanRow> scan(std::int64_t max_r, const std::vector<std::int64_t>& n, unsigned workers);
std::string scan_table(const std::vector<ScanRow>& rows);

}  // namespace toricflip
