#pragma once

#include "tropwdvv/invariants.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace tropwdvv {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitInternal = 3,
};

/// Environment variable naming the memo cache file when --cache is absent.
inline constexpr const char* kCacheEnvironmentVariable = "TROPWDVV_CACHE";

/// Runs one command line (without the program name) and returns the exit
/// code. Kontsevich numbers are memoized in `memo`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, MemoTable& memo);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Cache document: {"kontsevich": {"<d>": "<decimal>", ...}}. Entries must
/// cover 1..max; the top entry is recomputed from the lower ones before any
/// of them is trusted. Returns the number of entries loaded, or throws
/// std::runtime_error on a malformed or stale cache.
std::size_t load_cache(const std::string& path, MemoTable& memo);
void save_cache(const std::string& path, const MemoTable& memo);

}  // namespace tropwdvv
