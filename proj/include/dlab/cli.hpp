#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlab/primes.hpp"

namespace dlab::cli {

/// Seed used when neither --seed nor DICKMAN_LAB_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr const char* kSeedEnv = "DICKMAN_LAB_SEED";

/// Malformed or inconsistent arguments. The message names the flag.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated positive integers; each may be written 100000, 1e5 or 10^5.
std::vector<std::uint64_t> parse_n_list(const std::string& text, const std::string& flag);

/// all | residue:L:J | file:PATH. An explicit file needs a declared theta.
SubsetSpec parse_subset(const std::string& text, const std::string& flag, double theta);

/// Executes one invocation. `args` excludes the program name.
/// Returns 0 on success, 2 when an opted-in check fails, 1 on usage or
/// domain errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dlab::cli
