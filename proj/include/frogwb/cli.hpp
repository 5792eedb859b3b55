#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace frogwb {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs the command line tool. args excludes the program name.
/// Returns 0 on success, 1 on usage or configuration errors, 2 when a
/// verification check fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used for config digests in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace frogwb
