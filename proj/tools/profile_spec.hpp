#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rellich/profiles.hpp"

namespace rellich::cli {

// Grammar (no whitespace):
//   bump:<a>,<b>
//   poly:<seed>,<degree>,<a>,<b>
//   trial:<eps>          uses the command's n, gamma, R and mode index
struct ProfileContext {
  Params p;
  int j;
  double R;
};

struct ParsedProfile {
  RadialProfile profile;
  std::optional<std::uint64_t> seed;
};

// Throws std::invalid_argument on malformed input.
ParsedProfile parse_profile(const std::string& spec, const ProfileContext& ctx);

}  // namespace rellich::cli
