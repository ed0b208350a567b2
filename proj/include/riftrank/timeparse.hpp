#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace riftrank {

// Strict "YYYY-MM-DDTHH:MM:SSZ" (UTC, integer seconds) <-> seconds since epoch.
// The input schema pins this exact shape so that records round-trip bytewise.
int64_t parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(int64_t epoch_seconds);

} // namespace riftrank
