#pragma once

#include <string>
#include <vector>

#include "riftrank/rating_engine.hpp"

namespace riftrank {

void write_delta_log_csv(const std::string& path, const std::vector<GameDelta>& deltas);
std::vector<GameDelta> read_delta_log_csv(const std::string& path);

void write_snapshot(const std::string& path, const RatingSnapshot& snapshot);
RatingSnapshot read_snapshot(const std::string& path);

} // namespace riftrank
