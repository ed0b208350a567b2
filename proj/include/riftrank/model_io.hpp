#pragma once

#include <string>
#include <vector>

#include "riftrank/cross_validation.hpp"

namespace riftrank {

// One readable text artifact per (role, fold) plus a metadata file.
void write_model_dir(const std::string& dir, const ModelSet& models);
ModelSet read_model_dir(const std::string& dir);

void write_pscores_csv(const std::string& path, const std::vector<PScoreRecord>& records);
std::vector<PScoreRecord> read_pscores_csv(const std::string& path);

} // namespace riftrank
