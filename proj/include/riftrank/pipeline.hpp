#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "riftrank/config.hpp"

namespace riftrank {

struct ManifestFile {
    std::string stage;
    std::string path; // relative to the output directory
    std::string sha256;
    bool stale = false;
};

struct ManifestStage {
    std::string name;
    std::string status; // ok | skipped | failed
};

struct Manifest {
    std::string config_sha256;
    std::vector<ManifestStage> stages;
    std::vector<std::pair<std::string, std::string>> inputs; // (stage, "path sha") rows
    std::vector<ManifestFile> artifacts;

    std::string to_text() const;
    static Manifest from_text(const std::string& text);

    // Hash of every artifact row; two runs match iff this matches.
    std::string artifacts_sha256() const;
};

struct RunOptions {
    bool force = false;
    bool quiet = false;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 2 validation, 3 stage failure
    std::string message;
    Manifest manifest;
};

// ingest -> features -> train -> pscore -> rate -> rank -> eval, persisting
// every intermediate artifact under config.out_dir and writing manifest.txt.
// A stage is skipped when its recorded inputs and outputs still hash the same
// (unless options.force).
RunResult run_pipeline(const PipelineConfig& config, const RunOptions& options,
                       std::ostream& log);

} // namespace riftrank
