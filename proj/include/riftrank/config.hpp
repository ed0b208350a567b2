#pragma once

#include <map>
#include <string>

#include "riftrank/cross_validation.hpp"
#include "riftrank/features.hpp"
#include "riftrank/forecast.hpp"
#include "riftrank/rating_engine.hpp"
#include "riftrank/synthetic.hpp"

namespace riftrank {

// Minimal INI reader: [section] headers, key = value pairs, # or ; comments.
// Unknown keys are rejected so config typos fail loudly.
class IniFile {
  public:
    static IniFile parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int64_t get_int(const std::string& section, const std::string& key, int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    // Keys never read by any getter; used to reject unknown settings.
    std::vector<std::string> unread_keys() const;

  private:
    std::map<std::string, std::string> values_; // "section.key" -> value
    mutable std::map<std::string, bool> read_;
};

// Everything the pipeline needs, with every knob defaulted.
struct PipelineConfig {
    // [io]
    std::string games_path;
    std::string out_dir = "out";
    // [run]
    uint64_t seed = 17;
    // [features]
    FeatureConfig features;
    // [model]
    int k_folds = 5;
    WinModelOptions model;
    bool pool_percentile = false;
    // [rating]
    RatingConfig rating;
    UpdateMode mode = UpdateMode::kFfa;
    RatingVariant variant = RatingVariant::kMeta;
    // [eval]
    ForecastOptions forecast;
    double ewma_alpha = 0.05;
    // [simulate]
    SyntheticConfig synthetic;

    static PipelineConfig defaults() { return {}; }
    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig from_ini(const IniFile& ini);

    void validate() const; // throws ValidationError when a knob is out of range

    // Effective configuration echoed as INI text, deterministic key order.
    std::string echo() const;
};

} // namespace riftrank
