#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdpf/linalg.hpp"

namespace rdpf {

// One emitted result row. D and P are the levels the run operated at
// (achieved totals for multiplier-driven commands), rates are reported in
// both nats and bits, and the per-dimension groups carry the allocation and
// the achieving realization. `inputs` echoes everything needed to recompute
// the record from scratch.
struct DimensionRecord {
    double dist = 0.0;
    double perc = 0.0;
    double gain = 0.0;
    double noise_var = 0.0;
};

struct OutputRecord {
    std::string command;
    std::string metric;
    std::optional<double> s1;
    std::optional<double> s2;
    std::optional<double> dist;
    std::optional<double> perc;
    std::optional<double> rate_nats;
    std::optional<double> rate_bits;
    std::string region;  // I|II|III for scalar runs, convergence state for multivariate
    std::optional<long> iterations;
    std::optional<double> gap_final;
    std::vector<DimensionRecord> dims;
    std::string status = "ok";
    nlohmann::json inputs = nlohmann::json::object();
    std::optional<Vec> trace_gaps;  // only populated on request
};

inline constexpr const char* kCsvSchema = "rdpf-csv-v1";
inline constexpr const char* kJsonSchema = "rdpf-json-v1";

// Header line for a file whose widest record has max_dims dimension groups.
std::string csv_header(std::size_t max_dims);
std::string to_csv_row(const OutputRecord& record, std::size_t max_dims);
// Full file: schema comment, header, one row per record.
std::string to_csv(const std::vector<OutputRecord>& records);

nlohmann::json record_to_json(const OutputRecord& record);
nlohmann::json records_to_json(const std::vector<OutputRecord>& records);
OutputRecord record_from_json(const nlohmann::json& j);
std::vector<OutputRecord> records_from_json_text(const std::string& text);

}  // namespace rdpf
