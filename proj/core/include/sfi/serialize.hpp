#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sfi/bound_states.hpp"
#include "sfi/momentum_map.hpp"
#include "sfi/params.hpp"
#include "sfi/rates.hpp"

// CSV and JSON writers for the library's tabular results.
//
// CSV files start with '#'-prefixed metadata lines ("# key: value"), then a
// single header row, then data rows. Floating-point fields use the shortest
// representation that round-trips to the same double. JSON documents have a
// top-level {"meta": ..., "data": ...} split.
namespace sfi {

struct OutputMeta {
    std::string task;
    std::string config_hash;
    nlohmann::json field = nullptr;  // FieldParams echo, or null
    nlohmann::json extra = nlohmann::json::object();
};

std::string format_double(double v);
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

nlohmann::json to_json(const FieldParams& fp);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const BoundStateModel& s);
nlohmann::json to_json(const RegimeCell& c);

nlohmann::json meta_json(const OutputMeta& meta);
std::string csv_meta_block(const OutputMeta& meta);

std::string regime_csv(const RegimeMap& map, const OutputMeta& meta);
nlohmann::json regime_json(const RegimeMap& map, const OutputMeta& meta);

std::string spectrum_csv(const std::vector<SpectrumEntry>& s, const OutputMeta& meta);
nlohmann::json spectrum_json(const std::vector<SpectrumEntry>& s, const OutputMeta& meta);

struct AngularSample {
    double theta = 0.0;
    double phi = 0.0;
    double rate = 0.0;
};

std::string angular_csv(const std::vector<AngularSample>& s, const OutputMeta& meta);
nlohmann::json angular_json(const std::vector<AngularSample>& s, const OutputMeta& meta);

std::string rate_grid_csv(const RateGrid& g, const OutputMeta& meta);
nlohmann::json rate_grid_json(const RateGrid& g, const OutputMeta& meta);

// Column documentation for every CSV layout, keyed by layout name.
struct CsvColumn {
    std::string name;
    std::string description;
};
struct CsvLayout {
    std::string name;
    std::vector<CsvColumn> columns;
};
const std::vector<CsvLayout>& csv_layouts();

}  // namespace sfi
