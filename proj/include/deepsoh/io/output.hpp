#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "deepsoh/degradation/cell.hpp"
#include "deepsoh/identify/experiment.hpp"
#include "deepsoh/io/config.hpp"
#include "deepsoh/protocol/campaign.hpp"

namespace deepsoh::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int state_format_version = 1;

/// Shortest decimal that round-trips, independent of the global locale.
std::string format_number(double v);

// CSV headers (stable):
//   samples: time_s,current_a,voltage_v,x,y,cycle,step
//   cycles:  cycle,time_s,capacity_ah,delta_sei_m,delta_pl_m,capacity_pos_ah,capacity_neg_ah,lli,
//            lli_reconstructed,resistance_ohm,expansion_m
//   curves:  capacity_ah,voltage_v
void write_samples_csv(const std::filesystem::path& path, const std::vector<protocol::Sample>& samples);
void write_cycles_csv(const std::filesystem::path& path, const std::vector<protocol::CycleRecord>& cycles);
void write_curve_csv(const std::filesystem::path& path, const measurement::Curve& curve);
measurement::Curve read_curve_csv(const std::filesystem::path& path);

Json to_json(const degradation::DeepSOH& soh);
degradation::DeepSOH deepsoh_from_json(const Json& j);
Json to_json(const measurement::ESOHRecord& e);
Json rpt_summary(const protocol::RptResult& rpt);
Json trajectory_summary(const protocol::Trajectory& t);
Json to_json(const identify::MeasurementVector& y);
Json to_json(const identify::IdentificationResult& r);
Json ambiguity_summary(const identify::AmbiguityReport& report);

void write_json(const std::filesystem::path& path, const Json& j);

/// Versioned snapshot of a cell: degradation state, particle profiles, LAM
/// lithium tally and clock.
Json state_to_json(const degradation::Cell& cell);
degradation::Cell state_from_json(const Json& j, std::shared_ptr<const Model> model);
degradation::Cell read_state(const std::filesystem::path& path, std::shared_ptr<const Model> model);

/// [measurement] section: capacity_pos, capacity_neg, lli, resistance and an
/// optional expansion.
identify::MeasurementVector load_measurement(const ConfigFile& file);

std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> outputs;
};

/// Writes manifest.json into `directory` with a content hash per input and
/// output file. The wall-clock stamp lives only here, so the outputs
/// themselves stay byte-reproducible.
void write_manifest(const std::filesystem::path& directory, const RunManifest& manifest);

}  // namespace deepsoh::io
