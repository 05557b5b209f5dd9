#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "deepsoh/identify/experiment.hpp"
#include "deepsoh/io/config.hpp"
#include "deepsoh/model.hpp"
#include "deepsoh/protocol/campaign.hpp"

namespace deepsoh::io {

/// Cell configuration file. Sections: [cell] [positive] [negative] [sei]
/// [plating] [lam] [expansion], plus the optional [run] and [ambiguity].
ModelParameters load_model_parameters(const ConfigFile& file);

struct RunSettings {
  std::uint64_t seed = 1;
  double esoh_noise = 0.0;  // V, Gaussian noise on pseudo-OCV curves before fitting
};
RunSettings load_run_settings(const ConfigFile& file);

/// Optional [ambiguity] section; absent keys keep their defaults.
identify::AmbiguityConfig load_ambiguity_config(const ConfigFile& file);

/// Protocol file: [campaign] settings and a [cycle] section whose repeated
/// `step = ...` lines form the cycle, e.g.
///   step = discharge C/5 until V <= 3.0
///   step = charge 1.2 A until V >= 4.2 or t >= 6 h
///   step = hold 4.2 V until I <= C/100
///   step = rest 18 h
struct ProtocolFile {
  protocol::Campaign campaign;
  protocol::EngineOptions engine;
};
ProtocolFile load_protocol(const ConfigFile& file);

/// Parses the right-hand side of one `step =` line.
protocol::ProtocolStep parse_step(const std::string& text, int line);

}  // namespace deepsoh::io
