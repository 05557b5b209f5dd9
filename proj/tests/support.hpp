#pragma once

#include <filesystem>
#include <memory>

#include "deepsoh/io/loaders.hpp"
#include "deepsoh/model.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return DEEPSOH_DATA_DIR; }

inline deepsoh::ModelParameters demo_parameters() {
  return deepsoh::io::load_model_parameters(deepsoh::io::ConfigFile::load(data_dir() / "demo_cell.cfg"));
}

inline std::shared_ptr<const deepsoh::Model> demo_model() { return deepsoh::Model::create(demo_parameters()); }

inline deepsoh::io::ProtocolFile demo_protocol() {
  return deepsoh::io::load_protocol(deepsoh::io::ConfigFile::load(data_dir() / "second_life.protocol"));
}

/// Same model with every degradation mechanism switched off.
inline deepsoh::ModelParameters inert_parameters() {
  auto p = demo_parameters();
  p.degradation.sei.rate_constant = 0.0;
  p.degradation.plating.rate_constant = 0.0;
  auto& l = p.degradation.lam;
  l.beta1_pos = l.beta2_pos = l.beta1_neg = l.beta2_neg = 0.0;
  return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing
