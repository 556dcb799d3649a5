#pragma once

#include <string>

#include "psplan/synth.hpp"
#include "psplan/types.hpp"

namespace psplan {

// Technology costs as a flat key-value file with keys like
// `baseload.install_cost` and `wind.gen_cost`; missing keys keep defaults.
TechnologyParams load_tech_params(const std::string& path);
void save_tech_params(const TechnologyParams& params, const std::string& path);

// Synthesis settings (start_year, seed, demand.*, profile.*, temperature.*,
// wind.*, optional holidays_file) from one key-value file; missing keys keep
// defaults. See README for the full key list.
SynthConfig load_synth_config(const std::string& path);

// System designs as small JSON objects with the four capacity fields.
std::string design_to_json(const SystemDesign& design);
SystemDesign design_from_json(const std::string& text);
SystemDesign load_design_json(const std::string& path);
void save_design_json(const SystemDesign& design, const std::string& path);

}  // namespace psplan
