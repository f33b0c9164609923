// SPDX-License-Identifier: Apache-2.0
//
// cspa - channel static partner antenna simulator and analysis toolkit
// Copyright (C) 2026 The cspa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CSPA_SCENARIO_FILE_HPP
#define CSPA_SCENARIO_FILE_HPP

#include "cspa/core.hpp"
#include "cspa/keyvalue.hpp"

#include <filesystem>
#include <iosfwd>

namespace cspa
{
    // Scenario file schema
    //
    //   [carrier]     frequency_hz, medium_index
    //   [trajectory]  origin, direction, total_length_m, step_length_m
    //   [antenna.<id>] position, gain_dbi, motion
    //   [object.<n>]  kind = point_scatterer | plane_reflector,
    //                 position (scatterer) or point + normal (plane), reflectivity, motion
    //   [noise]       positioning_accuracy_m, settling_epsilon, settling_tau_s, seed
    //   [run]         dwell_time_s, speed_mps, tx, rx
    //
    // Vectors are written "x, y, z". Motion is "static", "along_T" or "along_T_scaled(<factor>)".
    // Omitted keys keep the default_scenario() values; trajectory.origin defaults to the tx
    // antenna position and tx/rx default to the first two antennas. Unknown sections and
    // keys are errors.

    // - Throws ConfigError naming the line and key
    Scenario parse_scenario(std::istream &in);

    // - Throws ConfigError; a missing file is reported with its path
    Scenario load_scenario(const std::filesystem::path &path);

    // Canonical text form; parse_scenario(format_scenario(s)) reproduces s exactly
    std::string format_scenario(const Scenario &s);

    std::string format_motion(const MotionAssignment &m);
    MotionAssignment parse_motion(std::string_view text); // Throws std::invalid_argument
    Vec3 parse_vec3(std::string_view text);               // Throws std::invalid_argument
}

#endif
