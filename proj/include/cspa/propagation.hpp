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

#ifndef CSPA_PROPAGATION_HPP
#define CSPA_PROPAGATION_HPP

#include "cspa/core.hpp"
#include "cspa/motion.hpp"

namespace cspa
{
    // Phase convention: exp(-i 2 pi d / lambda), i.e. phase decreases with path length.

    enum class PathKind
    {
        los,
        scatter,
        image
    };

    struct PathContribution
    {
        PathKind kind = PathKind::los;
        double path_length = 0.0; // [m]
        double amplitude = 0.0;   // >= 0
        double phase = 0.0;       // -2 pi path_length / lambda, not wrapped

        cdouble value() const { return std::polar(amplitude, phase); }
    };

    // Friis line-of-sight coefficient g (lambda / (4 pi d)) exp(-i 2 pi d / lambda) with
    // g = 10^((gain_a + gain_b) / 20)
    // - Throws std::invalid_argument for coincident positions
    cdouble los_channel(const Vec3 &pa, const Vec3 &pb, const Carrier &carrier, double gain_a_dbi = 0.0, double gain_b_dbi = 0.0);

    // Single bounce off a point scatterer: Γ (lambda / (4 pi (d1 + d2))) exp(-i 2 pi (d1 + d2) / lambda)
    // - Throws std::invalid_argument if the scatterer coincides with either antenna
    cdouble point_scatter_contribution(const Vec3 &pa, const Vec3 &scatterer, const Vec3 &pb, const Carrier &carrier, double reflectivity);

    // Image-source reflection off an infinite plane: Γ times the 0 dBi LOS channel from the
    // mirrored pa to pb
    // - Throws std::invalid_argument unless pa and pb lie strictly on the same side of the plane
    cdouble plane_image_contribution(const Vec3 &pa, const Vec3 &plane_point, const Vec3 &plane_normal, const Vec3 &pb,
                                     const Carrier &carrier, double reflectivity);

    // Same paths expressed through relative vectors. These are what the simulator uses; they only
    // see differences of positions, which keeps co-translated geometries bit-identical.
    PathContribution los_path(const Vec3 &a_to_b, double wavelength, double gain_linear = 1.0);
    PathContribution scatter_path(const Vec3 &a_to_s, const Vec3 &s_to_b, double wavelength, double reflectivity);
    PathContribution image_path(const Vec3 &a_to_b, const Vec3 &plane_to_a, const Vec3 &plane_normal, double wavelength,
                                double reflectivity);

    // Channel between the scenario's tx and rx antennas: LOS plus every single-bounce path
    cdouble total_channel(const GeometryState &state, const Scenario &scenario);

    // Channel between two arbitrary antennas, given by index into scenario.antennas
    cdouble total_channel_between(const GeometryState &state, const Scenario &scenario, std::size_t from, std::size_t to);

    // Every path contributing to total_channel_between, LOS first, then objects in scenario order
    std::vector<PathContribution> path_contributions(const GeometryState &state, const Scenario &scenario,
                                                     std::size_t from, std::size_t to);

    // (1 / 2 pi) d(phase) / dt between successive samples, on the unwrapped phase [Hz]
    // - Throws std::invalid_argument for fewer than two samples or non-increasing time
    std::vector<double> instantaneous_frequency(const Trace &trace);
}

#endif
