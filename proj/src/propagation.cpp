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

#include "cspa/propagation.hpp"
#include "cspa/analysis.hpp"

#include <stdexcept>

namespace cspa
{
    namespace
    {
        double gain_linear(double gain_a_dbi, double gain_b_dbi)
        {
            return std::pow(10.0, (gain_a_dbi + gain_b_dbi) / 20.0);
        }

        PathContribution free_space_leg(PathKind kind, double path_length, double wavelength, double scale)
        {
            PathContribution p;
            p.kind = kind;
            p.path_length = path_length;
            p.amplitude = scale * wavelength / (4.0 * pi * path_length);
            p.phase = -two_pi * (path_length / wavelength);
            return p;
        }
    }

    PathContribution los_path(const Vec3 &a_to_b, double wavelength, double gain)
    {
        double d = a_to_b.norm();
        if (!(d > 0.0))
            throw std::invalid_argument("los_channel: coincident antenna positions");
        return free_space_leg(PathKind::los, d, wavelength, gain);
    }

    PathContribution scatter_path(const Vec3 &a_to_s, const Vec3 &s_to_b, double wavelength, double reflectivity)
    {
        double d1 = a_to_s.norm();
        double d2 = s_to_b.norm();
        if (!(d1 > 0.0) || !(d2 > 0.0))
            throw std::invalid_argument("point_scatter_contribution: scatterer coincides with an antenna");
        return free_space_leg(PathKind::scatter, d1 + d2, wavelength, reflectivity);
    }

    PathContribution image_path(const Vec3 &a_to_b, const Vec3 &plane_to_a, const Vec3 &plane_normal, double wavelength,
                                double reflectivity)
    {
        double ha = plane_to_a.dot(plane_normal);
        double hb = ha + a_to_b.dot(plane_normal);
        if (!(ha * hb > 0.0))
            throw std::invalid_argument("plane_image_contribution: antennas must lie strictly on the same side of the plane");
        // Mirror a across the plane: a' = a - 2 ha n, so b - a' = (b - a) + 2 ha n
        Vec3 image_to_b = a_to_b + plane_normal * (2.0 * ha);
        return free_space_leg(PathKind::image, image_to_b.norm(), wavelength, reflectivity);
    }

    cdouble los_channel(const Vec3 &pa, const Vec3 &pb, const Carrier &carrier, double gain_a_dbi, double gain_b_dbi)
    {
        return los_path(pb - pa, carrier.wavelength(), gain_linear(gain_a_dbi, gain_b_dbi)).value();
    }

    cdouble point_scatter_contribution(const Vec3 &pa, const Vec3 &scatterer, const Vec3 &pb, const Carrier &carrier, double reflectivity)
    {
        return scatter_path(scatterer - pa, pb - scatterer, carrier.wavelength(), reflectivity).value();
    }

    cdouble plane_image_contribution(const Vec3 &pa, const Vec3 &plane_point, const Vec3 &plane_normal, const Vec3 &pb,
                                     const Carrier &carrier, double reflectivity)
    {
        return image_path(pb - pa, pa - plane_point, plane_normal, carrier.wavelength(), reflectivity).value();
    }

    std::vector<PathContribution> path_contributions(const GeometryState &state, const Scenario &scenario,
                                                     std::size_t from, std::size_t to)
    {
        if (from >= state.antennas.size() || to >= state.antennas.size() || from == to)
            throw std::invalid_argument("total_channel: invalid antenna pair");
        if (state.objects.size() != scenario.objects.size() || state.antennas.size() != scenario.antennas.size())
            throw std::invalid_argument("total_channel: geometry state does not match scenario");

        const double wavelength = scenario.carrier.wavelength();
        const Placement &a = state.antennas[from];
        const Placement &b = state.antennas[to];
        const Vec3 a_to_b = separation(a, b);

        std::vector<PathContribution> paths;
        paths.reserve(1 + scenario.objects.size());
        paths.push_back(los_path(a_to_b, wavelength,
                                 gain_linear(scenario.antennas[from].gain_dbi, scenario.antennas[to].gain_dbi)));

        for (std::size_t i = 0; i < scenario.objects.size(); ++i)
        {
            const auto &obj = scenario.objects[i];
            const Placement &o = state.objects[i];
            if (std::holds_alternative<PointScatterer>(obj.shape))
                paths.push_back(scatter_path(separation(a, o), separation(o, b), wavelength, obj.reflectivity()));
            else
                paths.push_back(image_path(a_to_b, separation(o, a), std::get<PlaneReflector>(obj.shape).normal,
                                           wavelength, obj.reflectivity()));
        }
        return paths;
    }

    cdouble total_channel_between(const GeometryState &state, const Scenario &scenario, std::size_t from, std::size_t to)
    {
        cdouble h{0.0, 0.0};
        for (const auto &p : path_contributions(state, scenario, from, to))
            h += p.value();
        return h;
    }

    cdouble total_channel(const GeometryState &state, const Scenario &scenario)
    {
        std::size_t from = scenario.antenna_index(scenario.tx_id);
        std::size_t to = scenario.antenna_index(scenario.rx_id);
        if (from == Scenario::npos || to == Scenario::npos)
            throw std::invalid_argument("total_channel: tx or rx antenna missing");
        return total_channel_between(state, scenario, from, to);
    }

    std::vector<double> instantaneous_frequency(const Trace &trace)
    {
        const auto &s = trace.samples();
        if (s.size() < 2)
            throw std::invalid_argument("instantaneous_frequency: at least two samples are required");
        std::vector<double> phase = trace.phase_unwrapped();
        std::vector<double> f;
        f.reserve(s.size() - 1);
        for (std::size_t i = 1; i < s.size(); ++i)
        {
            double dt = s[i].time - s[i - 1].time;
            if (!(dt > 0.0))
                throw std::invalid_argument("instantaneous_frequency: duplicate or decreasing timestamps");
            f.push_back((phase[i] - phase[i - 1]) / (two_pi * dt));
        }
        return f;
    }
}
