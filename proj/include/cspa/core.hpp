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

#ifndef CSPA_CORE_HPP
#define CSPA_CORE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cspa
{
    using cdouble = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0; // Vacuum speed of light in [m/s]
    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double two_pi = 2.0 * pi;

    inline constexpr std::uint64_t default_seed = 2450; // Used whenever no seed is given

    // Cartesian position or displacement, all components in [m]
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 &operator+=(const Vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        double norm() const { return std::sqrt(dot(*this)); }
        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    // Carrier frequency and propagation medium; the wavelength is always derived
    struct Carrier
    {
        double frequency_hz = 2.45e9;
        double medium_index = 1.0; // Refractive index of the homogeneous medium, >= 1

        double wavelength() const { return speed_of_light / (medium_index * frequency_hz); }
    };

    // Wavelength in [m] inside a homogeneous medium
    // - Throws std::invalid_argument for frequency <= 0 or medium_index < 1
    double wavelength_of(double frequency_hz, double medium_index = 1.0);

    enum class MotionMode
    {
        stationary,
        along_trajectory,
        along_trajectory_scaled
    };

    // How an antenna or object is displaced per unit of trajectory progress
    struct MotionAssignment
    {
        MotionMode mode = MotionMode::stationary;
        double factor = 1.0;

        static MotionAssignment stationary() { return {MotionMode::stationary, 1.0}; }
        static MotionAssignment along_trajectory() { return {MotionMode::along_trajectory, 1.0}; }
        static MotionAssignment scaled(double f) { return {MotionMode::along_trajectory_scaled, f}; }

        // Displacement per meter of nominal trajectory progress
        double rate() const { return mode == MotionMode::stationary ? 0.0 : factor; }
        bool operator==(const MotionAssignment &) const = default;
    };

    struct Antenna
    {
        std::string id;
        Vec3 initial_position;
        double gain_dbi = 0.0;
        MotionAssignment motion;
    };

    // Straight-line trajectory T of the mobile antenna
    struct Trajectory
    {
        Vec3 origin;
        Vec3 direction{1.0, 0.0, 0.0}; // Unit vector
        double total_length = 1.782;   // [m]
        double step_length = 0.05 * speed_of_light / 2.45e9;

        // Index of the last position; positions are n = 0 .. last_step()
        std::size_t last_step() const;
    };

    struct PointScatterer
    {
        Vec3 position;
        double reflectivity = 0.0; // 0 .. 1
    };

    // Infinite planar reflector
    struct PlaneReflector
    {
        Vec3 point;
        Vec3 normal{0.0, 0.0, 1.0}; // Unit vector
        double reflectivity = 0.0;  // 0 .. 1
    };

    struct EnvironmentObject
    {
        std::variant<PointScatterer, PlaneReflector> shape;
        MotionAssignment motion;

        double reflectivity() const;
        Vec3 anchor() const; // Scatterer position or plane point
    };

    struct NoiseConfig
    {
        double positioning_accuracy = 2.0e-5; // CNC accuracy bound [m]
        double settling_epsilon = 0.0;        // Vibration perturbation scale, 0 disables settling
        double settling_tau = 0.04;           // Vibration decay constant [s]
        std::uint64_t seed = default_seed;
    };

    struct Scenario
    {
        Carrier carrier;
        std::vector<Antenna> antennas;
        std::string tx_id = "A"; // Mobile antenna A
        std::string rx_id = "B"; // Partner antenna B
        Trajectory trajectory;
        std::vector<EnvironmentObject> objects;
        NoiseConfig noise;
        double dwell_time = 0.2; // Idle time before each measurement [s]
        double speed = 0.1;      // Traversal speed between positions [m/s]

        // Index into antennas, or npos if absent
        std::size_t antenna_index(const std::string &id) const;
        const Antenna &antenna(const std::string &id) const;

        static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    };

    struct Violation
    {
        std::string field;
        std::string rule;
    };

    // Checks every invariant of the scenario, including the clearances needed to simulate
    // all strategies without singular geometry. Returns an empty list for a valid scenario.
    std::vector<Violation> validate_scenario(const Scenario &s);

    // Throws std::invalid_argument listing all violations
    void require_valid(const Scenario &s);

    // Free-space 2.45 GHz scenario: B at the origin, A 1.375 m away moving 1.782 m further away
    Scenario default_scenario();

    // default_scenario() plus three static point scatterers (reflectivity 0.1 .. 0.15) standing in for
    // uncovered metal parts, with settling vibrations enabled
    Scenario clutter_scenario();

    struct ChannelSample
    {
        std::uint64_t step_index = 0;
        double time = 0.0;           // [s]
        double moved_distance = 0.0; // [m]
        cdouble h;                   // Complex transmission coefficient

        bool operator==(const ChannelSample &) const = default;
    };

    // Ordered, gapless sequence of channel samples from one run
    class Trace
    {
    public:
        // Throws std::invalid_argument if the samples are empty, have a step_index gap,
        // non-increasing time, or a non-finite coefficient
        Trace(std::vector<ChannelSample> samples, std::string strategy_label,
              std::string scenario_digest, double wavelength);

        const std::vector<ChannelSample> &samples() const { return samples_; }
        const std::string &strategy_label() const { return strategy_label_; }
        const std::string &scenario_digest() const { return scenario_digest_; }
        double wavelength() const { return wavelength_; }
        std::size_t size() const { return samples_.size(); }

        std::vector<cdouble> coefficients() const;
        std::vector<double> magnitude_db() const;
        std::vector<double> phase_wrapped() const;
        std::vector<double> phase_unwrapped() const;

        Trace relabeled(std::string label) const;

        bool operator==(const Trace &) const = default;

    private:
        std::vector<ChannelSample> samples_;
        std::string strategy_label_;
        std::string scenario_digest_;
        double wavelength_;
    };

    // 20 log10 |h|
    inline double to_db(cdouble h) { return 20.0 * std::log10(std::abs(h)); }

    // Stable 16 hex digit identifier of the scenario's canonical text form
    std::string scenario_digest(const Scenario &s);
}

#endif
