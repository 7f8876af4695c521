// SPDX-License-Identifier: Apache-2.0
//
// pcrpa - pattern synthesis for polarization-coding reconfigurable phased arrays
// Copyright (C) 2026 The pcrpa authors
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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pcrpa/types.hpp"

namespace pcrpa
{

class ArrayGeometry;

/*!MD
# AngularGrid
Uniform (theta, phi) sampling grid in degrees

Points are ordered theta-major, then phi: `point = it * n_phi + ip`.
MD!*/
struct AngularGrid
{
    double theta_start_deg = 0.0;
    double theta_step_deg = 1.0;
    std::uint32_t n_theta = 181;
    double phi_start_deg = -180.0;
    double phi_step_deg = 1.0;
    std::uint32_t n_phi = 360;

    // theta in [0, 180], phi in [-180, 180 - step]
    static AngularGrid full_sphere(double step_deg = 1.0);

    // Single-theta grid (a phi cut), used for linear-array studies
    static AngularGrid phi_cut(double theta_deg, double phi_start_deg, double phi_step_deg, std::uint32_t n_phi);

    std::size_t size() const { return std::size_t(n_theta) * n_phi; }
    std::size_t point(std::size_t it, std::size_t ip) const { return it * n_phi + ip; }
    double theta_deg(std::size_t it) const { return theta_start_deg + double(it) * theta_step_deg; }
    double phi_deg(std::size_t ip) const { return phi_start_deg + double(ip) * phi_step_deg; }
    Direction direction(std::size_t point) const
    {
        return Direction::from_degrees(theta_deg(point / n_phi), phi_deg(point % n_phi));
    }

    // phi samples wrap around the full circle
    bool phi_periodic() const;
    // theta spans [0, 180] and phi is periodic
    bool covers_sphere() const;

    std::size_t nearest_theta(double theta_rad) const;
    std::size_t nearest_phi(double phi_rad) const;
    std::size_t nearest_point(const Direction &d) const { return point(nearest_theta(d.theta), nearest_phi(d.phi)); }

    // Decimated copy keeping every factor-th sample from the start of each axis
    AngularGrid decimated(std::size_t factor) const;

    void validate() const;
    bool operator==(const AngularGrid &) const = default;
};

enum class PhaseReference : std::uint8_t
{
    common = 0,   // geometric phase exp(-j k p.r) is applied by the pattern engine
    embedded = 1, // patterns already carry each element's position phase
};

// Field component A radiated by port B, named g_AB. Order matches the AEPv1 payload blocks.
enum class Component : int
{
    hh = 0,
    vh = 1,
    hv = 2,
    vv = 3,
};

/*!MD
# AepSet
Active element patterns of all elements on one angular grid

- Stored either dense (`n_elements x n_theta x n_phi` per component) or separable, where
  every element shares four component grids scaled by one complex coefficient per element.
  The synthetic element model produces separable sets; files always load dense.
- `jones(i, p)` returns the 2x2 port-to-field matrix of element `i` at grid point `p`:
  rows are the field components (H, V), columns the ports (H, V).
MD!*/
class AepSet
{
public:
    using Blocks = std::array<std::vector<cplx>, 4>;

    static AepSet dense(const AngularGrid &grid, std::size_t n_elements, PhaseReference reference, Blocks blocks);
    static AepSet separable(const AngularGrid &grid, PhaseReference reference, std::vector<cplx> coefficients,
                            Blocks shared);

    const AngularGrid &grid() const { return grid_; }
    std::size_t elements() const { return n_elements_; }
    PhaseReference phase_reference() const { return reference_; }
    bool is_separable() const { return separable_; }

    cplx value(Component c, std::size_t element, std::size_t point) const
    {
        const auto k = static_cast<std::size_t>(c);
        if (separable_)
            return coefficients_[element] * blocks_[k][point];
        return blocks_[k][element * grid_.size() + point];
    }

    Eigen::Matrix2cd jones(std::size_t element, std::size_t point) const;

    // Bilinear interpolation on the grid; out_of_domain if the direction is not covered.
    Eigen::Matrix2cd jones_at(std::size_t element, const Direction &d) const;

    // Separable storage only
    const std::vector<cplx> &coefficients() const { return coefficients_; }
    const std::vector<cplx> &shared(Component c) const { return blocks_[static_cast<std::size_t>(c)]; }

    // Dense copy (expands separable storage)
    AepSet to_dense() const;

    void validate() const;

private:
    AepSet() = default;

    AngularGrid grid_;
    std::size_t n_elements_ = 0;
    PhaseReference reference_ = PhaseReference::common;
    bool separable_ = false;
    std::vector<cplx> coefficients_;
    Blocks blocks_;
};

// Bilinear interpolation stencil on a grid: up to four (point, weight) pairs.
struct GridStencil
{
    std::array<std::size_t, 4> point{};
    std::array<double, 4> weight{};
    int count = 0;
};
GridStencil grid_stencil(const AngularGrid &grid, const Direction &d);

struct SyntheticElementSpec
{
    double q_e = 1.0;              // E-plane taper exponent
    double q_h = 1.0;              // H-plane taper exponent
    double xpol_level_db = -25.0;  // peak leakage relative to the co-pol peak; -inf disables it
    double xpol_phase_deg = 90.0;  // phase of the leakage terms relative to co-pol
    double error_amplitude_db = 0.3;
    double error_phase_deg = 3.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Co-pol floor in the back hemisphere (-60 dB)
constexpr double back_hemisphere_floor = 1e-3;

// Parametric dual-polarized element: cos^q taper about +x, leakage cross-pol that vanishes at
// broadside, and one seeded complex ripple per element shared by all four components.
AepSet synth_aep(const SyntheticElementSpec &spec, const ArrayGeometry &geometry, const AngularGrid &grid);

// Ripple-free element with unit co-pol everywhere and no leakage.
AepSet isotropic_aep(const ArrayGeometry &geometry, const AngularGrid &grid);

// Shared (ripple-free) component values of the synthetic element at one direction.
std::array<cplx, 4> synthetic_element_pattern(const SyntheticElementSpec &spec, const Direction &d);

// AEPv1 binary format
std::vector<std::uint8_t> serialize_aep(const AepSet &aep);
AepSet parse_aep(std::span<const std::uint8_t> bytes);
void save_aep(const AepSet &aep, const std::filesystem::path &path);
AepSet load_aep(const std::filesystem::path &path);

bool identical(const AepSet &a, const AepSet &b);

} // namespace pcrpa
