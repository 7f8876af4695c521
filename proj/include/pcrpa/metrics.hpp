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

#include <optional>

#include "pcrpa/field.hpp"

namespace pcrpa
{

enum class CutPlane
{
    elevation, // phi fixed at the beam, theta varies
    azimuth,   // theta fixed at the beam, phi varies
};

/*!MD
# RegionSpec
Mainlobe disc and sidelobe region around the beam

- The visible region is the half-space in front of the array, `r . x >= 0`.
- The mainlobe `Omega_mb` is the set of directions within `mainlobe_radius` (great-circle) of the
  beam. The sidelobe region `Omega_sl` is visible minus mainlobe.
- `make_regions` sets the radius to `radius_factor * HPBW / 2`, using the wider of the two principal
  cuts (the azimuth cut is converted to arc length with `sin(theta0)`).
MD!*/
struct RegionSpec
{
    Direction beam;
    double mainlobe_radius = 0.0; // [rad]
    double radius_factor = 2.0;

    static bool visible(const Direction &d);
    bool in_mainlobe(const Direction &d) const { return angular_distance(d, beam) <= mainlobe_radius; }
    bool in_sidelobe(const Direction &d) const { return visible(d) && !in_mainlobe(d); }
};

RegionSpec make_regions(const FieldPattern &reference, double radius_factor = 2.0);
RegionSpec regions_with_radius(const Direction &beam, double radius_rad);

struct MetricsReport
{
    double psl_db = 0.0;
    double xpl_db = 0.0;
    double xplm_db = 0.0;
    std::optional<double> directivity_dbi; // full-sphere grids only
    double hpbw_deg = 0.0;
    std::optional<double> power_db;
    std::optional<double> me_db;
};

// 20 log10(max_sl |f_co| / max_grid |f_co|)
double psl(const FieldPattern &pattern, const RegionSpec &regions);

// Beam-peak cross-polarization level
double xpl(const FieldPattern &pattern);

// Peak cross-pol over the two visible principal cuts through the beam, relative to max |f_co|
double xplm(const FieldPattern &pattern);

// 10 log10(4 pi U(beam) / integral of U over the sphere), trapezoidal quadrature
double directivity(const FieldPattern &pattern);

// 20 log10(|f_co(beam)| / |f_co,ref(beam)|)
double power_at_beam(const FieldPattern &pattern, const FieldPattern &reference);

// 20 log10(sum_k ||f_1,k| - |f_2,k|| / |f_1,k|) over the mainlobe grid points
double matching_error(const FieldPattern &beam_1, const FieldPattern &beam_2, const RegionSpec &regions);

// -3 dB width on a principal cut, in degrees of the cut coordinate
double half_power_beamwidth(const FieldPattern &pattern, CutPlane plane);

// Wider of the two cut widths as arc length: max(elevation, azimuth * sin(theta0)) [deg].
// Cuts with a single sample are skipped.
double effective_beamwidth(const FieldPattern &pattern);

MetricsReport evaluate_metrics(const FieldPattern &pattern, const RegionSpec &regions,
                               const FieldPattern *reference = nullptr);

} // namespace pcrpa
