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
#include <utility>
#include <vector>

#include "pcrpa/elements.hpp"
#include "pcrpa/geom.hpp"
#include "pcrpa/polar.hpp"
#include "pcrpa/types.hpp"

namespace pcrpa
{

// Phase-only port weights, |w| = 1.
struct WeightSet
{
    Eigen::VectorXcd w_h;
    Eigen::VectorXcd w_v;
};

// w_h = w_v = exp(j k P^T r0)
WeightSet steering_weights(const ArrayGeometry &geometry, const Direction &beam);

// w_v *= exp(j beta)
WeightSet apply_compensation(const WeightSet &weights, double beta);

// Complex drive of every element's H and V port (weights times codes, plus any port scaling).
struct Excitation
{
    Eigen::VectorXcd h;
    Eigen::VectorXcd v;
};

Excitation make_excitation(const WeightSet &weights, const BitVector &x_h, const BitVector &x_v);
Excitation scale_ports(const Excitation &e, cplx p_h, cplx p_v);

/*!MD
# FieldPattern
Raw complex H/V field on the AEP grid plus the exact value at the beam direction

The beam direction does not need to be a grid point; `beam_h`/`beam_v` are evaluated there
directly. After `set_polarization` the co/cross components are available as well.
MD!*/
struct FieldPattern
{
    AngularGrid grid;
    std::vector<cplx> f_h;
    std::vector<cplx> f_v;
    Direction beam;
    cplx beam_h{};
    cplx beam_v{};

    std::optional<PolarizationState> polarization;
    std::vector<cplx> f_co;
    std::vector<cplx> f_cr;
    cplx beam_co{};
    cplx beam_cr{};

    void set_polarization(const PolarizationState &state);
    bool has_copol() const { return polarization.has_value(); }
};

// Linear combination a*ca + b*cb of two congruent patterns (polarization taken from a).
FieldPattern combine(const FieldPattern &a, cplx ca, const FieldPattern &b, cplx cb);

/*!MD
# PatternEngine
Evaluates array patterns from element excitations

f(r) = sum_i J_i(r) [h_i; v_i] exp(-j k p_i . r), where `J_i` is the element's port-to-field
matrix. The geometric phase is dropped for AEP sets whose phase reference is `embedded`.
The engine keeps references to the geometry and AEP set; both must outlive it.
MD!*/
class PatternEngine
{
public:
    PatternEngine(const ArrayGeometry &geometry, const AepSet &aep);

    const ArrayGeometry &geometry() const { return geometry_; }
    const AepSet &aep() const { return aep_; }

    FieldPattern evaluate(const Excitation &excitation, const Direction &beam) const;

    // (f_h, f_v) at one direction
    std::pair<cplx, cplx> evaluate_at(const Excitation &excitation, const Direction &d) const;

    // Port-to-field matrix of element i at d including the geometric phase
    Eigen::Matrix2cd element_response(std::size_t i, const Direction &d) const;

private:
    const ArrayGeometry &geometry_;
    const AepSet &aep_;
};

FieldPattern evaluate_pattern(const PatternEngine &engine, const WeightSet &weights, const BitVector &x_h,
                              const BitVector &x_v, const Direction &beam);

// Beam 1 radiates from the H ports of x_1h, beam 2 from the V ports of x_2v.
std::pair<FieldPattern, FieldPattern> evaluate_beam_pair(const PatternEngine &engine, const WeightSet &weights,
                                                         const BitVector &x_1h, const BitVector &x_2v,
                                                         const Direction &beam);

/*!MD
# CalibrationMatrix
2x2 coupling between two channels and the field at the beam direction

`m(A, B)` is field component A at the beam when only channel B is excited, normalized so
`m(0, 0) = 1`. For the conventional array the channels are the H and V port groups; for a
dual-beam pair they are the two beams.
MD!*/
struct CalibrationMatrix
{
    Eigen::Matrix2cd m;
    Eigen::Matrix2cd m_inv;
    double condition = 1.0;

    static CalibrationMatrix from_coupling(const Eigen::Matrix2cd &raw);
};

// Conventional array, all elements on both ports with steering weights.
CalibrationMatrix estimate_calibration(const PatternEngine &engine, const Direction &beam);

// Channel pair given by two patterns (e.g. the two beams of a dual-polarized configuration).
CalibrationMatrix estimate_calibration(const FieldPattern &channel_1, const FieldPattern &channel_2);

// m_inv * desired
Eigen::Vector2cd apply_calibration(const CalibrationMatrix &cal, const Eigen::Vector2cd &desired);

// Corrected channel pair: channel k' = sum_j channel_j * (m_inv e_k)_j, H for k=0, V for k=1.
std::pair<FieldPattern, FieldPattern> calibrate_pair(const CalibrationMatrix &cal, const FieldPattern &channel_1,
                                                     const FieldPattern &channel_2);

} // namespace pcrpa
