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

#include <vector>

#include "pcrpa/field.hpp"
#include "pcrpa/metrics.hpp"

namespace pcrpa
{

/*!MD
# SampleSet
Directions used to score candidate codes during optimization

- The visible part of the AEP grid decimated to roughly `step_deg`, the visible samples of the two
  principal cuts at full resolution, and finally the exact beam direction (always the last entry).
- `sidelobe[k]` marks samples in the sidelobe region, `cut[k]` samples on a principal cut.
MD!*/
struct SampleSet
{
    std::vector<Direction> directions;
    std::vector<std::uint8_t> sidelobe;
    std::vector<std::uint8_t> cut;

    std::size_t size() const { return directions.size(); }
    std::size_t beam_index() const { return directions.size() - 1; }
};

SampleSet make_sample_set(const AngularGrid &grid, const RegionSpec &regions, double step_deg = 2.0);

/*!MD
# PortTables
Per-element, per-sample field contributions of each port, including the steering weight

`hh(k, i)` is the H field at sample k radiated by the H port of element i driven with `w_h[i]`,
`vh` the V field from that port, and `hv`, `vv` the same for the V port driven with `w_v[i]`.
MD!*/
struct PortTables
{
    Eigen::MatrixXcd hh, vh, hv, vv;
};

PortTables make_port_tables(const PatternEngine &engine, const WeightSet &weights, const SampleSet &samples);

/*!MD
# AffineResponse
Complex field samples that depend affinely on a binary vector z: f = offset + K z

Batches of candidates are scored with one real matrix product per component. Rows are processed
in fixed-size blocks so the result does not depend on the worker count.
MD!*/
class AffineResponse
{
public:
    AffineResponse() = default;
    AffineResponse(const Eigen::VectorXcd &offset, const Eigen::MatrixXcd &gain);

    Eigen::Index points() const { return offset_re_.size(); }
    Eigen::Index variables() const { return k_re_.cols(); }

    // |f|^2 for every column of z (variables x batch); result is points x batch
    Eigen::MatrixXd power(const Eigen::MatrixXd &z) const;

    cplx value(Eigen::Index row, const BitVector &z) const;

private:
    Eigen::VectorXd offset_re_, offset_im_;
    Eigen::MatrixXd k_re_, k_im_;
};

// Columns of z from a batch of binary vectors
Eigen::MatrixXd to_matrix(const std::vector<BitVector> &batch);

} // namespace pcrpa
