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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcrpa/types.hpp"

namespace pcrpa
{

/*!MD
# ArrayGeometry
Uniform rectangular lattice in the yz-plane

- Element positions are stored in wavelengths, so the wavenumber is `2*pi`.
- Broadside is the +x axis, i.e. (theta, phi) = (90 deg, 0 deg).
- Columns run along +y, rows along +z. Elements are indexed row-major: `i = row * n_cols + col`.
- The lattice is centered on the origin, so element `i` and element `n - 1 - i` sit at opposite positions.
MD!*/
class ArrayGeometry
{
public:
    ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double spacing);

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return n_cols_; }
    std::size_t size() const { return n_rows_ * n_cols_; }
    double spacing() const { return spacing_; }
    double wavenumber() const { return 2.0 * pi; }

    std::size_t index(std::size_t row, std::size_t col) const { return row * n_cols_ + col; }
    std::size_t row_of(std::size_t i) const { return i / n_cols_; }
    std::size_t col_of(std::size_t i) const { return i % n_cols_; }

    // 3 x n position matrix P [wavelengths]
    const Eigen::Matrix3Xd &positions() const { return positions_; }
    Eigen::Vector3d position(std::size_t i) const { return positions_.col(static_cast<Eigen::Index>(i)); }

    // Lattice coordinates: y of column c, z of row r [wavelengths]
    double y_of_col(std::size_t c) const { return y_[c]; }
    double z_of_row(std::size_t r) const { return z_[r]; }

    // Element used as the polarization reference (the lattice center, rounded down-right).
    std::size_t center_element() const { return index(n_rows_ / 2, n_cols_ / 2); }

    // Fills out[i] = exp(-j k p_i . r) for the direction r, using the lattice factorization.
    void geometric_phases(const Eigen::Vector3d &r, cplx *out) const;

private:
    std::size_t n_rows_;
    std::size_t n_cols_;
    double spacing_;
    std::vector<double> y_;
    std::vector<double> z_;
    Eigen::Matrix3Xd positions_;
};

ArrayGeometry build_rectangular(std::size_t n_rows, std::size_t n_cols, double spacing = 0.5);

// Entry i of the result is entry n-1-i of x (180 degree rotation of the lattice matrix).
BitVector rot180_vector(const BitVector &x, const ArrayGeometry &geometry);

/*!MD
# RotationMap
Pairing of the first lattice half with its centrally symmetric partners

`partner(i)` is the index within the second half of the element that mirrors element `i` of the
first half through the array center. Under row-major ordering this is the index reversal
`n/2 - 1 - i`, i.e. a permutation matrix with its ones on the anti-diagonal.
MD!*/
class RotationMap
{
public:
    explicit RotationMap(const ArrayGeometry &geometry);

    std::size_t half() const { return partner_.size(); }
    std::size_t partner(std::size_t i) const { return partner_[i]; }

    // (T x) for x of length n/2
    BitVector apply(const BitVector &x) const;

    // Dense binary T, (n/2) x (n/2)
    Eigen::MatrixXi matrix() const;

private:
    std::vector<std::size_t> partner_;
};

struct SymmetricPair
{
    BitVector x_1h;
    BitVector x_2v;
};

// x_1h = [x_u; 1 - T x_u], x_2v = 1 - x_1h.
SymmetricPair central_symmetric_pair(const BitVector &x_u, const RotationMap &rotation);

/*!MD
# CodingState
Polarization codes (x_h, x_v) and waveform codes (x_1, x_2) for all elements

- Invariants: binary entries, `x_h + x_v <= 1` elementwise.
- `x_1h()` and `x_2v()` are the Hadamard products selecting the elements of beam 1 (H port)
  and beam 2 (V port).
- Index lists are 0-based.
MD!*/
class CodingState
{
public:
    CodingState(BitVector x_h, BitVector x_v, BitVector x_1, BitVector x_2);

    // Single beam on waveform 1: x_1 = 1, x_2 = 0.
    static CodingState single_beam(BitVector x_h, BitVector x_v);

    // Dual beam with no cross-polarized elements: x_1 = x_h, x_2 = x_v.
    static CodingState dual_beam(BitVector x_1h, BitVector x_2v);

    std::size_t size() const { return x_h_.size(); }
    const BitVector &x_h() const { return x_h_; }
    const BitVector &x_v() const { return x_v_; }
    const BitVector &x_1() const { return x_1_; }
    const BitVector &x_2() const { return x_2_; }

    BitVector x_1h() const;
    BitVector x_2v() const;

    std::vector<std::size_t> index_h() const;
    std::vector<std::size_t> index_v() const;
    std::size_t n_h() const { return count_ones(x_h_); }
    std::size_t n_v() const { return count_ones(x_v_); }

private:
    BitVector x_h_, x_v_, x_1_, x_2_;
};

std::string to_bit_string(const BitVector &x);
BitVector from_bit_string(const std::string &s);

} // namespace pcrpa
