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

#include "pcrpa/geom.hpp"

#include "pcrpa/error.hpp"

namespace pcrpa
{

ArrayGeometry::ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double spacing)
    : n_rows_(n_rows), n_cols_(n_cols), spacing_(spacing)
{
    require(n_rows >= 1 && n_cols >= 1, ErrorKind::invalid_argument, "array dimensions must be positive");
    require(std::isfinite(spacing) && spacing > 0.0, ErrorKind::invalid_argument, "element spacing must be positive");

    y_.resize(n_cols);
    z_.resize(n_rows);
    for (std::size_t c = 0; c < n_cols; ++c)
        y_[c] = (double(c) - 0.5 * double(n_cols - 1)) * spacing;
    for (std::size_t r = 0; r < n_rows; ++r)
        z_[r] = (double(r) - 0.5 * double(n_rows - 1)) * spacing;

    positions_.resize(3, Eigen::Index(size()));
    for (std::size_t i = 0; i < size(); ++i)
        positions_.col(Eigen::Index(i)) = Eigen::Vector3d(0.0, y_[col_of(i)], z_[row_of(i)]);
}

void ArrayGeometry::geometric_phases(const Eigen::Vector3d &r, cplx *out) const
{
    const double k = wavenumber();
    std::vector<cplx> ey(n_cols_), ez(n_rows_);
    for (std::size_t c = 0; c < n_cols_; ++c)
        ey[c] = std::polar(1.0, -k * y_[c] * r.y());
    for (std::size_t row = 0; row < n_rows_; ++row)
        ez[row] = std::polar(1.0, -k * z_[row] * r.z());
    for (std::size_t row = 0; row < n_rows_; ++row)
        for (std::size_t c = 0; c < n_cols_; ++c)
            out[index(row, c)] = ez[row] * ey[c];
}

ArrayGeometry build_rectangular(std::size_t n_rows, std::size_t n_cols, double spacing)
{
    return ArrayGeometry(n_rows, n_cols, spacing);
}

BitVector rot180_vector(const BitVector &x, const ArrayGeometry &geometry)
{
    require(x.size() == geometry.size(), ErrorKind::invalid_argument, "code length does not match the array size");
    return BitVector(x.rbegin(), x.rend());
}

RotationMap::RotationMap(const ArrayGeometry &geometry)
{
    if (geometry.size() % 2 != 0)
        fail(ErrorKind::unsupported_geometry, "central symmetry requires an even number of elements, got " +
                                                  std::to_string(geometry.size()));
    const std::size_t h = geometry.size() / 2;
    partner_.resize(h);
    for (std::size_t i = 0; i < h; ++i)
        partner_[i] = h - 1 - i;
}

BitVector RotationMap::apply(const BitVector &x) const
{
    require(x.size() == half(), ErrorKind::invalid_argument, "x_u length must be n/2");
    BitVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[partner_[i]];
    return out;
}

Eigen::MatrixXi RotationMap::matrix() const
{
    const auto h = Eigen::Index(half());
    Eigen::MatrixXi t = Eigen::MatrixXi::Zero(h, h);
    for (Eigen::Index i = 0; i < h; ++i)
        t(i, Eigen::Index(partner_[std::size_t(i)])) = 1;
    return t;
}

SymmetricPair central_symmetric_pair(const BitVector &x_u, const RotationMap &rotation)
{
    for (auto b : x_u)
        require(b <= 1, ErrorKind::invalid_argument, "x_u must be binary");
    const BitVector tx = rotation.apply(x_u);
    const std::size_t h = x_u.size();

    SymmetricPair p;
    p.x_1h.resize(2 * h);
    p.x_2v.resize(2 * h);
    for (std::size_t i = 0; i < h; ++i)
    {
        p.x_1h[i] = x_u[i];
        p.x_1h[h + i] = std::uint8_t(1 - tx[i]);
    }
    for (std::size_t i = 0; i < 2 * h; ++i)
        p.x_2v[i] = std::uint8_t(1 - p.x_1h[i]);
    return p;
}

CodingState::CodingState(BitVector x_h, BitVector x_v, BitVector x_1, BitVector x_2)
    : x_h_(std::move(x_h)), x_v_(std::move(x_v)), x_1_(std::move(x_1)), x_2_(std::move(x_2))
{
    const std::size_t n = x_h_.size();
    require(x_v_.size() == n && x_1_.size() == n && x_2_.size() == n, ErrorKind::invalid_argument,
            "coding vectors must have equal length");
    for (std::size_t i = 0; i < n; ++i)
    {
        require(x_h_[i] <= 1 && x_v_[i] <= 1 && x_1_[i] <= 1 && x_2_[i] <= 1, ErrorKind::invalid_argument,
                "coding vectors must be binary");
        require(x_h_[i] + x_v_[i] <= 1, ErrorKind::invalid_argument, "an element cannot be both H and V coded");
    }
}

CodingState CodingState::single_beam(BitVector x_h, BitVector x_v)
{
    const std::size_t n = x_h.size();
    return CodingState(std::move(x_h), std::move(x_v), BitVector(n, 1), BitVector(n, 0));
}

CodingState CodingState::dual_beam(BitVector x_1h, BitVector x_2v)
{
    BitVector x_1 = x_1h, x_2 = x_2v;
    return CodingState(std::move(x_1h), std::move(x_2v), std::move(x_1), std::move(x_2));
}

BitVector CodingState::x_1h() const
{
    BitVector out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out[i] = std::uint8_t(x_1_[i] & x_h_[i]);
    return out;
}

BitVector CodingState::x_2v() const
{
    BitVector out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out[i] = std::uint8_t(x_2_[i] & x_v_[i]);
    return out;
}

static std::vector<std::size_t> ones(const BitVector &x)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            idx.push_back(i);
    return idx;
}

std::vector<std::size_t> CodingState::index_h() const { return ones(x_h_); }
std::vector<std::size_t> CodingState::index_v() const { return ones(x_v_); }

std::string to_bit_string(const BitVector &x)
{
    std::string s(x.size(), '0');
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            s[i] = '1';
    return s;
}

BitVector from_bit_string(const std::string &s)
{
    BitVector x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] != '0' && s[i] != '1')
            fail(ErrorKind::invalid_argument, "bit string contains '" + std::string(1, s[i]) + "'");
        x[i] = std::uint8_t(s[i] == '1');
    }
    return x;
}

} // namespace pcrpa
