// SPDX-License-Identifier: Apache-2.0
//
// cfce - channel estimation toolkit for RIS-assisted cell-free massive MIMO
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

#ifndef cfce_geometry_H
#define cfce_geometry_H

#include "cfce/common.hpp"

#include <vector>

namespace cfce
{

// Scenario description: node counts, array sizes, powers and spacing.
struct SystemConfig
{
    int num_bs = 3;                      // number of base stations
    int num_ris = 3;                     // number of RISs
    int num_users = 8;                   // single-antenna users
    std::vector<int> bs_antennas;        // J_m per BS
    int ris_elements = 128;              // L, identical for every RIS
    int paths_bs_ris = 3;                // P_f
    int paths_ris_user = 3;              // P_h
    double pilot_power = 1.0;            // sigma_p^2, linear
    double noise_power = 1.0;            // sigma_n^2, linear
    double element_spacing_ratio = 0.5;  // d / lambda
    std::uint64_t rng_seed = 1;

    // Throws std::invalid_argument on violated invariants.
    void validate() const;

    int antennas(int m) const { return bs_antennas.at(static_cast<std::size_t>(m)); }
    double snr_db() const { return 10.0 * std::log10(pilot_power / noise_power); }
};

// Angles and complex gains for one physical link. Angles are stored as the
// steering-vector phase argument (2 pi d / lambda) * sin(angle), wrapped to
// [-pi, pi), so that cascaded angle differences stay inside the representation.
struct PathSet
{
    VectorXd aoa_args;  // arrival-side arguments (RIS side for BS-RIS links)
    VectorXd aod_args;  // departure-side arguments
    VectorXcd gains;

    int num_paths() const { return static_cast<int>(gains.size()); }
    void validate() const;
};

enum class LinkRole
{
    BsRis,    // L x J_m
    RisUser,  // L x 1, used conjugate-transposed
    Cascaded  // L x J_m
};

struct ChannelMatrix
{
    MatrixXcd entries;
    LinkRole link_role = LinkRole::BsRis;
};

// Unit-norm ULA steering vector, element i = (1/sqrt(N)) exp(j i phase_arg).
VectorXcd steering_vector(double phase_arg, int n_elements);

// F = sqrt(L J / P) sum_p beta_p a_L(aoa_p) a_D(aod_p)^H, dimensions L x J.
ChannelMatrix gen_bs_ris_channel(const PathSet &paths, int ris_elements, int bs_antennas);

// h = sqrt(L / P) sum_b gamma_b a_L(aod_b), stored as an L x 1 column.
ChannelMatrix gen_ris_user_channel(const PathSet &paths, int ris_elements);

// G = diag(h^H) F: row l of the result is conj(h_l) times row l of F.
ChannelMatrix cascaded_channel(const ChannelMatrix &h, const ChannelMatrix &F);

// Draws path angles uniform on [0, 2 pi), maps them through
// (2 pi d / lambda) sin(.), and draws unit-variance CN gains. When a grid is
// given for a side, the phase arguments of that side are snapped to the
// nearest grid point (wrap-aware); used for exact-recovery tests.
PathSet sample_paths(int num_paths, double element_spacing_ratio, std::mt19937_64 &rng,
                     const VectorXd *aoa_grid = nullptr, const VectorXd *aod_grid = nullptr);

// Nearest grid point of a uniform [-pi, pi) grid, wrap-aware.
int nearest_grid_index(const VectorXd &grid_args, double phase_arg);

} // namespace cfce

#endif
