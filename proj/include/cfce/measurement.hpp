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

#ifndef cfce_measurement_H
#define cfce_measurement_H

#include "cfce/dictionary.hpp"
#include "cfce/geometry.hpp"
#include "cfce/tensor3.hpp"

#include <vector>

namespace cfce
{

// Orthogonal pilot sequences. Row k of `sequences` is s_k^H, built from scaled
// DFT rows so that s_k^H s_k = power * T and distinct rows are orthogonal.
struct PilotBook
{
    MatrixXcd sequences;  // K x T, row k = s_k^H
    double power = 1.0;   // sigma_p^2

    int num_users() const { return static_cast<int>(sequences.rows()); }
    int symbol_count() const { return static_cast<int>(sequences.cols()); }
};

PilotBook make_pilots(int num_users, int symbol_count, double power);

enum class EntryModel
{
    UnitModulus,      // |v| = 1, phase uniform on [0, 2 pi)
    ComplexGaussian,  // CN(0, 1) entries
};

// Time-switching reflection schedule: the training window is split into one
// block of `subframes_per_ris` sub-frames per RIS; only the block owner
// reflects, every other RIS contributes zero.
struct ReflectionSchedule
{
    std::vector<MatrixXcd> matrices;  // per RIS, L x subframes_per_ris
    EntryModel entry_model = EntryModel::UnitModulus;

    int num_ris() const { return static_cast<int>(matrices.size()); }
    int elements() const { return static_cast<int>(matrices.at(0).rows()); }
    int subframes_per_ris() const { return static_cast<int>(matrices.at(0).cols()); }
    int total_subframes() const { return num_ris() * subframes_per_ris(); }

    int active_ris(int subframe) const { return subframe / subframes_per_ris(); }

    // Reflection vector v_n^q of RIS n in global sub-frame q (zero if inactive).
    VectorXcd reflection(int ris, int subframe) const;
};

ReflectionSchedule make_ts_schedule(int num_ris, int elements, int subframes_per_ris,
                                    EntryModel model, std::mt19937_64 &rng);

// One realization of all physical channels in a scenario.
struct LinkChannels
{
    std::vector<std::vector<MatrixXcd>> F;  // [bs][ris], L x J_m
    std::vector<std::vector<VectorXcd>> h;  // [ris][user], length L
};

// Received training signals re-organized per BS into J_m x Q x K tensors,
// Q = num_ris * subframes_per_ris under the TS schedule.
struct Observation
{
    std::vector<Tensor3c> per_bs;
    double snr_db = 0.0;

    // J_m x Qbar x K block of the sub-frames during which RIS n was active.
    Tensor3c ris_block(int bs, int ris, int subframes_per_ris) const;
};

// Received signal of BS m in global sub-frame q: sum over users and RISs of
// F^H V h s^H plus i.i.d. CN(0, noise_power) entries.
MatrixXcd synthesize_subframe(const LinkChannels &channels, int bs,
                              const ReflectionSchedule &schedule, int subframe,
                              const PilotBook &pilots, double noise_power, std::mt19937_64 &rng);

// (1 / (sigma_p^2 T)) Y s_k.
VectorXcd despread(const MatrixXcd &Y, const PilotBook &pilots, int user);

Observation build_observation_tensor(const SystemConfig &config, const LinkChannels &channels,
                                     const ReflectionSchedule &schedule, const PilotBook &pilots,
                                     std::mt19937_64 &rng);

// Second-timescale sensing matrices. Phi_m stacks (F_m^H diag(v^q)) blocks,
// dimensions Qp*J_m x L; the cooperative matrix stacks Phi_m * A_R over BSs.
struct TwoTimescaleSensing
{
    std::vector<MatrixXcd> phi;  // per BS, Qp*J_m x L
    MatrixXcd phi_tilde;         // Qp * sum(J_m) x G_r
};

TwoTimescaleSensing build_twotimescale_sensing(const std::vector<MatrixXcd> &F_per_bs,
                                               const MatrixXcd &reflections,
                                               const Dictionary &dict_R);

} // namespace cfce

#endif
