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

#include "cfce/measurement.hpp"

namespace cfce
{

PilotBook make_pilots(int num_users, int symbol_count, double power)
{
    if (symbol_count < num_users)
        throw std::invalid_argument("make_pilots: symbol_count must be >= num_users");
    if (num_users < 1)
        throw std::invalid_argument("make_pilots: num_users must be >= 1");
    if (power <= 0.0)
        throw std::invalid_argument("make_pilots: power must be > 0");

    PilotBook pb;
    pb.power = power;
    pb.sequences.resize(num_users, symbol_count);
    const double amp = std::sqrt(power);
    for (int k = 0; k < num_users; k++)
        for (int t = 0; t < symbol_count; t++)
            pb.sequences(k, t) = std::polar(amp, -2.0 * M_PI * k * t / symbol_count);
    return pb;
}

VectorXcd ReflectionSchedule::reflection(int ris, int subframe) const
{
    if (ris < 0 || ris >= num_ris() || subframe < 0 || subframe >= total_subframes())
        throw std::invalid_argument("ReflectionSchedule::reflection: index out of range");
    if (active_ris(subframe) != ris)
        return VectorXcd::Zero(elements());
    return matrices[static_cast<std::size_t>(ris)].col(subframe % subframes_per_ris());
}

ReflectionSchedule make_ts_schedule(int num_ris, int elements, int subframes_per_ris,
                                    EntryModel model, std::mt19937_64 &rng)
{
    if (num_ris < 1 || elements < 1 || subframes_per_ris < 1)
        throw std::invalid_argument("make_ts_schedule: counts must be >= 1");

    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    ReflectionSchedule sched;
    sched.entry_model = model;
    sched.matrices.resize(static_cast<std::size_t>(num_ris));
    for (auto &V : sched.matrices)
    {
        V.resize(elements, subframes_per_ris);
        for (int q = 0; q < subframes_per_ris; q++)
            for (int l = 0; l < elements; l++)
                V(l, q) = (model == EntryModel::UnitModulus) ? std::polar(1.0, phase(rng))
                                                             : randn_c(rng);
    }
    return sched;
}

MatrixXcd synthesize_subframe(const LinkChannels &channels, int bs,
                              const ReflectionSchedule &schedule, int subframe,
                              const PilotBook &pilots, double noise_power, std::mt19937_64 &rng)
{
    const auto &F_row = channels.F.at(static_cast<std::size_t>(bs));
    const int J = static_cast<int>(F_row.at(0).cols());
    const int T = pilots.symbol_count();
    const int K = pilots.num_users();
    const int n_ris = static_cast<int>(channels.h.size());

    // Only the active RIS reflects under the TS schedule.
    const int active = schedule.active_ris(subframe);
    const VectorXcd v = schedule.reflection(active, subframe);

    MatrixXcd Y = MatrixXcd::Zero(J, T);
    for (int k = 0; k < K; k++)
    {
        VectorXcd rx = VectorXcd::Zero(J);
        for (int n = 0; n < n_ris; n++)
        {
            if (n != active)
                continue;
            const auto &F = F_row.at(static_cast<std::size_t>(n));
            const auto &h = channels.h[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            rx.noalias() += F.adjoint() * (v.cwiseProduct(h));
        }
        Y.noalias() += rx * pilots.sequences.row(k);
    }

    if (noise_power > 0.0)
        for (int t = 0; t < T; t++)
            for (int j = 0; j < J; j++)
                Y(j, t) += randn_c(rng, noise_power);
    return Y;
}

VectorXcd despread(const MatrixXcd &Y, const PilotBook &pilots, int user)
{
    if (user < 0 || user >= pilots.num_users())
        throw std::invalid_argument("despread: user index out of range");
    if (Y.cols() != pilots.symbol_count())
        throw std::invalid_argument("despread: symbol count mismatch");

    const double scale = 1.0 / (pilots.power * pilots.symbol_count());
    return scale * (Y * pilots.sequences.row(user).adjoint());
}

Observation build_observation_tensor(const SystemConfig &config, const LinkChannels &channels,
                                     const ReflectionSchedule &schedule, const PilotBook &pilots,
                                     std::mt19937_64 &rng)
{
    config.validate();
    const int Q = schedule.total_subframes();
    const int K = pilots.num_users();

    Observation obs;
    obs.snr_db = config.snr_db();
    obs.per_bs.reserve(static_cast<std::size_t>(config.num_bs));
    for (int m = 0; m < config.num_bs; m++)
    {
        Tensor3c t(config.antennas(m), Q, K);
        for (int q = 0; q < Q; q++)
        {
            MatrixXcd Y = synthesize_subframe(channels, m, schedule, q, pilots,
                                              config.noise_power, rng);
            for (int k = 0; k < K; k++)
                t.unfold1().col(q + Eigen::Index(Q) * k) = despread(Y, pilots, k);
        }
        obs.per_bs.push_back(std::move(t));
    }
    return obs;
}

Tensor3c Observation::ris_block(int bs, int ris, int subframes_per_ris) const
{
    const Tensor3c &full = per_bs.at(static_cast<std::size_t>(bs));
    const int q0 = ris * subframes_per_ris;
    if (q0 < 0 || q0 + subframes_per_ris > full.dim2())
        throw std::invalid_argument("Observation::ris_block: block out of range");

    Tensor3c block(full.dim1(), subframes_per_ris, full.dim3());
    for (int k = 0; k < full.dim3(); k++)
        block.slice3(k) = full.slice3(k).middleCols(q0, subframes_per_ris);
    return block;
}

TwoTimescaleSensing build_twotimescale_sensing(const std::vector<MatrixXcd> &F_per_bs,
                                               const MatrixXcd &reflections,
                                               const Dictionary &dict_R)
{
    if (F_per_bs.empty())
        throw std::invalid_argument("build_twotimescale_sensing: no BS channels given");
    const int L = static_cast<int>(reflections.rows());
    const int Qp = static_cast<int>(reflections.cols());

    TwoTimescaleSensing s;
    Eigen::Index total_rows = 0;
    for (const auto &F : F_per_bs)
    {
        if (F.rows() != L)
            throw std::invalid_argument("build_twotimescale_sensing: F and V disagree on L");
        const int J = static_cast<int>(F.cols());
        MatrixXcd phi(static_cast<Eigen::Index>(Qp) * J, L);
        for (int q = 0; q < Qp; q++)
            phi.middleRows(static_cast<Eigen::Index>(q) * J, J) =
                F.adjoint() * reflections.col(q).asDiagonal();
        total_rows += phi.rows();
        s.phi.push_back(std::move(phi));
    }

    s.phi_tilde.resize(total_rows, dict_R.grid_size());
    Eigen::Index row = 0;
    for (const auto &phi : s.phi)
    {
        s.phi_tilde.middleRows(row, phi.rows()).noalias() = phi * dict_R.atoms;
        row += phi.rows();
    }
    return s;
}

} // namespace cfce
