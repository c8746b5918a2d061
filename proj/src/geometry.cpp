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

#include "cfce/geometry.hpp"

namespace cfce
{

void SystemConfig::validate() const
{
    if (num_bs < 1 || num_ris < 1 || num_users < 1)
        throw std::invalid_argument("SystemConfig: all node counts must be >= 1");
    if (bs_antennas.size() != static_cast<std::size_t>(num_bs))
        throw std::invalid_argument("SystemConfig: bs_antennas must list one count per BS");
    for (int j : bs_antennas)
        if (j < 1)
            throw std::invalid_argument("SystemConfig: bs_antennas entries must be >= 1");
    if (ris_elements < 1)
        throw std::invalid_argument("SystemConfig: ris_elements must be >= 1");
    if (paths_bs_ris < 1 || paths_ris_user < 1)
        throw std::invalid_argument("SystemConfig: path counts must be >= 1");
    if (pilot_power <= 0.0 || noise_power <= 0.0)
        throw std::invalid_argument("SystemConfig: powers must be > 0");
    if (element_spacing_ratio <= 0.0 || element_spacing_ratio > 1.0)
        throw std::invalid_argument("SystemConfig: element_spacing_ratio must be in (0, 1]");
}

void PathSet::validate() const
{
    if (aoa_args.size() != gains.size() || aod_args.size() != gains.size())
        throw std::invalid_argument("PathSet: angle and gain lists must have equal length");
    if (gains.size() == 0)
        throw std::invalid_argument("PathSet: at least one path required");
}

VectorXcd steering_vector(double phase_arg, int n_elements)
{
    if (n_elements < 1)
        throw std::invalid_argument("steering_vector: n_elements must be >= 1");

    VectorXcd a(n_elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_elements));
    for (int i = 0; i < n_elements; i++)
        a(i) = std::polar(scale, static_cast<double>(i) * phase_arg);
    return a;
}

ChannelMatrix gen_bs_ris_channel(const PathSet &paths, int ris_elements, int bs_antennas)
{
    paths.validate();
    const int P = paths.num_paths();
    const double scale =
        std::sqrt(static_cast<double>(ris_elements) * static_cast<double>(bs_antennas) / P);

    MatrixXcd F = MatrixXcd::Zero(ris_elements, bs_antennas);
    for (int p = 0; p < P; p++)
    {
        VectorXcd a_ris = steering_vector(paths.aoa_args(p), ris_elements);
        VectorXcd a_bs = steering_vector(paths.aod_args(p), bs_antennas);
        F.noalias() += paths.gains(p) * a_ris * a_bs.adjoint();
    }
    F *= scale;
    return {std::move(F), LinkRole::BsRis};
}

ChannelMatrix gen_ris_user_channel(const PathSet &paths, int ris_elements)
{
    paths.validate();
    const int P = paths.num_paths();
    const double scale = std::sqrt(static_cast<double>(ris_elements) / P);

    VectorXcd h = VectorXcd::Zero(ris_elements);
    for (int b = 0; b < P; b++)
        h += paths.gains(b) * steering_vector(paths.aod_args(b), ris_elements);
    h *= scale;
    return {std::move(h), LinkRole::RisUser};
}

ChannelMatrix cascaded_channel(const ChannelMatrix &h, const ChannelMatrix &F)
{
    if (h.entries.cols() != 1)
        throw std::invalid_argument("cascaded_channel: h must be a column vector");
    if (h.entries.rows() != F.entries.rows())
        throw std::invalid_argument("cascaded_channel: h and F must share the RIS dimension");

    MatrixXcd G = h.entries.col(0).conjugate().asDiagonal() * F.entries;
    return {std::move(G), LinkRole::Cascaded};
}

PathSet sample_paths(int num_paths, double element_spacing_ratio, std::mt19937_64 &rng,
                     const VectorXd *aoa_grid, const VectorXd *aod_grid)
{
    if (num_paths < 1)
        throw std::invalid_argument("sample_paths: num_paths must be >= 1");

    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double c = 2.0 * M_PI * element_spacing_ratio;

    PathSet ps;
    ps.aoa_args.resize(num_paths);
    ps.aod_args.resize(num_paths);
    ps.gains.resize(num_paths);
    for (int p = 0; p < num_paths; p++)
    {
        ps.aoa_args(p) = wrap_pm_pi(c * std::sin(angle(rng)));
        ps.aod_args(p) = wrap_pm_pi(c * std::sin(angle(rng)));
        ps.gains(p) = randn_c(rng);
    }

    if (aoa_grid != nullptr)
        for (int p = 0; p < num_paths; p++)
            ps.aoa_args(p) = (*aoa_grid)(nearest_grid_index(*aoa_grid, ps.aoa_args(p)));
    if (aod_grid != nullptr)
        for (int p = 0; p < num_paths; p++)
            ps.aod_args(p) = (*aod_grid)(nearest_grid_index(*aod_grid, ps.aod_args(p)));

    return ps;
}

int nearest_grid_index(const VectorXd &grid_args, double phase_arg)
{
    if (grid_args.size() == 0)
        throw std::invalid_argument("nearest_grid_index: empty grid");

    // Uniform grid starting at -pi with step 2 pi / G; round and wrap.
    const auto G = grid_args.size();
    const double step = 2.0 * M_PI / static_cast<double>(G);
    auto idx = static_cast<long>(std::llround((wrap_pm_pi(phase_arg) + M_PI) / step));
    idx %= G;
    if (idx < 0)
        idx += G;
    return static_cast<int>(idx);
}

} // namespace cfce
