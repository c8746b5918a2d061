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

#include "cfce/dictionary.hpp"
#include "cfce/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cfce;

namespace
{

PathSet random_paths(int P, std::mt19937_64 &rng)
{
    return sample_paths(P, 0.5, rng);
}

} // namespace

TEST_CASE("steering vector closed-form values")
{
    VectorXcd a = steering_vector(0.0, 4);
    for (int i = 0; i < 4; i++)
        CHECK(std::abs(a(i) - cxd(0.5, 0.0)) < 1e-15);

    a = steering_vector(M_PI, 2);
    CHECK(std::abs(a(0) - cxd(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(a(1) - cxd(-1.0 / std::sqrt(2.0), 0.0)) < 1e-15);

    a = steering_vector(M_PI / 2.0, 3);
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(a(0) - cxd(s, 0.0)) < 1e-15);
    CHECK(std::abs(a(1) - cxd(0.0, s)) < 1e-15);
    CHECK(std::abs(a(2) - cxd(-s, 0.0)) < 1e-15);
}

TEST_CASE("steering vector is unit norm for any argument")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    for (int t = 0; t < 50; t++)
    {
        const int n = 1 + static_cast<int>(rng() % 40);
        CHECK(steering_vector(u(rng), n).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(steering_vector(0.0, 0), std::invalid_argument);
}

TEST_CASE("BS-RIS channel closed-form cases")
{
    PathSet p;
    p.aoa_args = VectorXd::Zero(1);
    p.aod_args = VectorXd::Zero(1);
    p.gains = VectorXcd::Ones(1);
    MatrixXcd F = gen_bs_ris_channel(p, 2, 2).entries;
    CHECK((F - MatrixXcd::Ones(2, 2)).norm() < 1e-14);

    // Two opposite-gain paths at identical angles cancel exactly.
    PathSet q;
    q.aoa_args = VectorXd::Constant(2, 0.4);
    q.aod_args = VectorXd::Constant(2, -1.1);
    q.gains = VectorXcd(2);
    q.gains << cxd(1.0, 0.5), cxd(-1.0, -0.5);
    CHECK(gen_bs_ris_channel(q, 3, 4).entries.norm() < 1e-14);
}

TEST_CASE("BS-RIS channel matches brute-force synthesis")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; t++)
    {
        PathSet p = random_paths(3, rng);
        MatrixXcd F = gen_bs_ris_channel(p, 5, 4).entries;
        MatrixXcd ref = oracle::bs_ris_channel(p, 5, 4);
        CHECK((F - ref).norm() / ref.norm() < 1e-12);
    }
}

TEST_CASE("RIS-user channel: closed form, linearity, brute force")
{
    PathSet p;
    p.aoa_args = VectorXd::Zero(1);
    p.aod_args = VectorXd::Zero(1);
    p.gains = VectorXcd::Ones(1);
    VectorXcd h = gen_ris_user_channel(p, 4).entries.col(0);
    CHECK((h - VectorXcd::Ones(4)).norm() < 1e-14);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; t++)
    {
        PathSet q = random_paths(3, rng);
        VectorXcd h1 = gen_ris_user_channel(q, 6).entries.col(0);
        CHECK((h1 - oracle::ris_user_channel(q, 6)).norm() / h1.norm() < 1e-12);

        PathSet scaled = q;
        scaled.gains *= cxd(0.3, -1.7);
        VectorXcd h2 = gen_ris_user_channel(scaled, 6).entries.col(0);
        CHECK((h2 - cxd(0.3, -1.7) * h1).norm() < 1e-12 * h1.norm());
    }
}

TEST_CASE("cascaded channel: diag form equals double-sum expansion")
{
    PathSet scalar;
    scalar.aoa_args = VectorXd::Constant(1, 0.9);
    scalar.aod_args = VectorXd::Constant(1, 0.2);
    scalar.gains = VectorXcd::Constant(1, cxd(0.0, 2.0));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; t++)
    {
        PathSet fp = random_paths(3, rng), hp = random_paths(2, rng);
        ChannelMatrix F = gen_bs_ris_channel(fp, 8, 3);
        ChannelMatrix h = gen_ris_user_channel(hp, 8);
        MatrixXcd G = cascaded_channel(h, F).entries;
        MatrixXcd ref = oracle::cascaded_double_sum(fp, hp, 8, 3);
        CHECK((G - ref).norm() / ref.norm() < 1e-10);
    }

    // h = all-ones leaves F untouched; L = 1 reduces to a scalar weight.
    PathSet ones;
    ones.aoa_args = VectorXd::Zero(1);
    ones.aod_args = VectorXd::Zero(1);
    ones.gains = VectorXcd::Ones(1);
    ChannelMatrix h1 = gen_ris_user_channel(ones, 4);
    ChannelMatrix F1 = gen_bs_ris_channel(random_paths(2, rng), 4, 3);
    CHECK((cascaded_channel(h1, F1).entries - F1.entries).norm() < 1e-12);

    ChannelMatrix hs{MatrixXcd::Constant(1, 1, cxd(1.0, -2.0)), LinkRole::RisUser};
    ChannelMatrix Fs{MatrixXcd::Constant(1, 3, cxd(0.5, 0.5)), LinkRole::BsRis};
    CHECK((cascaded_channel(hs, Fs).entries - cxd(1.0, 2.0) * Fs.entries).norm() < 1e-14);

    ChannelMatrix bad{MatrixXcd::Zero(3, 1), LinkRole::RisUser};
    CHECK_THROWS_AS(cascaded_channel(bad, F1), std::invalid_argument);
}

TEST_CASE("sample_paths: determinism, grid snapping, gain power")
{
    std::mt19937_64 a(21), b(21);
    PathSet p1 = sample_paths(3, 0.5, a), p2 = sample_paths(3, 0.5, b);
    CHECK((p1.aoa_args - p2.aoa_args).norm() == 0.0);
    CHECK((p1.aod_args - p2.aod_args).norm() == 0.0);
    CHECK((p1.gains - p2.gains).norm() == 0.0);
    for (int i = 0; i < 3; i++)
    {
        CHECK(p1.aoa_args(i) >= -M_PI);
        CHECK(p1.aoa_args(i) < M_PI);
    }

    Dictionary d = build_dictionary(4, 16);
    std::mt19937_64 c(23);
    for (int t = 0; t < 10; t++)
    {
        PathSet p = sample_paths(3, 0.5, c, &d.grid_args, &d.grid_args);
        for (int i = 0; i < 3; i++)
        {
            CHECK((d.grid_args.array() - p.aoa_args(i)).abs().minCoeff() == 0.0);
            CHECK((d.grid_args.array() - p.aod_args(i)).abs().minCoeff() == 0.0);
        }
    }

    std::mt19937_64 g(29);
    double power = 0.0;
    const int draws = 100000;
    for (int t = 0; t < draws / 5; t++)
        power += sample_paths(5, 0.5, g).gains.squaredNorm();
    CHECK(power / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("mean channel energy matches the synthesis scaling")
{
    // E||F||_F^2 = L*J for unit-power path gains.
    std::mt19937_64 rng(31);
    double acc = 0.0;
    const int draws = 10000;
    for (int t = 0; t < draws; t++)
        acc += gen_bs_ris_channel(sample_paths(2, 0.5, rng), 4, 3).entries.squaredNorm();
    CHECK(acc / draws == doctest::Approx(12.0).epsilon(0.05));
}

TEST_CASE("nearest_grid_index is wrap-aware")
{
    Dictionary d = build_dictionary(4, 8);  // grid -pi, step pi/4
    CHECK(nearest_grid_index(d.grid_args, -M_PI) == 0);
    CHECK(nearest_grid_index(d.grid_args, 0.0) == 4);
    // Just below +pi wraps around to the -pi atom.
    CHECK(nearest_grid_index(d.grid_args, M_PI - 0.05) == 0);
    CHECK(nearest_grid_index(d.grid_args, M_PI / 4.0 + 0.1) == 5);
}

TEST_CASE("wrap_pm_pi and seed derivation")
{
    CHECK(wrap_pm_pi(0.0) == doctest::Approx(0.0));
    CHECK(wrap_pm_pi(M_PI) == doctest::Approx(-M_PI));
    CHECK(wrap_pm_pi(3.0 * M_PI) == doctest::Approx(-M_PI));
    CHECK(wrap_pm_pi(-M_PI - 0.1) == doctest::Approx(M_PI - 0.1));

    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("config validation rejects malformed scenarios")
{
    SystemConfig c;
    c.bs_antennas.assign(3, 16);
    CHECK_NOTHROW(c.validate());
    c.noise_power = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.noise_power = 1.0;
    c.element_spacing_ratio = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
