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

#include "cfce/metrics.hpp"

#include <doctest.h>

using namespace cfce;

TEST_CASE("cascaded NMSE identities")
{
    std::mt19937_64 rng(3);
    std::vector<MatrixXcd> truths, est_same, est_zero, est_double;
    for (int i = 0; i < 4; i++)
    {
        MatrixXcd G(3, 2);
        for (int c = 0; c < 2; c++)
            for (int r = 0; r < 3; r++)
                G(r, c) = randn_c(rng);
        truths.push_back(G);
        est_same.push_back(G);
        est_zero.push_back(MatrixXcd::Zero(3, 2));
        est_double.push_back(2.0 * G);
    }
    CHECK(nmse_cascaded(est_same, truths) == 0.0);
    CHECK(nmse_cascaded(est_zero, truths) == doctest::Approx(1.0));
    CHECK(nmse_cascaded(est_double, truths) == doctest::Approx(1.0));

    // Invariant to jointly scaling estimates and truths.
    std::vector<MatrixXcd> e2 = est_double, t2 = truths;
    for (auto &m : e2)
        m *= cxd(0.0, 5.0);
    for (auto &m : t2)
        m *= cxd(0.0, 5.0);
    CHECK(nmse_cascaded(e2, t2) == doctest::Approx(nmse_cascaded(est_double, truths)));

    std::vector<MatrixXcd> bad = truths;
    bad[2].setZero();
    CHECK_THROWS_AS(nmse_cascaded(est_same, bad), std::invalid_argument);
    std::vector<MatrixXcd> short_list(truths.begin(), truths.begin() + 2);
    CHECK_THROWS_AS(nmse_cascaded(short_list, truths), std::invalid_argument);
}

TEST_CASE("vector NMSE and the perturbation construction")
{
    std::mt19937_64 rng(5);
    std::vector<VectorXcd> truths, same, zero, perturbed;
    const double delta = 0.17;
    for (int i = 0; i < 3; i++)
    {
        VectorXcd h(6);
        for (int r = 0; r < 6; r++)
            h(r) = randn_c(rng);
        VectorXcd d(6);
        for (int r = 0; r < 6; r++)
            d(r) = randn_c(rng);
        d *= delta * h.norm() / d.norm();
        truths.push_back(h);
        same.push_back(h);
        zero.push_back(VectorXcd::Zero(6));
        perturbed.push_back(h + d);
    }
    CHECK(nmse_h(same, truths) == 0.0);
    CHECK(nmse_h(zero, truths) == doctest::Approx(1.0));
    // ||d|| = delta * ||h|| per link, so NMSE is exactly delta^2.
    CHECK(nmse_h(perturbed, truths) == doctest::Approx(delta * delta).epsilon(1e-12));
}

TEST_CASE("dB conversion")
{
    CHECK(to_db(1.0) == doctest::Approx(0.0));
    CHECK(to_db(0.1) == doctest::Approx(-10.0));
    CHECK(to_db(100.0) == doctest::Approx(20.0));
}
