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

#ifndef cfce_common_H
#define cfce_common_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cfce
{

using cxd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Raised when a linear system required by an estimator is rank deficient.
class SingularSystemError : public std::runtime_error
{
  public:
    explicit SingularSystemError(const std::string &what) : std::runtime_error(what) {}
};

// Raised on malformed experiment configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

// splitmix64 finalizer. Used to derive independent per-trial RNG seeds from
// (master seed, stream index) so that results do not depend on thread count.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(master ^ splitmix64(stream));
}

inline std::mt19937_64 make_stream_rng(std::uint64_t master, std::uint64_t stream)
{
    return std::mt19937_64(derive_seed(master, stream));
}

// Circularly-symmetric complex Gaussian, CN(0, variance).
inline cxd randn_c(std::mt19937_64 &rng, double variance = 1.0)
{
    std::normal_distribution<double> n(0.0, std::sqrt(variance * 0.5));
    return {n(rng), n(rng)};
}

// Wrap a phase argument to [-pi, pi).
inline double wrap_pm_pi(double x)
{
    constexpr double two_pi = 2.0 * M_PI;
    x = std::fmod(x + M_PI, two_pi);
    if (x < 0.0)
        x += two_pi;
    return x - M_PI;
}

} // namespace cfce

#endif
