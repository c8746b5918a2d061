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

#ifndef cfce_harness_H
#define cfce_harness_H

#include "cfce/estimators.hpp"
#include "cfce/metrics.hpp"

#include <map>
#include <string>
#include <vector>

namespace cfce
{

class IoError : public std::runtime_error
{
  public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

enum class Method
{
    Ls,
    OracleLs,
    Omp,
    Laomp,
    Somp,
    Mlaomp3d,
    TtIndividual,
    TtCooperative,
};

// Throws ConfigError on unknown names.
Method parse_method(const std::string &name);
std::string method_name(Method m);
bool is_twotimescale(Method m);

enum class SweepVariable
{
    SnrDb,
    Measurements,  // Qbar for cascaded methods, Qbar' for two-timescale ones
};

struct ExperimentSpec
{
    SystemConfig scenario;
    int grid_size_r = 128;
    int grid_size_t = 128;
    int subframes_per_ris = 32;  // Qbar
    int tt_subframes = 4;        // Qbar', second-timescale training length
    int pilot_symbols = 0;       // T; 0 means T = num_users
    EntryModel entry_model = EntryModel::ComplexGaussian;
    int look_ahead_aod = 3;
    int look_ahead_aoa = 9;
    int look_ahead_1d = 3;  // U of the 1-D LAOMP baseline
    double residual_tol_scale = 1.5;  // epsilon = scale * expected noise energy
    SweepVariable sweep_variable = SweepVariable::SnrDb;
    std::vector<double> sweep_values;
    std::vector<Method> methods;
    int trials = 50;
    bool on_grid = false;
    std::string output_path = "results";

    int symbol_count() const { return pilot_symbols > 0 ? pilot_symbols : scenario.num_users; }

    // Throws ConfigError on violated invariants.
    void validate() const;
};

struct ResultRow
{
    std::string method;
    std::string sweep_name;
    double sweep_value = 0.0;
    double nmse_mean = 0.0;  // linear
    double nmse_db = 0.0;
    int trials = 0;
    double wall_time_s = 0.0;
};

// Per-trial NMSE samples for one sweep point (acceptance checks need the
// trial-level values for standard errors and paired comparisons).
struct PointResult
{
    std::map<Method, std::vector<double>> per_trial;
    std::map<Method, double> wall_time_s;
};

PointResult run_point(const ExperimentSpec &spec, double sweep_value, int sweep_index,
                      int threads = 1);

std::vector<ResultRow> run_experiment(const ExperimentSpec &spec, int threads = 1);

// Writes <output_path>/results.csv and <output_path>/results.gp. CSV schema:
// method,sweep_name,sweep_value,nmse_linear,nmse_db,trials,wall_time_s with
// 9 significant digits and LF line endings. No partial file is left behind on
// failure.
void emit_outputs(const std::vector<ResultRow> &rows, const ExperimentSpec &spec);

// JSON config mirroring ExperimentSpec; unknown keys are errors.
ExperimentSpec load_config(const std::string &path);
ExperimentSpec parse_config_text(const std::string &text);

// Built-in presets: "fig4", "fig5", "ci".
ExperimentSpec preset(const std::string &name);

// Ground-truth cascaded (AoA, AoD) grid pairs of one (F, h) link, deduped.
void true_support_pairs(const PathSet &f_paths, const PathSet &h_paths, int grid_size_r,
                        int grid_size_t, std::vector<int> &aoa_pairs,
                        std::vector<int> &aod_pairs);

} // namespace cfce

#endif
