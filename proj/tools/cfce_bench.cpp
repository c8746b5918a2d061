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

#include "cfce/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char **argv)
{
    CLI::App app{"cfce benchmark harness"};
    app.require_subcommand(1);

    CLI::App *run = app.add_subcommand("run", "run a Monte-Carlo NMSE benchmark");
    std::string config_path, preset_name, out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
    run->add_option("config", config_path, "JSON experiment config");
    run->add_option("--preset", preset_name, "built-in preset: fig4, fig5 or ci");
    run->add_option("--seed", seed, "master RNG seed")->each([&](const std::string &) {
        seed_given = true;
    });
    run->add_option("--threads", threads, "worker threads for trials")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "output directory for results.csv / results.gp");

    CLI11_PARSE(app, argc, argv);

    try
    {
        cfce::ExperimentSpec spec;
        if (!preset_name.empty())
            spec = cfce::preset(preset_name);
        else if (!config_path.empty())
            spec = cfce::load_config(config_path);
        else
            throw cfce::ConfigError("run: give a config file or --preset");

        if (seed_given)
            spec.scenario.rng_seed = seed;
        if (!out_dir.empty())
            spec.output_path = out_dir;
        spec.validate();

        std::vector<cfce::ResultRow> rows = cfce::run_experiment(spec, threads);
        cfce::emit_outputs(rows, spec);
        for (const auto &r : rows)
            std::printf("%s %s=%g nmse=%.4g dB (%d trials, %.2f s)\n", r.method.c_str(),
                        r.sweep_name.c_str(), r.sweep_value, r.nmse_db, r.trials, r.wall_time_s);
        return 0;
    }
    catch (const cfce::ConfigError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    catch (const cfce::SingularSystemError &e)
    {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    catch (const cfce::IoError &e)
    {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
