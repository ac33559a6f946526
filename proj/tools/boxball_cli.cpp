// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball_cli.cpp
//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or band, 2 usage, 3 invalid input.
//---------------------------------------------------------------------------//
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxball/bbs.hpp"
#include "boxball/experiments.hpp"
#include "boxball/gaps.hpp"
#include "boxball/io.hpp"
#include "boxball/pushtasep.hpp"
#include "boxball/reflection.hpp"
#include "boxball/skorokhod.hpp"
#include "boxball/srbm.hpp"

using namespace boxball;

namespace
{
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

//! Output stream for `--out`; stdout when empty or "-"
class Output
{
  public:
    explicit Output(std::string const& path)
    {
        if (!path.empty() && path != "-")
        {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
            {
                throw ValidationError("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

BallConfig resolve_init(std::string const& init, int& d)
{
    if (init.empty())
    {
        if (d < 1)
        {
            throw ValidationError("either --d or --init is required");
        }
        return BallConfig::block(d);
    }
    BallConfig config(parse_int_list(init));
    if (d > 0 && d != config.size())
    {
        throw DimensionError("--d does not match the number of --init positions");
    }
    d = config.size();
    return config;
}

std::string join(std::span<std::int64_t const> xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        s += (i ? "," : "") + std::to_string(xs[i]);
    }
    return s;
}

BoundaryPartition make_partition(std::string const& model, int d, Capacity capacity)
{
    if (model == "sbbs")
    {
        return build_partition(d, capacity);
    }
    if (model == "pushtasep")
    {
        return build_pushtasep_partition(d);
    }
    throw ValidationError("--model must be 'sbbs' or 'pushtasep'");
}

//---------------------------------------------------------------------------//
struct SimulateArgs
{
    std::string eps = "0.5";
    std::string capacity = "inf";
    int d = 0;
    long steps = 10;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::string init;
    std::string out;
};

int run_simulate(SimulateArgs const& a)
{
    int d = a.d;
    BallConfig const init = resolve_init(a.init, d);
    DynamicsParams params{to_double(parse_rational(a.eps)), Capacity::parse(a.capacity), d};
    RngStream rng(a.seed, a.stream);
    auto const path = sbbs_path(init, params, a.steps, rng);
    Output out(a.out);
    write_trajectory_csv(out.get(),
                         {{"command", "simulate"},
                          {"eps", a.eps},
                          {"capacity", params.capacity.to_string()},
                          {"d", std::to_string(d)},
                          {"steps", std::to_string(a.steps)},
                          {"seed", std::to_string(a.seed)},
                          {"stream", std::to_string(a.stream)},
                          {"init", join(init.positions())}},
                         path);
    return 0;
}

//---------------------------------------------------------------------------//
struct PushArgs
{
    int d = 0;
    double horizon = 10.0;
    long jumps = -1;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::string init;
    std::string out;
};

int run_pushtasep(PushArgs const& a)
{
    int d = a.d;
    BallConfig const init = resolve_init(a.init, d);
    RngStream rng(a.seed, a.stream);
    bool const chain = a.jumps >= 0;
    auto const path = chain ? pushtasep_jump_chain(init, a.jumps, rng) : pushtasep_trajectory({init, 0.0}, a.horizon, rng);

    std::vector<std::string> columns{chain ? "jump" : "time", "particle"};
    for (int i = 1; i <= d; ++i)
    {
        columns.push_back("pos_" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < path.states.size(); ++k)
    {
        std::vector<std::string> r;
        r.push_back(chain ? std::to_string(k) : format_double(path.states[k].clock));
        r.push_back(k == 0 ? "" : std::to_string(path.events[k - 1].particle));
        for (auto p : path.states[k].positions.positions())
        {
            r.push_back(std::to_string(p));
        }
        rows.push_back(std::move(r));
    }
    Output out(a.out);
    write_csv(out.get(),
              {{"command", "pushtasep"},
               {"d", std::to_string(d)},
               {chain ? "jumps" : "horizon", chain ? std::to_string(a.jumps) : format_double(a.horizon)},
               {"seed", std::to_string(a.seed)},
               {"stream", std::to_string(a.stream)},
               {"init", join(init.positions())}},
              columns, rows);
    return 0;
}

//---------------------------------------------------------------------------//
struct AlgebraArgs
{
    int d = 3;
    std::string eps = "0.5";
    std::string capacity = "inf";
    std::string model = "sbbs";
    std::string out;
};

nlohmann::json algebra_config(AlgebraArgs const& a)
{
    return {{"d", a.d}, {"eps", a.eps}, {"capacity", Capacity::parse(a.capacity).to_string()}, {"model", a.model}};
}

int run_partition(AlgebraArgs const& a)
{
    auto const part = make_partition(a.model, a.d, Capacity::parse(a.capacity));
    auto j = to_json(part);
    j["config"] = algebra_config(a);
    j["config"].erase("eps");
    Output out(a.out);
    out.get() << j.dump(2) << '\n';
    return 0;
}

int run_reflect(AlgebraArgs const& a)
{
    Capacity const cap = Capacity::parse(a.capacity);
    Rational const eps = parse_rational(a.eps);
    auto const part = make_partition(a.model, a.d, cap);
    auto const r = reflection_matrix(part, eps);
    auto const mats = standard_matrices(a.d, eps, cap);
    nlohmann::json j;
    j["config"] = algebra_config(a);
    j["k"] = part.k();
    j["f"] = degenerate_map(part);
    j["R"] = to_json(r);
    j["hatR"] = to_json(mats.hat_r);
    j["SigmaPT"] = to_json(mats.sigma_pt);
    j["RPT"] = to_json(mats.r_pt);
    Output out(a.out);
    out.get() << j.dump(2) << '\n';
    return 0;
}

int run_scertify(AlgebraArgs const& a)
{
    Capacity const cap = Capacity::parse(a.capacity);
    auto const part = make_partition(a.model, a.d, cap);
    auto const r = reflection_matrix(part, parse_rational(a.eps));
    auto const f = degenerate_map(part);
    auto const cert = weakly_completely_s(r, f);
    auto j = to_json(cert);
    j["config"] = algebra_config(a);
    j["verified"] = cert.holds && verify_certificate(r, f, cert);
    Output out(a.out);
    out.get() << j.dump(2) << '\n';
    return j["verified"].get<bool>() ? 0 : kExitFail;
}

//---------------------------------------------------------------------------//
struct DecomposeArgs
{
    std::string in;
    std::string eps;
    std::string capacity;
    std::string out;
};

int run_decompose(DecomposeArgs const& a)
{
    std::ifstream file;
    std::istream* is = &std::cin;
    if (!a.in.empty() && a.in != "-")
    {
        file.open(a.in, std::ios::binary);
        if (!file)
        {
            throw ValidationError("cannot open input file '" + a.in + "'");
        }
        is = &file;
    }
    CsvTable const table = read_csv(*is);
    std::string const eps_text = a.eps.empty() ? table.comment("eps") : a.eps;
    std::string const cap_text = a.capacity.empty() ? table.comment("capacity") : a.capacity;
    if (eps_text.empty() || cap_text.empty())
    {
        throw ValidationError("eps and capacity must come from the CSV header or --eps/--capacity");
    }
    int d = 0;
    while (true)
    {
        auto const name = "pos_" + std::to_string(d + 1);
        if (std::find(table.columns.begin(), table.columns.end(), name) == table.columns.end())
        {
            break;
        }
        ++d;
    }
    if (d < 2)
    {
        throw DimensionError("decomposition needs at least two pos_ columns");
    }
    SbbsPath path;
    for (std::size_t t = 0; t < table.rows.size(); ++t)
    {
        auto const& row = table.rows[t];
        std::vector<std::int64_t> pos;
        for (int i = 1; i <= d; ++i)
        {
            pos.push_back(std::stoll(row[table.column("pos_" + std::to_string(i))]));
        }
        path.states.emplace_back(std::move(pos));
        if (t + 1 < table.rows.size())
        {
            CoinVector c;
            for (int i = 1; i <= d; ++i)
            {
                auto const& v = row[table.column("eta_" + std::to_string(i))];
                if (v != "0" && v != "1")
                {
                    throw ValidationError("coin entries must be 0 or 1");
                }
                c.eta.push_back(v == "1" ? 1 : 0);
            }
            path.coins.push_back(std::move(c));
        }
    }
    if (path.states.empty())
    {
        throw ValidationError("trajectory has no rows");
    }
    Capacity const cap = Capacity::parse(cap_text);
    auto const part = build_partition(d, cap);
    auto const r = reflection_matrix(part, parse_rational(eps_text));
    auto const trace = decompose_trajectory(path, part, r);
    long const bad = verify_trace(trace, r);
    Output out(a.out);
    write_trace_csv(out.get(),
                    {{"command", "decompose"},
                     {"eps", eps_text},
                     {"capacity", cap.to_string()},
                     {"d", std::to_string(d)},
                     {"k", std::to_string(part.k())},
                     {"steps", std::to_string(path.coins.size())},
                     {"identity_holds", bad < 0 ? "true" : "false"}},
                    trace);
    if (bad >= 0)
    {
        std::cerr << "decomposition identity fails at step " << bad << '\n';
        return kExitFail;
    }
    return 0;
}

//---------------------------------------------------------------------------//
struct SrbmArgs
{
    std::string mode = "sbbs";
    int d = 3;
    std::string eps = "0.5";
    std::string capacity = "inf";
    double variance = 1.0;
    double horizon = 1.0;
    double dt = 1e-4;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::string out;
};

int run_srbm(SrbmArgs const& a)
{
    RngStream rng(a.seed, a.stream);
    CsvComments comments{{"command", "srbm"},
                         {"mode", a.mode},
                         {"horizon", format_double(a.horizon)},
                         {"dt", format_double(a.dt)},
                         {"seed", std::to_string(a.seed)},
                         {"stream", std::to_string(a.stream)}};
    PathSample path;
    if (a.mode == "1d")
    {
        comments.emplace_back("variance", format_double(a.variance));
        path = reflected_bm_1d(a.variance, a.horizon, a.dt, rng);
    }
    else if (a.mode == "sbbs")
    {
        Capacity const cap = Capacity::parse(a.capacity);
        Rational const eps = parse_rational(a.eps);
        auto const mats = standard_matrices(a.d, eps, cap);
        auto const m = static_cast<Eigen::Index>(a.d - 1);
        SrbmSpec spec;
        spec.drift = Eigen::VectorXd::Zero(m);
        spec.initial = Eigen::VectorXd::Zero(m);
        spec.covariance.resize(m, m);
        spec.reflection.resize(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            for (Eigen::Index j = 0; j < m; ++j)
            {
                auto const ui = static_cast<std::size_t>(i);
                auto const uj = static_cast<std::size_t>(j);
                spec.covariance(i, j) = to_double(eps * mats.sigma_pt(ui, uj));
                spec.reflection(i, j) = to_double(mats.hat_r(ui, uj));
            }
        }
        comments.emplace_back("d", std::to_string(a.d));
        comments.emplace_back("eps", a.eps);
        comments.emplace_back("capacity", cap.to_string());
        path = srbm_euler(spec, a.horizon, a.dt, rng);
        comments.emplace_back("degenerate_steps", std::to_string(path.degenerate_steps));
    }
    else
    {
        throw ValidationError("--mode must be 'sbbs' or '1d'");
    }
    Output out(a.out);
    write_path_csv(out.get(), comments, path);
    return 0;
}

//---------------------------------------------------------------------------//
struct ExperimentArgs
{
    std::string config;
    std::string out;
    std::string summary;
    int threads = 0;
};

int run_experiment_cmd(ExperimentArgs const& a)
{
    std::ifstream file(a.config);
    if (!file)
    {
        throw ValidationError("cannot open config file '" + a.config + "'");
    }
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(file);
    }
    catch (nlohmann::json::parse_error const& e)
    {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config = experiment_config_from_json(j);
    if (!a.out.empty())
        config.output = a.out;
    if (!a.summary.empty())
        config.summary = a.summary;
    if (a.threads > 0)
        config.threads = a.threads;

    auto const result = run_experiment(config);
    {
        Output out(config.output);
        write_experiment_csv(out.get(), result);
    }
    auto const summary = summary_json(result).dump(2);
    if (config.summary.empty())
    {
        std::cerr << summary << '\n';
    }
    else
    {
        Output out(config.summary);
        out.get() << summary << '\n';
    }
    return result.pass() ? 0 : kExitFail;
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Stochastic box-ball system, PushTASEP and reflected diffusion toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate an SBBS trajectory and write it as CSV");
    simulate->add_option("--eps", sim.eps, "Pickup failure probability (decimal or p/q)")->capture_default_str();
    simulate->add_option("--capacity", sim.capacity, "Carrier capacity: positive integer or inf")->capture_default_str();
    simulate->add_option("--d", sim.d, "Ball count (block start at 0..d-1 unless --init)");
    simulate->add_option("--steps", sim.steps, "Number of sweeps")->capture_default_str()->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--stream", sim.stream, "Stream index")->capture_default_str();
    simulate->add_option("--init", sim.init, "Initial positions, comma separated");
    simulate->add_option("--out", sim.out, "Output file (default stdout)");

    PushArgs push;
    auto* pushtasep = app.add_subcommand("pushtasep", "Simulate PushTASEP and write it as CSV");
    pushtasep->add_option("--d", push.d, "Particle count (block start unless --init)");
    pushtasep->add_option("--horizon", push.horizon, "Continuous-time horizon")->capture_default_str();
    pushtasep->add_option("--jumps", push.jumps, "Simulate the jump chain for this many jumps instead");
    pushtasep->add_option("--seed", push.seed, "Master seed")->capture_default_str();
    pushtasep->add_option("--stream", push.stream, "Stream index")->capture_default_str();
    pushtasep->add_option("--init", push.init, "Initial positions, comma separated");
    pushtasep->add_option("--out", push.out, "Output file (default stdout)");

    AlgebraArgs part_args;
    auto* partition = app.add_subcommand("partition", "Boundary cells of the gap process as JSON");
    partition->add_option("--d", part_args.d, "Ball count")->capture_default_str();
    partition->add_option("--capacity", part_args.capacity, "Carrier capacity")->capture_default_str();
    partition->add_option("--model", part_args.model, "sbbs or pushtasep")->capture_default_str();
    partition->add_option("--out", part_args.out, "Output file (default stdout)");

    AlgebraArgs refl_args;
    auto* reflect = app.add_subcommand("reflect", "Reflection matrix R and the standard matrices as JSON");
    reflect->add_option("--d", refl_args.d, "Ball count")->capture_default_str();
    reflect->add_option("--eps", refl_args.eps, "Pickup failure probability")->capture_default_str();
    reflect->add_option("--capacity", refl_args.capacity, "Carrier capacity")->capture_default_str();
    reflect->add_option("--model", refl_args.model, "sbbs or pushtasep")->capture_default_str();
    reflect->add_option("--out", refl_args.out, "Output file (default stdout)");

    AlgebraArgs cert_args;
    auto* scertify = app.add_subcommand("scertify", "Weakly completely-S certificates for R");
    scertify->add_option("--d", cert_args.d, "Ball count")->capture_default_str();
    scertify->add_option("--eps", cert_args.eps, "Pickup failure probability")->capture_default_str();
    scertify->add_option("--capacity", cert_args.capacity, "Carrier capacity")->capture_default_str();
    scertify->add_option("--model", cert_args.model, "sbbs or pushtasep")->capture_default_str();
    scertify->add_option("--out", cert_args.out, "Output file (default stdout)");

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "Skorokhod decomposition of a simulate CSV");
    decompose->add_option("--in", dec.in, "Trajectory CSV from simulate (default stdin)");
    decompose->add_option("--eps", dec.eps, "Override eps from the CSV header");
    decompose->add_option("--capacity", dec.capacity, "Override capacity from the CSV header");
    decompose->add_option("--out", dec.out, "Output file (default stdout)");

    SrbmArgs srbm_args;
    auto* srbm = app.add_subcommand("srbm", "Reference reflected Brownian motion path as CSV");
    srbm->add_option("--mode", srbm_args.mode, "sbbs (eps Sigma_PT, hatR) or 1d")->capture_default_str();
    srbm->add_option("--d", srbm_args.d, "Ball count; the SRBM has dimension d-1")->capture_default_str();
    srbm->add_option("--eps", srbm_args.eps, "Pickup failure probability")->capture_default_str();
    srbm->add_option("--capacity", srbm_args.capacity, "Carrier capacity")->capture_default_str();
    srbm->add_option("--variance", srbm_args.variance, "Variance for --mode 1d")->capture_default_str();
    srbm->add_option("--horizon", srbm_args.horizon, "Time horizon")->capture_default_str();
    srbm->add_option("--dt", srbm_args.dt, "Time step")->capture_default_str();
    srbm->add_option("--seed", srbm_args.seed, "Master seed")->capture_default_str();
    srbm->add_option("--stream", srbm_args.stream, "Stream index")->capture_default_str();
    srbm->add_option("--out", srbm_args.out, "Output file (default stdout)");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "Run a named experiment from a JSON config");
    experiment->add_option("--config", exp.config, "Experiment config JSON")->required();
    experiment->add_option("--out", exp.out, "Per-trial CSV (overrides the config)");
    experiment->add_option("--summary", exp.summary, "Summary JSON (overrides the config)");
    experiment->add_option("--threads", exp.threads, "Worker threads (default BOXBALL_THREADS or all cores)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try
    {
        if (*simulate)
            return run_simulate(sim);
        if (*pushtasep)
            return run_pushtasep(push);
        if (*partition)
            return run_partition(part_args);
        if (*reflect)
            return run_reflect(refl_args);
        if (*scertify)
            return run_scertify(cert_args);
        if (*decompose)
            return run_decompose(dec);
        if (*srbm)
            return run_srbm(srbm_args);
        if (*experiment)
            return run_experiment_cmd(exp);
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
