// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "boxball/gaps.hpp"
#include "boxball/io.hpp"
#include "boxball/parallel.hpp"
#include "boxball/pushtasep.hpp"
#include "boxball/reflection.hpp"
#include "boxball/skorokhod.hpp"
#include "boxball/srbm.hpp"
#include "boxball/stats.hpp"

namespace boxball
{
//---------------------------------------------------------------------------//
int resolve_threads(int requested)
{
    if (requested > 0)
    {
        return requested;
    }
    if (char const* env = std::getenv("BOXBALL_THREADS"))
    {
        int const v = std::atoi(env);
        if (v > 0)
        {
            return v;
        }
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

namespace
{
using Row = std::vector<std::string>;

std::uint64_t stream_id(std::uint64_t block, long trial)
{
    return (block << 32) | static_cast<std::uint64_t>(trial);
}

std::string fmt(double x)
{
    return format_double(x);
}

std::string fmt(long x)
{
    return std::to_string(x);
}

//! Fixed-size SBBS state advanced in place
class FastSbbs
{
  public:
    FastSbbs(BallConfig const& init, double eps, Capacity capacity)
        : pos_(init.positions().begin(), init.positions().end())
        , eta_(pos_.size())
        , success_(1.0 - eps)
        , capacity_(capacity)
    {
    }

    void step(RngStream& rng)
    {
        draw_coins_into(eta_, success_, rng);
        advance_in_place(pos_, eta_, capacity_);
    }

    bool on_boundary() const
    {
        for (std::size_t i = 1; i < pos_.size(); ++i)
        {
            if (pos_[i] - pos_[i - 1] == 1)
            {
                return true;
            }
        }
        return false;
    }

    std::int64_t position(std::size_t i) const { return pos_[i]; }
    std::int64_t gap(std::size_t i) const { return pos_[i + 1] - pos_[i] - 1; }
    std::size_t size() const { return pos_.size(); }

  private:
    std::vector<std::int64_t> pos_;
    std::vector<std::uint8_t> eta_;
    BernoulliThreshold success_;
    Capacity capacity_;
};

BallConfig initial_config(ExperimentConfig const& config)
{
    if (config.init_gaps)
    {
        if (static_cast<int>(config.init_gaps->size()) != config.d - 1)
        {
            throw DimensionError("init_gaps must have d - 1 entries");
        }
        return BallConfig::from_gaps(*config.init_gaps);
    }
    return BallConfig::block(config.d);
}

Row provenance(ExperimentConfig const& c)
{
    return {c.name, c.mode, std::to_string(c.seed), c.epsilon, c.capacity.to_string(), std::to_string(c.d),
            std::to_string(c.trials)};
}

std::vector<std::string> provenance_columns()
{
    return {"experiment", "mode", "seed", "eps", "capacity", "d", "trials"};
}

Row with_provenance(ExperimentConfig const& c, Row values)
{
    Row row = provenance(c);
    row.insert(row.end(), values.begin(), values.end());
    return row;
}

EstimateReport band_report(std::string label, MeanAccumulator const& acc, std::optional<double> predicted, double lower, double upper, std::string rule, bool gated)
{
    EstimateReport r;
    r.label = std::move(label);
    r.estimate = acc.mean();
    r.standard_error = acc.standard_error();
    r.trials = acc.count();
    r.predicted = predicted;
    r.lower = lower;
    r.upper = upper;
    r.rule = std::move(rule);
    r.pass = r.estimate >= lower && r.estimate <= upper;
    r.gated = gated;
    return r;
}

EstimateReport value_report(std::string label, double value, long trials, std::optional<double> predicted, double lower, double upper, std::string rule, bool gated)
{
    EstimateReport r;
    r.label = std::move(label);
    r.estimate = value;
    r.trials = trials;
    r.predicted = predicted;
    r.lower = lower;
    r.upper = upper;
    r.rule = std::move(rule);
    r.pass = value >= lower && value <= upper;
    r.gated = gated;
    return r;
}

EstimateReport ratio_report(std::string label, MeanAccumulator const& acc, double reference, double lo, double hi, bool gated)
{
    EstimateReport r;
    r.label = std::move(label);
    r.estimate = acc.mean() / reference;
    r.standard_error = acc.standard_error() / reference;
    r.trials = acc.count();
    r.predicted = 1.0;
    r.lower = lo;
    r.upper = hi;
    r.rule = "estimate / reference in [" + fmt(lo) + ", " + fmt(hi) + "]";
    r.pass = r.estimate >= lo && r.estimate <= hi;
    r.gated = gated;
    return r;
}

std::string tag(std::string const& key, std::string const& value)
{
    return "[" + key + "=" + value + "]";
}

void require_trials(ExperimentConfig const& config, long minimum, char const* what)
{
    if (config.trials < minimum)
    {
        throw SampleSizeError(std::string(what) + " needs at least " + std::to_string(minimum) + " trials");
    }
}

std::vector<double> column_of(std::vector<std::vector<double>> const& xs, std::size_t i)
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (auto const& x : xs)
    {
        out.push_back(x[i]);
    }
    return out;
}

std::vector<double> radii(std::vector<std::vector<double>> const& xs)
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (auto const& x : xs)
    {
        double s = 0.0;
        for (double v : x)
        {
            s += v * v;
        }
        out.push_back(std::sqrt(s));
    }
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
double ExperimentConfig::eps() const
{
    return to_double(eps_exact());
}

Rational ExperimentConfig::eps_exact() const
{
    return parse_rational(epsilon);
}

void ExperimentConfig::validate() const
{
    auto const names = experiment_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
    {
        throw ValidationError("unknown experiment '" + name + "'");
    }
    Rational const e = eps_exact();
    if (e < 0 || e > 1)
    {
        throw ValidationError("epsilon must lie in [0, 1]");
    }
    for (auto const& s : epsilons)
    {
        Rational const v = parse_rational(s);
        if (v < 0 || v > 1)
        {
            throw ValidationError("epsilon must lie in [0, 1]");
        }
    }
    if (d < 1)
    {
        throw ValidationError("ball count d must be at least 1");
    }
    if (trials < 1)
    {
        throw ValidationError("trial count must be at least 1");
    }
    if (n.empty())
    {
        throw ValidationError("at least one step count is required");
    }
    for (long v : n)
    {
        if (v < 0)
        {
            throw ValidationError("step counts must be nonnegative");
        }
    }
    if (!(dt > 0.0) || !(horizon >= 0.0))
    {
        throw ValidationError("dt must be positive and horizon nonnegative");
    }
}

bool ExperimentResult::pass() const
{
    return std::all_of(estimates.begin(), estimates.end(), [](EstimateReport const& r) { return !r.gated || r.pass; });
}

EstimateReport const& ExperimentResult::estimate(std::string const& label) const
{
    for (auto const& r : estimates)
    {
        if (r.label == label)
        {
            return r;
        }
    }
    throw std::out_of_range("no estimate labelled '" + label + "'");
}

std::vector<std::string> experiment_names()
{
    return {"boundary_time", "ball_positions", "pushtasep_boundary", "diffusive_limit", "dp_boundary_time",
            "sbbs_as_pushtasep", "lazy_walk_local_time", "oscillation_fit"};
}

ExperimentResult run_experiment(ExperimentConfig const& config)
{
    config.validate();
    if (config.name == "boundary_time")
        return run_boundary_time(config);
    if (config.name == "ball_positions")
        return run_ball_positions(config);
    if (config.name == "pushtasep_boundary")
        return run_pushtasep_boundary(config);
    if (config.name == "diffusive_limit")
        return run_diffusive_limit(config);
    if (config.name == "dp_boundary_time")
        return run_dp_boundary_time(config);
    if (config.name == "sbbs_as_pushtasep")
        return sbbs_as_pushtasep_check(config);
    if (config.name == "lazy_walk_local_time")
        return run_lazy_walk_local_time(config);
    return run_oscillation_fit(config);
}

//---------------------------------------------------------------------------//
// ORACLES AND CLOSED FORMS
//---------------------------------------------------------------------------//

namespace
{
struct GapKernelD2
{
    //! Probabilities of -1, 0, +1 at gap 0 and at gaps >= 1
    std::array<Rational, 3> at_zero;
    std::array<Rational, 3> bulk;
};

GapKernelD2 kernel_d2(Rational const& eps, Capacity capacity)
{
    GapKernelD2 k;
    auto fill = [&](int g, std::array<Rational, 3>& out) {
        for (auto const& [dw, p] : exact_kernel(GapVector{{g}}, eps, capacity))
        {
            out[static_cast<std::size_t>(dw[0] + 1)] += p;
        }
    };
    fill(0, k.at_zero);
    // Clamp radius d = 2: every gap >= 2 behaves like gap 2, and gap 1 matches it
    fill(2, k.bulk);
    return k;
}

template<class T, class Conv>
T dp_boundary(GapKernelD2 const& k, long n, Conv conv)
{
    std::array<T, 3> const z{conv(k.at_zero[0]), conv(k.at_zero[1]), conv(k.at_zero[2])};
    std::array<T, 3> const b{conv(k.bulk[0]), conv(k.bulk[1]), conv(k.bulk[2])};
    std::vector<T> p(static_cast<std::size_t>(n) + 2, T(0));
    std::vector<T> q(p.size(), T(0));
    p[0] = T(1);
    T total = p[0];
    for (long t = 1; t <= n; ++t)
    {
        auto const top = static_cast<std::size_t>(t);
        std::fill(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(top) + 1, T(0));
        q[0] += p[0] * z[1];
        q[1] += p[0] * z[2];
        for (std::size_t g = 1; g < top; ++g)
        {
            if (p[g] == T(0))
            {
                continue;
            }
            q[g - 1] += p[g] * b[0];
            q[g] += p[g] * b[1];
            q[g + 1] += p[g] * b[2];
        }
        std::swap(p, q);
        total += p[0];
    }
    return total;
}

}  // namespace

Rational dp_expected_boundary_time_d2(Rational const& eps, Capacity capacity, long n)
{
    if (n < 0 || n > 10000)
    {
        throw ValidationError("exact boundary-time recursion supports 0 <= n <= 10^4");
    }
    return dp_boundary<Rational>(kernel_d2(eps, capacity), n, [](Rational const& r) { return r; });
}

long double dp_expected_boundary_time_d2_fp(Rational const& eps, Capacity capacity, long n)
{
    if (n < 0)
    {
        throw ValidationError("step count must be nonnegative");
    }
    return dp_boundary<long double>(kernel_d2(eps, capacity), n, [](Rational const& r) {
        return static_cast<long double>(numerator(r).convert_to<long double>() / denominator(r).convert_to<long double>());
    });
}

double published_local_time_d2(double eps, double n)
{
    return std::sqrt(2.0 * std::pow(eps, 3) * std::pow(1.0 - eps, 3) * n / std::numbers::pi);
}

double corrected_local_time_d2(double eps, double n)
{
    double const p = eps * (1.0 - eps);
    double const var = 2.0 * p;
    return std::sqrt(2.0 * var * n / std::numbers::pi) / p;
}

double published_excess_coefficient(int ball, double eps, Capacity capacity)
{
    double const base = std::sqrt(2.0 * std::pow(eps, 3) * std::pow(1.0 - eps, 5) / std::numbers::pi);
    bool const unit = capacity.limit() == 1;
    if (ball == 2)
    {
        return unit ? eps * base : base;
    }
    return unit ? 0.0 : (1.0 - eps) * (1.0 - eps) * base;
}

double corrected_excess_coefficient(int ball, double eps, Capacity capacity)
{
    // Mean displacement at gap 0 minus (1 - eps), from the four coin outcomes
    bool const unit = capacity.limit() == 1;
    double per_visit = 0.0;
    if (ball == 2)
    {
        per_visit = unit ? eps * (1.0 - eps) : 1.0 - eps;
    }
    else
    {
        per_visit = unit ? 0.0 : (1.0 - eps) * (1.0 - eps);
    }
    return per_visit * corrected_local_time_d2(eps, 1.0);
}

//---------------------------------------------------------------------------//
// SBBS BOUNDARY TIME
//---------------------------------------------------------------------------//

ExperimentResult run_boundary_time(ExperimentConfig const& config)
{
    config.validate();
    double const eps = config.eps();
    auto ns = config.n;
    std::sort(ns.begin(), ns.end());
    BallConfig const init = initial_config(config);
    int const threads = resolve_threads(config.threads);

    auto counts = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        FastSbbs sim(init, eps, config.capacity);
        std::vector<long> out;
        long count = sim.on_boundary() ? 1 : 0;
        long t = 0;
        for (long target : ns)
        {
            for (; t < target; ++t)
            {
                sim.step(rng);
                count += sim.on_boundary() ? 1 : 0;
            }
            out.push_back(count);
        }
        return out;
    });

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    for (auto const* c : {"n", "trial", "boundary_time"})
    {
        res.columns.emplace_back(c);
    }
    for (std::size_t k = 0; k < ns.size(); ++k)
    {
        for (long trial = 0; trial < config.trials; ++trial)
        {
            res.rows.push_back(with_provenance(config, {fmt(ns[k]), fmt(trial), fmt(counts[static_cast<std::size_t>(trial)][k])}));
        }
    }

    std::vector<double> xs;
    std::vector<double> means;
    MeanAccumulator last;
    for (std::size_t k = 0; k < ns.size(); ++k)
    {
        MeanAccumulator acc;
        for (auto const& c : counts)
        {
            acc.add(static_cast<double>(c[k]));
        }
        res.estimates.push_back(band_report("mean_boundary_time" + tag("n", fmt(ns[k])), acc, std::nullopt, 0.0, INFINITY, "raw estimate", false));
        if (ns[k] > 0 && acc.mean() > 0)
        {
            xs.push_back(static_cast<double>(ns[k]));
            means.push_back(acc.mean());
        }
        last = acc;
    }
    double const n_last = static_cast<double>(ns.back());
    if (config.d == 2 && ns.back() > 0 && eps > 0.0 && eps < 1.0)
    {
        res.estimates.push_back(ratio_report("local_time_ratio_published", last, published_local_time_d2(eps, n_last), 0.9, 1.1, true));
        res.estimates.push_back(ratio_report("local_time_ratio_corrected", last, corrected_local_time_d2(eps, n_last), 0.9, 1.1, false));
    }
    if (xs.size() >= 2)
    {
        auto const fit = loglog_fit(xs, means);
        res.estimates.push_back(value_report("loglog_slope", fit.slope, config.trials, 0.5, 0.45, 0.55, "slope of log E[N_n] vs log n in [0.45, 0.55]", true));
    }
    return res;
}

//---------------------------------------------------------------------------//
// BALL POSITIONS
//---------------------------------------------------------------------------//

ExperimentResult run_ball_positions(ExperimentConfig const& config)
{
    config.validate();
    double const eps = config.eps();
    long const n = config.n.front();
    int const d = config.d;
    BallConfig const init = initial_config(config);
    int const threads = resolve_threads(config.threads);

    auto disp = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        FastSbbs sim(init, eps, config.capacity);
        for (long t = 0; t < n; ++t)
        {
            sim.step(rng);
        }
        std::vector<std::int64_t> out(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
        {
            out[static_cast<std::size_t>(i)] = sim.position(static_cast<std::size_t>(i)) - init[i];
        }
        return out;
    });

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    res.columns.emplace_back("n");
    res.columns.emplace_back("trial");
    for (int i = 1; i <= d; ++i)
    {
        res.columns.push_back("disp_" + std::to_string(i));
    }
    for (int i = 1; i <= d; ++i)
    {
        res.columns.push_back("excess_coef_" + std::to_string(i));
    }
    double const root = std::sqrt(static_cast<double>(std::max(n, 1L)));
    std::vector<MeanAccumulator> coef(static_cast<std::size_t>(d));
    for (long trial = 0; trial < config.trials; ++trial)
    {
        Row values{fmt(n), fmt(trial)};
        auto const& x = disp[static_cast<std::size_t>(trial)];
        for (int i = 0; i < d; ++i)
        {
            values.push_back(std::to_string(x[static_cast<std::size_t>(i)]));
        }
        for (int i = 0; i < d; ++i)
        {
            double const c = (static_cast<double>(x[static_cast<std::size_t>(i)]) - (1.0 - eps) * static_cast<double>(n)) / root;
            coef[static_cast<std::size_t>(i)].add(c);
            values.push_back(fmt(c));
        }
        res.rows.push_back(with_provenance(config, std::move(values)));
    }
    for (int i = 0; i < d; ++i)
    {
        res.estimates.push_back(band_report("excess_coefficient" + tag("ball", std::to_string(i + 1)), coef[static_cast<std::size_t>(i)], std::nullopt, -INFINITY, INFINITY, "raw estimate", false));
    }

    if (d == 2 && n > 0)
    {
        auto const& second = coef[1];
        auto const& first = coef[0];
        auto relative = [&](std::string label, MeanAccumulator const& acc, double pred, bool gated) {
            double const lo = std::min(0.85 * pred, 1.15 * pred);
            double const hi = std::max(0.85 * pred, 1.15 * pred);
            return band_report(std::move(label), acc, pred, lo, hi, "within 15% of the predicted coefficient", gated);
        };
        auto zscore = [&](std::string label, MeanAccumulator const& acc, double pred, bool gated) {
            double const se = acc.standard_error();
            double const z = se > 0 ? (acc.mean() - pred) / se : (acc.mean() == pred ? 0.0 : INFINITY);
            auto r = value_report(std::move(label), z, acc.count(), pred, -3.0, 3.0, "|z| < 3 against the predicted coefficient", gated);
            r.pass = std::abs(z) < 3.0;
            return r;
        };
        res.estimates.push_back(relative("ball2_coefficient", second, published_excess_coefficient(2, eps, config.capacity), true));
        res.estimates.push_back(zscore("ball1_zscore", first, published_excess_coefficient(1, eps, config.capacity), true));
        res.estimates.push_back(relative("ball2_coefficient_corrected", second, corrected_excess_coefficient(2, eps, config.capacity), false));
        double const c1 = corrected_excess_coefficient(1, eps, config.capacity);
        if (c1 != 0.0)
        {
            res.estimates.push_back(relative("ball1_coefficient_corrected", first, c1, false));
        }
        else
        {
            res.estimates.push_back(zscore("ball1_zscore_corrected", first, 0.0, false));
        }
    }
    return res;
}

//---------------------------------------------------------------------------//
// PUSHTASEP BOUNDARY OCCUPATION
//---------------------------------------------------------------------------//

ExperimentResult run_pushtasep_boundary(ExperimentConfig const& config)
{
    config.validate();
    int const d = config.d;
    auto ts = config.n;
    std::sort(ts.begin(), ts.end());
    BallConfig const init = initial_config(config);
    int const threads = resolve_threads(config.threads);

    struct Sample
    {
        std::vector<double> occupation;
        std::vector<std::vector<std::int64_t>> disp;
    };
    auto samples = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        std::vector<std::int64_t> pos(init.positions().begin(), init.positions().end());
        auto boundary = [&] {
            for (std::size_t i = 1; i < pos.size(); ++i)
            {
                if (pos[i] - pos[i - 1] == 1)
                {
                    return 1.0;
                }
            }
            return 0.0;
        };
        Sample s;
        auto record = [&](double occ) {
            s.occupation.push_back(occ);
            std::vector<std::int64_t> x(pos.size());
            for (std::size_t i = 0; i < pos.size(); ++i)
            {
                x[i] = pos[i] - init[static_cast<int>(i)];
            }
            s.disp.push_back(std::move(x));
        };
        double t = 0.0;
        double occ = 0.0;
        std::size_t ck = 0;
        while (ck < ts.size())
        {
            double const next = t + rng.exponential(static_cast<double>(d));
            double const ind = boundary();
            while (ck < ts.size() && next > static_cast<double>(ts[ck]))
            {
                record(occ + (static_cast<double>(ts[ck]) - t) * ind);
                ++ck;
            }
            if (ck == ts.size())
            {
                break;
            }
            occ += (next - t) * ind;
            t = next;
            push_in_place(pos, rng.below(static_cast<std::uint32_t>(d)));
        }
        return s;
    });

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    res.columns.emplace_back("horizon");
    res.columns.emplace_back("trial");
    res.columns.emplace_back("occupation");
    for (int i = 1; i <= d; ++i)
    {
        res.columns.push_back("disp_" + std::to_string(i));
    }
    for (std::size_t k = 0; k < ts.size(); ++k)
    {
        for (long trial = 0; trial < config.trials; ++trial)
        {
            auto const& s = samples[static_cast<std::size_t>(trial)];
            Row values{fmt(ts[k]), fmt(trial), fmt(s.occupation[k])};
            for (auto x : s.disp[k])
            {
                values.push_back(std::to_string(x));
            }
            res.rows.push_back(with_provenance(config, std::move(values)));
        }
    }

    std::vector<double> xs;
    std::vector<double> means;
    for (std::size_t k = 0; k < ts.size(); ++k)
    {
        MeanAccumulator acc;
        for (auto const& s : samples)
        {
            acc.add(s.occupation[k]);
        }
        res.estimates.push_back(band_report("mean_occupation" + tag("T", fmt(ts[k])), acc, std::nullopt, 0.0, INFINITY, "raw estimate", false));
        if (ts[k] > 0 && acc.mean() > 0)
        {
            xs.push_back(static_cast<double>(ts[k]));
            means.push_back(acc.mean());
        }
    }
    if (xs.size() >= 2)
    {
        auto const fit = loglog_fit(xs, means);
        res.estimates.push_back(value_report("loglog_slope", fit.slope, config.trials, 0.5, 0.45, 0.55, "slope of log E[N_T] vs log T in [0.45, 0.55]", true));
    }
    double const big_t = static_cast<double>(ts.back());
    if (big_t > 0)
    {
        for (int i = 0; i < d; ++i)
        {
            MeanAccumulator acc;
            for (auto const& s : samples)
            {
                acc.add(static_cast<double>(s.disp.back()[static_cast<std::size_t>(i)]) / big_t);
            }
            // sd of xi_T / sqrt(T) is the O(1) spread; the band is 5 of them over sqrt(T)
            double const sigma = std::sqrt(acc.variance()) * std::sqrt(big_t);
            double const half = 5.0 * std::max(sigma, 1.0) / std::sqrt(big_t);
            res.estimates.push_back(band_report("displacement_ratio" + tag("particle", std::to_string(i + 1)), acc, 1.0, 1.0 - half, 1.0 + half, "E[xi_T]/T within 5 sigma/sqrt(T) of 1", true));
        }
    }
    return res;
}

//---------------------------------------------------------------------------//
// DIFFUSIVE LIMITS
//---------------------------------------------------------------------------//

namespace
{
std::vector<std::vector<double>> sbbs_scaled_gaps(ExperimentConfig const& config, double eps, Capacity capacity, long steps, double scale, std::uint64_t block, int threads)
{
    BallConfig const init = BallConfig::block(config.d);
    return parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(block, trial));
        FastSbbs sim(init, eps, capacity);
        for (long t = 0; t < steps; ++t)
        {
            sim.step(rng);
        }
        std::vector<double> w(sim.size() - 1);
        for (std::size_t i = 0; i + 1 < sim.size(); ++i)
        {
            w[i] = static_cast<double>(sim.gap(i)) / scale;
        }
        return w;
    });
}

std::vector<std::vector<double>> pushtasep_scaled_gaps(ExperimentConfig const& config, double horizon, double scale, std::uint64_t block, int threads)
{
    int const d = config.d;
    return parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(block, trial));
        std::vector<std::int64_t> pos(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
        {
            pos[static_cast<std::size_t>(i)] = i;
        }
        double t = 0.0;
        while (true)
        {
            t += rng.exponential(static_cast<double>(d));
            if (t > horizon)
            {
                break;
            }
            push_in_place(pos, rng.below(static_cast<std::uint32_t>(d)));
        }
        std::vector<double> w(static_cast<std::size_t>(d - 1));
        for (int i = 0; i + 1 < d; ++i)
        {
            w[static_cast<std::size_t>(i)] = static_cast<double>(pos[static_cast<std::size_t>(i + 1)] - pos[static_cast<std::size_t>(i)] - 1) / scale;
        }
        return w;
    });
}

void add_two_sample_reports(ExperimentResult& res, std::vector<std::vector<double>> const& a, std::vector<std::vector<double>> const& b, double band)
{
    std::size_t const m = a.front().size();
    for (std::size_t i = 0; i < m; ++i)
    {
        auto const ks = ks_two_sample(column_of(a, i), column_of(b, i));
        res.estimates.push_back(value_report("ks_coord" + tag("i", std::to_string(i + 1)), ks.statistic, static_cast<long>(a.size()), std::nullopt, 0.0, band, "two-sample KS D < " + fmt(band), true));
    }
    auto const ks = ks_two_sample(radii(a), radii(b));
    res.estimates.push_back(value_report("ks_radial", ks.statistic, static_cast<long>(a.size()), std::nullopt, 0.0, band, "two-sample KS D < " + fmt(band), false));
    res.estimates.push_back(value_report("ks_threshold_001", ks.threshold, static_cast<long>(a.size()), std::nullopt, 0.0, INFINITY, "two-sample critical value at level 0.01", false));
}

void add_sample_rows(ExperimentResult& res, char const* model, std::vector<std::vector<double>> const& xs)
{
    for (std::size_t trial = 0; trial < xs.size(); ++trial)
    {
        Row values{model, fmt(res.config.n.front()), std::to_string(trial)};
        for (double v : xs[trial])
        {
            values.push_back(fmt(v));
        }
        res.rows.push_back(with_provenance(res.config, std::move(values)));
    }
}

}  // namespace

ExperimentResult run_diffusive_limit(ExperimentConfig const& config)
{
    config.validate();
    require_trials(config, 500, "diffusive-limit test");
    double const eps = config.eps();
    if (!(eps > 0.0 && eps < 1.0))
    {
        throw ValidationError("diffusive limits need 0 < eps < 1");
    }
    long const n = config.n.front();
    if (n < 1)
    {
        throw ValidationError("diffusive limits need n >= 1");
    }
    int const threads = resolve_threads(config.threads);
    double const scale = std::sqrt(static_cast<double>(n));

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    res.columns.emplace_back("model");
    res.columns.emplace_back("n");
    res.columns.emplace_back("trial");
    for (int i = 1; i < config.d; ++i)
    {
        res.columns.push_back("w_" + std::to_string(i));
    }

    std::string const mode = config.mode.empty() ? "half_normal" : config.mode;
    if (mode == "half_normal")
    {
        if (config.d != 2)
        {
            throw DimensionError("the half-normal test is for d = 2");
        }
        auto const steps = static_cast<long>(std::floor(static_cast<double>(n) / (eps * (1.0 - eps))));
        auto const w = sbbs_scaled_gaps(config, eps, config.capacity, steps, scale, 0, threads);
        add_sample_rows(res, "sbbs", w);
        auto const sample = column_of(w, 0);
        // X has per-step variance 2 eps(1-eps), so Var X = 2n at the rescaled time
        auto const ks = ks_one_sample(sample, [](double x) { return half_normal_cdf(x, std::sqrt(2.0)); });
        res.estimates.push_back(value_report("ks_half_normal", ks.statistic, config.trials, std::nullopt, 0.0, 0.03, "one-sample KS D < 0.03 against |N(0, 2)|", true));
        auto const unit = ks_one_sample(sample, [](double x) { return half_normal_cdf(x, 1.0); });
        res.estimates.push_back(value_report("ks_half_normal_unit_variance", unit.statistic, config.trials, std::nullopt, 0.0, 0.03, "one-sample KS D < 0.03 against |N(0, 1)|", false));
        res.estimates.push_back(value_report("ks_threshold_001", ks.threshold, config.trials, std::nullopt, 0.0, INFINITY, "one-sample critical value at level 0.01", false));
        return res;
    }
    if (mode == "cross_pushtasep")
    {
        auto const steps = static_cast<long>(std::floor(static_cast<double>(n) / (eps * (1.0 - eps))));
        auto const a = sbbs_scaled_gaps(config, eps, config.capacity, steps, scale, 0, threads);
        auto const b = pushtasep_scaled_gaps(config, static_cast<double>(n), scale, 1, threads);
        add_sample_rows(res, "sbbs", a);
        add_sample_rows(res, "pushtasep", b);
        add_two_sample_reports(res, a, b, 0.05);
        return res;
    }
    if (mode == "cross_srbm")
    {
        if (config.d < 2 || config.d - 1 > kMaxSrbmDimension)
        {
            throw DimensionError("SRBM comparison supports 2 <= d <= 5");
        }
        auto const steps = static_cast<long>(std::floor(static_cast<double>(n) / (1.0 - eps)));
        auto const a = sbbs_scaled_gaps(config, eps, config.capacity, steps, scale, 0, threads);

        auto const mats = standard_matrices(config.d, config.eps_exact(), config.capacity);
        auto const m = static_cast<Eigen::Index>(config.d - 1);
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
                spec.covariance(i, j) = eps * to_double(mats.sigma_pt(ui, uj));
                spec.reflection(i, j) = to_double(mats.hat_r(ui, uj));
            }
        }
        spec.validate();
        auto const b = parallel_map(config.trials, threads, [&](long trial) {
            RngStream rng(config.seed, stream_id(1, trial));
            auto path = srbm_euler(spec, config.horizon, config.dt, rng, false);
            return path.w.back();
        });
        add_sample_rows(res, "sbbs", a);
        add_sample_rows(res, "srbm", b);
        add_two_sample_reports(res, a, b, 0.06);
        return res;
    }
    throw ValidationError("unknown diffusive_limit mode '" + mode + "'");
}

//---------------------------------------------------------------------------//
// DP VERSUS MONTE CARLO
//---------------------------------------------------------------------------//

ExperimentResult run_dp_boundary_time(ExperimentConfig const& config)
{
    config.validate();
    if (config.d != 2)
    {
        throw DimensionError("the boundary-time recursion is for d = 2");
    }
    std::vector<std::string> eps_list = config.epsilons.empty() ? std::vector<std::string>{config.epsilon} : config.epsilons;
    int const threads = resolve_threads(config.threads);

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    for (auto const* c : {"eps_point", "n", "trial", "boundary_time"})
    {
        res.columns.emplace_back(c);
    }
    std::uint64_t block = 0;
    for (auto const& eps_text : eps_list)
    {
        Rational const eps_q = parse_rational(eps_text);
        double const eps = to_double(eps_q);
        for (long n : config.n)
        {
            auto const counts = parallel_map(config.trials, threads, [&](long trial) {
                RngStream rng(config.seed, stream_id(block, trial));
                FastSbbs sim(BallConfig::block(2), eps, config.capacity);
                long count = sim.on_boundary() ? 1 : 0;
                for (long t = 0; t < n; ++t)
                {
                    sim.step(rng);
                    count += sim.on_boundary() ? 1 : 0;
                }
                return count;
            });
            ++block;
            MeanAccumulator acc;
            for (long trial = 0; trial < config.trials; ++trial)
            {
                long const c = counts[static_cast<std::size_t>(trial)];
                acc.add(static_cast<double>(c));
                res.rows.push_back(with_provenance(config, {eps_text, fmt(n), fmt(trial), fmt(c)}));
            }
            auto const exact = static_cast<double>(dp_expected_boundary_time_d2_fp(eps_q, config.capacity, n));
            double const se = acc.standard_error();
            std::string const label = "dp_vs_mc" + tag("eps", eps_text) + tag("n", fmt(n));
            res.estimates.push_back(band_report(label, acc, exact, exact - 3 * se, exact + 3 * se, "Monte Carlo mean within 3 SE of the recursion", true));
        }
    }
    return res;
}

//---------------------------------------------------------------------------//
// SBBS NEAR EPS = 1 AGAINST PUSHTASEP
//---------------------------------------------------------------------------//

ExperimentResult sbbs_as_pushtasep_check(ExperimentConfig const& config)
{
    config.validate();
    require_trials(config, 100, "SBBS-to-PushTASEP comparison");
    int const d = config.d;
    double const horizon = config.horizon;
    std::vector<std::string> eps_list = config.epsilons.empty() ? std::vector<std::string>{config.epsilon} : config.epsilons;
    int const threads = resolve_threads(config.threads);
    BallConfig const init = BallConfig::block(d);

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    res.columns.emplace_back("model");
    res.columns.emplace_back("eps_point");
    res.columns.emplace_back("trial");
    for (int i = 1; i <= d; ++i)
    {
        res.columns.push_back("disp_" + std::to_string(i));
    }

    auto push = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        std::vector<std::int64_t> pos(init.positions().begin(), init.positions().end());
        double t = 0.0;
        while (true)
        {
            t += rng.exponential(static_cast<double>(d));
            if (t > horizon)
            {
                break;
            }
            push_in_place(pos, rng.below(static_cast<std::uint32_t>(d)));
        }
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
        {
            x[static_cast<std::size_t>(i)] = static_cast<double>(pos[static_cast<std::size_t>(i)] - init[i]);
        }
        return x;
    });
    auto add_rows = [&](char const* model, std::string const& eps_text, std::vector<std::vector<double>> const& xs) {
        for (std::size_t trial = 0; trial < xs.size(); ++trial)
        {
            Row values{model, eps_text, std::to_string(trial)};
            for (double v : xs[trial])
            {
                values.push_back(fmt(v));
            }
            res.rows.push_back(with_provenance(config, std::move(values)));
        }
    };
    add_rows("pushtasep", "", push);

    std::vector<double> worst;
    std::vector<double> exact_d1;
    std::uint64_t block = 1;
    for (auto const& eps_text : eps_list)
    {
        double const eps = to_double(parse_rational(eps_text));
        if (!(eps < 1.0))
        {
            throw ValidationError("the time change needs eps < 1");
        }
        auto const steps = static_cast<long>(std::floor(horizon / (1.0 - eps)));
        auto sbbs = parallel_map(config.trials, threads, [&](long trial) {
            RngStream rng(config.seed, stream_id(block, trial));
            FastSbbs sim(init, eps, config.capacity);
            for (long t = 0; t < steps; ++t)
            {
                sim.step(rng);
            }
            std::vector<double> x(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
            {
                x[static_cast<std::size_t>(i)] = static_cast<double>(sim.position(static_cast<std::size_t>(i)) - init[i]);
            }
            return x;
        });
        ++block;
        add_rows("sbbs", eps_text, sbbs);

        double max_d = 0.0;
        for (int i = 0; i < d; ++i)
        {
            auto const ks = ks_two_sample(column_of(sbbs, static_cast<std::size_t>(i)), column_of(push, static_cast<std::size_t>(i)));
            max_d = std::max(max_d, ks.statistic);
            bool const gated = eps >= 0.99;
            res.estimates.push_back(value_report("ks_disp" + tag("i", std::to_string(i + 1)) + tag("eps", eps_text), ks.statistic, config.trials, std::nullopt, 0.0, 0.05, "two-sample KS D <= 0.05 (enforced for eps >= 0.99)", gated));
        }
        worst.push_back(max_d);

        if (d == 1)
        {
            // Binomial(steps, 1-eps) against Poisson(horizon), exactly
            double sup = 0.0;
            long const top = std::max(steps, static_cast<long>(horizon * 4 + 50));
            for (long k = 0; k <= top; ++k)
            {
                sup = std::max(sup, std::abs(binomial_cdf(k, steps, 1.0 - eps) - poisson_cdf(k, horizon)));
            }
            exact_d1.push_back(sup);
            res.estimates.push_back(value_report("exact_cdf_distance" + tag("eps", eps_text), sup, 0, std::nullopt, 0.0, 1.0, "sup |Binomial - Poisson| CDF distance", false));
        }
    }
    auto monotone = [](std::vector<double> const& v) {
        for (std::size_t k = 1; k < v.size(); ++k)
        {
            if (v[k] > v[k - 1])
            {
                return false;
            }
        }
        return true;
    };
    if (worst.size() >= 2)
    {
        auto r = value_report("ks_monotone_in_eps", monotone(worst) ? 1.0 : 0.0, config.trials, 1.0, 1.0, 1.0, "largest coordinate KS D non-increasing along the eps list", true);
        res.estimates.push_back(r);
    }
    if (exact_d1.size() >= 2)
    {
        res.estimates.push_back(value_report("exact_monotone_in_eps", monotone(exact_d1) ? 1.0 : 0.0, 0, 1.0, 1.0, 1.0, "exact CDF distance non-increasing along the eps list", true));
    }
    return res;
}

//---------------------------------------------------------------------------//
// LAZY WALK AT ITS RUNNING MINIMUM
//---------------------------------------------------------------------------//

ExperimentResult run_lazy_walk_local_time(ExperimentConfig const& config)
{
    config.validate();
    double const eps = config.eps();
    double const p = eps * (1.0 - eps);
    if (!(p > 0.0))
    {
        throw ValidationError("lazy walk needs 0 < eps < 1");
    }
    auto ns = config.n;
    std::sort(ns.begin(), ns.end());
    int const threads = resolve_threads(config.threads);

    auto counts = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        long x = 0;
        long lowest = 0;
        long count = 1;
        long t = 0;
        std::vector<long> out;
        for (long target : ns)
        {
            for (; t < target; ++t)
            {
                double const u = rng.uniform();
                x += u < p ? -1 : (u < 2 * p ? 1 : 0);
                lowest = std::min(lowest, x);
                count += x == lowest ? 1 : 0;
            }
            out.push_back(count);
        }
        return out;
    });

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    for (auto const* c : {"n", "trial", "minimum_time"})
    {
        res.columns.emplace_back(c);
    }
    for (std::size_t k = 0; k < ns.size(); ++k)
    {
        for (long trial = 0; trial < config.trials; ++trial)
        {
            res.rows.push_back(with_provenance(config, {fmt(ns[k]), fmt(trial), fmt(counts[static_cast<std::size_t>(trial)][k])}));
        }
    }
    MeanAccumulator acc;
    for (auto const& c : counts)
    {
        acc.add(static_cast<double>(c.back()));
    }
    double const n = static_cast<double>(ns.back());
    double const var = 2 * p;
    res.estimates.push_back(ratio_report("ratio_to_sqrt_2vn_pi_over_p", acc, std::sqrt(2 * var * n / std::numbers::pi) / p, 0.9, 1.1, true));
    res.estimates.push_back(ratio_report("ratio_to_p_sqrt_2vn_pi", acc, p * std::sqrt(2 * var * n / std::numbers::pi), 0.9, 1.1, false));
    return res;
}

//---------------------------------------------------------------------------//
// OSCILLATION DIAGNOSTIC
//---------------------------------------------------------------------------//

ExperimentResult run_oscillation_fit(ExperimentConfig const& config)
{
    config.validate();
    long const n = config.n.front();
    if (n < 1)
    {
        throw ValidationError("oscillation fit needs n >= 1");
    }
    DynamicsParams const params{config.eps(), config.capacity, config.d};
    auto const partition = build_partition(config.d, config.capacity);
    auto const r = reflection_matrix(partition, config.eps_exact());
    BallConfig const init = initial_config(config);
    int const threads = resolve_threads(config.threads);

    struct Fit
    {
        double osc_w;
        double osc_xa;
    };
    auto fits = parallel_map(config.trials, threads, [&](long trial) {
        RngStream rng(config.seed, stream_id(0, trial));
        auto const path = sbbs_path(init, params, n, rng);
        auto const trace = decompose_trajectory(path, partition, r);
        std::vector<double> times;
        std::vector<std::vector<double>> w;
        std::vector<std::vector<double>> xa;
        for (std::size_t t = 0; t < trace.steps.size(); ++t)
        {
            auto const& s = trace.steps[t];
            times.push_back(static_cast<double>(t));
            std::vector<double> wv;
            std::vector<double> xv;
            for (std::size_t i = 0; i < s.w.size(); ++i)
            {
                wv.push_back(static_cast<double>(s.w[i]));
                xv.push_back(static_cast<double>(s.x[i]) + to_double(s.alpha[i]));
            }
            w.push_back(std::move(wv));
            xa.push_back(std::move(xv));
        }
        double const end = static_cast<double>(n);
        return Fit{oscillation(times, w, 0.0, end), oscillation(times, xa, 0.0, end)};
    });

    ExperimentResult res;
    res.config = config;
    res.columns = provenance_columns();
    for (auto const* c : {"n", "trial", "osc_w", "osc_x_alpha", "ratio"})
    {
        res.columns.emplace_back(c);
    }
    MeanAccumulator ratios;
    double worst = 0.0;
    for (long trial = 0; trial < config.trials; ++trial)
    {
        auto const& f = fits[static_cast<std::size_t>(trial)];
        double const ratio = f.osc_w / (f.osc_xa + 1.0);
        ratios.add(ratio);
        worst = std::max(worst, ratio);
        res.rows.push_back(with_provenance(config, {fmt(n), fmt(trial), fmt(f.osc_w), fmt(f.osc_xa), fmt(ratio)}));
    }
    res.estimates.push_back(band_report("mean_ratio", ratios, std::nullopt, 0.0, INFINITY, "Osc(W) / (Osc(X + alpha) + 1), diagnostic", false));
    res.estimates.push_back(value_report("fitted_constant", worst, config.trials, std::nullopt, 0.0, INFINITY, "largest ratio over the paths, diagnostic", false));
    return res;
}

}  // namespace boxball
