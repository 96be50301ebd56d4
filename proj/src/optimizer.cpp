// SPDX-License-Identifier: Apache-2.0
//
// uwbrelay - capacity bounds for frequency-selective UWB relay channels
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

#include "uwbrelay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uwbrelay
{

namespace
{

// Real-valued per-tone objective with aligned phases. Variables live in [0,1]:
// (a, b) for the partial decode-and-forward bound, t = a b for the cut-set bound.
struct ToneModel
{
    enum class Kind
    {
        pdf,
        cutset,
    };

    Kind kind = Kind::pdf;
    double mac_base = 0.0;  // (|G1|^2 P1 + |G3|^2 P2) / N
    double mac_cross = 0.0; // 2 sqrt(P1 P2) |G1| |G3| / N
    double relay_snr = 0.0; // |G2|^2 P1
    double direct_snr = 0.0; // |G1|^2 P1
    double n_dest = 1.0;
    double n_relay = 1.0;
    double broadcast = 0.0; // P1 times the normalized cut-set quadratic form

    // Returns (first cut term, second cut term) in bits.
    std::pair<double, double> eval(double x, double y) const
    {
        if (kind == Kind::cutset)
        {
            const double f1 = std::log2(1.0 + mac_base + mac_cross * std::sqrt(x));
            const double f2 = std::log2(1.0 + broadcast * (1.0 - x));
            return {f1, f2};
        }
        const double f1 = std::log2(1.0 + mac_base + mac_cross * std::sqrt(x * y));
        const double relay = 1.0 + relay_snr * (1.0 - x) * y / (relay_snr * (1.0 - y) + n_relay);
        const double fresh = 1.0 + direct_snr * (1.0 - y) / n_dest;
        return {f1, std::log2(relay * fresh)};
    }
};

ToneModel make_model(const RelayChannelInstance &inst, const PowerBudget &p, std::size_t i, ToneModel::Kind kind)
{
    ToneModel m;
    m.kind = kind;
    const double g1sq = std::norm(inst.g1[i]);
    const double g3sq = std::norm(inst.g3[i]);
    m.mac_base = (g1sq * p.p1 + g3sq * p.p2) / inst.n_dest;
    m.mac_cross = 2.0 * std::sqrt(p.p1 * p.p2) * std::abs(inst.g1[i]) * std::abs(inst.g3[i]) / inst.n_dest;
    m.relay_snr = std::norm(inst.g2[i]) * p.p1;
    m.direct_snr = g1sq * p.p1;
    m.n_dest = inst.n_dest;
    m.n_relay = inst.n_relay;
    if (kind == ToneModel::Kind::cutset)
    {
        const cdouble rho = inst.rho[i];
        const double rho_sq = std::norm(rho);
        if (!(std::sqrt(rho_sq) < 1.0 - rho_singular_margin))
            throw std::domain_error("Cut-set bound is singular for |rho| >= 1.");
        const cdouble u = inst.g1[i] / std::sqrt(inst.n_dest);
        const cdouble w = inst.g2[i] / std::sqrt(inst.n_relay);
        m.broadcast = p.p1 * (std::norm(u - std::conj(rho) * w) / (1.0 - rho_sq) + std::norm(w));
    }
    return m;
}

struct GridPoint
{
    double x, y;
    double f1, f2;
    std::size_t order; // position in (x outer, y inner) scan, for tie-breaking
};

// One tone: the Pareto frontier of its grid plus an optional fixed y.
struct ToneSearch
{
    ToneModel model;
    bool two_dimensional = false;
    double fixed_y = 1.0;
    std::vector<GridPoint> frontier;
};

std::vector<double> unit_grid(std::size_t n)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

std::vector<GridPoint> pareto_frontier(std::vector<GridPoint> pts)
{
    std::sort(pts.begin(), pts.end(), [](const GridPoint &a, const GridPoint &b) {
        if (a.f1 != b.f1)
            return a.f1 > b.f1;
        if (a.f2 != b.f2)
            return a.f2 > b.f2;
        return a.order < b.order;
    });
    std::vector<GridPoint> out;
    double best_f2 = -std::numeric_limits<double>::infinity();
    for (const auto &p : pts)
    {
        if (p.f2 > best_f2)
        {
            out.push_back(p);
            best_f2 = p.f2;
        }
    }
    return out;
}

ToneSearch build_search(const ToneModel &model, bool two_dimensional, double fixed_y, const std::vector<double> &grid)
{
    ToneSearch s;
    s.model = model;
    s.two_dimensional = two_dimensional;
    s.fixed_y = fixed_y;

    std::vector<GridPoint> pts;
    pts.reserve(two_dimensional ? grid.size() * grid.size() : grid.size());
    std::size_t order = 0;
    for (double x : grid)
    {
        if (two_dimensional)
        {
            for (double y : grid)
            {
                const auto [f1, f2] = model.eval(x, y);
                pts.push_back({x, y, f1, f2, order++});
            }
        }
        else
        {
            const auto [f1, f2] = model.eval(x, fixed_y);
            pts.push_back({x, fixed_y, f1, f2, order++});
        }
    }
    s.frontier = pareto_frontier(std::move(pts));
    return s;
}

struct ToneChoice
{
    double x, y;
    double f1, f2;
};

ToneChoice solve_tone(const ToneSearch &s, double lambda, double grid_step, std::size_t refine_steps)
{
    const auto weighted = [lambda](double f1, double f2) { return lambda * f1 + (1.0 - lambda) * f2; };

    const GridPoint *best = &s.frontier.front();
    double best_value = weighted(best->f1, best->f2);
    for (const auto &p : s.frontier)
    {
        const double v = weighted(p.f1, p.f2);
        if (v > best_value || (v == best_value && p.order < best->order))
        {
            best = &p;
            best_value = v;
        }
    }

    ToneChoice c{best->x, best->y, best->f1, best->f2};
    double h = grid_step;
    for (std::size_t r = 0; r < refine_steps; ++r)
    {
        h /= 10.0;
        for (int axis = 0; axis < (s.two_dimensional ? 2 : 1); ++axis)
        {
            const double origin = axis == 0 ? c.x : c.y;
            for (int j = -10; j <= 10; ++j)
            {
                if (j == 0)
                    continue;
                const double v = std::clamp(origin + j * h, 0.0, 1.0);
                const double x = axis == 0 ? v : c.x;
                const double y = axis == 0 ? c.y : v;
                const auto [f1, f2] = s.model.eval(x, y);
                const double w = weighted(f1, f2);
                if (w > best_value)
                {
                    best_value = w;
                    c = {x, y, f1, f2};
                }
            }
        }
    }
    return c;
}

struct PathSolution
{
    std::vector<double> x, y;
    double first = 0.0;
    double second = 0.0;

    double value() const { return std::min(first, second); }
};

struct LambdaSearch
{
    PathSolution best;
    std::size_t iterations = 0;
    bool converged = true;
    std::vector<LambdaStep> trace;
};

LambdaSearch bisect_lambda(const std::vector<ToneSearch> &tones, const OptimizerSettings &settings)
{
    const double grid_step = 1.0 / static_cast<double>(settings.tone_grid_points - 1);
    const double k = static_cast<double>(tones.size());

    LambdaSearch out;
    bool have_best = false;

    const auto solve = [&](double lambda) {
        PathSolution sol;
        sol.x.resize(tones.size());
        sol.y.resize(tones.size());
        for (std::size_t i = 0; i < tones.size(); ++i)
        {
            const ToneChoice c = solve_tone(tones[i], lambda, grid_step, settings.refine_steps);
            sol.x[i] = c.x;
            sol.y[i] = c.y;
            sol.first += c.f1;
            sol.second += c.f2;
        }
        sol.first /= k;
        sol.second /= k;
        ++out.iterations;
        out.trace.push_back({lambda, sol.first, sol.second});
        if (!have_best || sol.value() > out.best.value())
        {
            out.best = sol;
            have_best = true;
        }
        return sol;
    };

    // Endpoint solutions certify optimality when the other term is slack.
    const PathSolution at_one = solve(1.0);
    if (at_one.first <= at_one.second)
        return out;
    const PathSolution at_zero = solve(0.0);
    if (at_zero.second <= at_zero.first)
        return out;

    double lo = 0.0;
    double hi = 1.0;
    std::size_t iters = 0;
    while (hi - lo > settings.lambda_tolerance && iters < settings.max_lambda_iters)
    {
        const double lambda = 0.5 * (lo + hi);
        const PathSolution s = solve(lambda);
        if (s.first > s.second)
            hi = lambda;
        else
            lo = lambda;
        ++iters;
    }
    out.converged = hi - lo <= settings.lambda_tolerance;
    return out;
}

BindingTerm binding_of(const CutTerms &t)
{
    if (std::abs(t.first - t.second) <= 1e-9)
        return BindingTerm::both;
    return t.first < t.second ? BindingTerm::first : BindingTerm::second;
}

std::vector<double> constant(std::size_t n, double v)
{
    return std::vector<double>(n, v);
}

OptimizationResult finish(OptimizationResult r, const CutTerms &terms)
{
    r.terms = terms;
    r.rate = terms.rate();
    r.binding_term = binding_of(terms);
    return r;
}

} // namespace

void OptimizerSettings::validate() const
{
    if (tone_grid_points < 2)
        throw std::invalid_argument("Optimizer needs at least 2 grid points per axis.");
    if (!(lambda_tolerance > 0.0))
        throw std::invalid_argument("Optimizer lambda tolerance must be positive.");
    if (max_lambda_iters < 1)
        throw std::invalid_argument("Optimizer needs at least one lambda iteration.");
}

std::string to_string(BindingTerm b)
{
    switch (b)
    {
    case BindingTerm::first:
        return "first";
    case BindingTerm::second:
        return "second";
    case BindingTerm::both:
        return "both";
    }
    return "unknown";
}

std::vector<double> align_phases(const RelayChannelInstance &inst)
{
    std::vector<double> theta(inst.tones(), 0.0);
    for (std::size_t i = 0; i < inst.tones(); ++i)
    {
        const cdouble prod = inst.g1[i] * std::conj(inst.g3[i]);
        if (prod != cdouble(0.0, 0.0))
            theta[i] = -std::arg(prod);
    }
    return theta;
}

SplitParams aligned_split(const RelayChannelInstance &inst, std::span<const double> a, std::span<const double> b)
{
    const std::size_t k = inst.tones();
    if (a.size() != k || b.size() != k)
        throw std::invalid_argument("Split magnitudes must have one entry per tone.");
    const std::vector<double> theta = align_phases(inst);
    SplitParams s = SplitParams::zeros(k);
    for (std::size_t i = 0; i < k; ++i)
    {
        if (!(a[i] >= 0.0 && a[i] <= 1.0 && b[i] >= 0.0 && b[i] <= 1.0))
            throw std::invalid_argument("Split magnitudes must lie in [0, 1].");
        s.alpha_bar[i] = std::polar(a[i], theta[i]);
        s.beta_bar[i] = std::polar(b[i], theta[i]);
    }
    return s;
}

OptimizationResult optimize_degraded(const RelayChannelInstance &inst, const PowerBudget &p,
                                     const OptimizerSettings &settings)
{
    inst.validate();
    p.validate();
    settings.validate();
    const std::size_t k = inst.tones();
    const auto grid = unit_grid(settings.tone_grid_points);

    // Partial decode-and-forward model restricted to b = 1.
    std::vector<ToneSearch> tones;
    tones.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        tones.push_back(build_search(make_model(inst, p, i, ToneModel::Kind::pdf), false, 1.0, grid));

    const LambdaSearch search = bisect_lambda(tones, settings);
    const auto ones = constant(k, 1.0);

    const auto evaluate = [&](const SplitParams &s) { return degraded_terms(inst, p, s); };

    OptimizationResult best;
    best.split = aligned_split(inst, constant(k, 0.0), ones);
    CutTerms best_terms = evaluate(best.split);
    for (const auto &a : {constant(k, 1.0), search.best.x})
    {
        SplitParams s = aligned_split(inst, a, ones);
        const CutTerms t = evaluate(s);
        if (t.rate() > best_terms.rate())
        {
            best.split = std::move(s);
            best_terms = t;
        }
    }
    best.iterations = search.iterations;
    best.converged = search.converged;
    best.trace = search.trace;
    return finish(std::move(best), best_terms);
}

OptimizationResult optimize_pdf(const RelayChannelInstance &inst, const PowerBudget &p,
                                const OptimizerSettings &settings)
{
    inst.validate();
    p.validate();
    settings.validate();
    const std::size_t k = inst.tones();
    const auto grid = unit_grid(settings.tone_grid_points);

    std::vector<ToneSearch> tones;
    tones.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        tones.push_back(build_search(make_model(inst, p, i, ToneModel::Kind::pdf), true, 0.0, grid));

    const LambdaSearch search = bisect_lambda(tones, settings);

    // Corners: b = 0 (no cooperation) first so that it wins ties, then full
    // decode-and-forward, then the lambda-path optimum.
    OptimizationResult best;
    best.split = aligned_split(inst, constant(k, 0.0), constant(k, 0.0));
    CutTerms best_terms = pdf_terms(inst, p, best.split);

    const OptimizationResult df = optimize_degraded(inst, p, settings);
    if (const CutTerms t = pdf_terms(inst, p, df.split); t.rate() > best_terms.rate())
    {
        best.split = df.split;
        best_terms = t;
    }
    {
        SplitParams s = aligned_split(inst, search.best.x, search.best.y);
        const CutTerms t = pdf_terms(inst, p, s);
        if (t.rate() > best_terms.rate())
        {
            best.split = std::move(s);
            best_terms = t;
        }
    }
    best.iterations = search.iterations;
    best.converged = search.converged && df.converged;
    best.trace = search.trace;
    return finish(std::move(best), best_terms);
}

OptimizationResult optimize_cutset(const RelayChannelInstance &inst, const PowerBudget &p,
                                   const OptimizerSettings &settings, const SplitParams *warm_start)
{
    inst.validate();
    p.validate();
    settings.validate();
    const std::size_t k = inst.tones();
    const auto grid = unit_grid(settings.tone_grid_points);

    std::vector<ToneSearch> tones;
    tones.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        tones.push_back(build_search(make_model(inst, p, i, ToneModel::Kind::cutset), false, 0.0, grid));

    const LambdaSearch search = bisect_lambda(tones, settings);

    const auto from_t = [&](const std::vector<double> &t) {
        std::vector<double> root(t.size());
        std::transform(t.begin(), t.end(), root.begin(), [](double v) { return std::sqrt(v); });
        return aligned_split(inst, root, root);
    };

    OptimizationResult best;
    best.split = from_t(constant(k, 0.0));
    CutTerms best_terms = cutset_terms(inst, p, best.split);
    for (const auto &t : {constant(k, 1.0), search.best.x})
    {
        SplitParams s = from_t(t);
        const CutTerms terms = cutset_terms(inst, p, s);
        if (terms.rate() > best_terms.rate())
        {
            best.split = std::move(s);
            best_terms = terms;
        }
    }
    if (warm_start)
    {
        warm_start->validate(k);
        if (const CutTerms terms = cutset_terms(inst, p, *warm_start); terms.rate() > best_terms.rate())
        {
            best.split = *warm_start;
            best_terms = terms;
        }
    }
    best.iterations = search.iterations;
    best.converged = search.converged;
    best.trace = search.trace;
    return finish(std::move(best), best_terms);
}

} // namespace uwbrelay
