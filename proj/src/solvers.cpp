#include "bislat/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bislat/rng.hpp"

namespace bislat {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Largest-eigenvalue estimate of a symmetric PSD matrix by power iteration,
// inflated by a safety factor for use as a covering-radius bound.
double lambda_max_bound(const std::vector<double>& P, std::size_t n) {
    std::vector<double> v(n, 1.0), w(n);
    double lam = 0.0;
    for (int it = 0; it < 12; ++it) {
        double nv = std::sqrt(dot(v, v));
        if (!(nv > 0.0)) break;
        for (double& q : v) q /= nv;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += P[i * n + j] * v[j];
            w[i] = s;
        }
        lam = dot(v, w);
        v = w;
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += std::abs(P[i * n + i]);
    if (!(lam > 0.0)) return trace;
    return std::min(1.5 * lam, trace);
}

}  // namespace

LinePoint golden_section_min(const std::function<double(double)>& f, double a,
                             double b, double xtol, long& evals) {
    constexpr double invphi = 0.6180339887498949;
    LinePoint best{a, f(a)};
    ++evals;
    double fb = f(b);
    ++evals;
    if (fb < best.value) best = {b, fb};
    if (!(b - a > xtol)) return best;

    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};
    for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++evals;
        if (fc < best.value) best = {c, fc};
        if (fd < best.value) best = {d, fd};
    }
    return best;
}

BoxMinResult minimize_convex_box(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const std::vector<std::vector<double>>& starts, const SolveOptions& opts) {
    const std::size_t n = lower.size();
    BoxMinResult res;
    res.value = std::numeric_limits<double>::infinity();

    auto clip = [&](std::vector<double> t) {
        for (std::size_t i = 0; i < n; ++i) t[i] = std::clamp(t[i], lower[i], upper[i]);
        return t;
    };

    std::vector<double> x;
    for (const auto& s0 : starts) {
        std::vector<double> s = clip(s0);
        double v = f(s);
        ++res.evals;
        if (v < res.value) {
            res.value = v;
            x = std::move(s);
        }
    }
    if (x.empty()) {
        x.assign(n, 0.0);
        res.value = f(x);
        ++res.evals;
    }

    Rng rng(opts.seed);
    auto gain_floor = [&]() { return 0.02 * opts.tol * std::max(1.0, std::abs(res.value)); };

    const int max_rounds = 6;
    for (int round = 0; round < max_rounds; ++round) {
        // Cyclic coordinate line searches.
        for (int sweep = 0; sweep < 40; ++sweep) {
            double sweep_gain = 0.0;
            for (std::size_t i = 0; i < n && res.evals < opts.budget; ++i) {
                if (!(upper[i] > lower[i])) continue;
                auto fi = [&](double s) {
                    std::vector<double> t = x;
                    t[i] = s;
                    return f(t);
                };
                double xtol = std::max(1e-10, 2e-8 * (upper[i] - lower[i]));
                LinePoint lp = golden_section_min(fi, lower[i], upper[i], xtol, res.evals);
                if (lp.value < res.value) {
                    sweep_gain += res.value - lp.value;
                    res.value = lp.value;
                    x[i] = lp.x;
                }
            }
            if (res.evals >= opts.budget) {
                res.point = x;
                return res;
            }
            if (sweep_gain <= 0.25 * gain_floor()) break;
        }

        // Direction polishing; escapes coordinatewise-minimal points of
        // nonsmooth objectives. Alternates random directions with pairwise
        // exchanges, which track ridges of max-type terms.
        long fails = 0;
        const long max_fails = static_cast<long>(6 * n + 20);
        double round_gain = 0.0;
        long tries = 0;
        while (fails < max_fails && res.evals < opts.budget) {
            std::vector<double> d(n, 0.0);
            bool nonzero = false;
            if (n >= 2 && tries++ % 3 == 0) {
                std::size_t i = rng.index(n);
                std::size_t j = rng.index(n);
                while (j == i) j = rng.index(n);
                if (upper[i] > lower[i] && upper[j] > lower[j]) {
                    d[i] = 1.0;
                    d[j] = -rng.uniform(0.25, 4.0);
                    nonzero = true;
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    d[i] = (upper[i] > lower[i]) ? rng.normal() : 0.0;
                    if (d[i] != 0.0) nonzero = true;
                }
            }
            if (!nonzero) {
                ++fails;
                continue;
            }
            double tlo = -std::numeric_limits<double>::infinity();
            double thi = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                if (d[i] == 0.0) continue;
                double r1 = (lower[i] - x[i]) / d[i];
                double r2 = (upper[i] - x[i]) / d[i];
                tlo = std::max(tlo, std::min(r1, r2));
                thi = std::min(thi, std::max(r1, r2));
            }
            if (!(thi - tlo > 1e-14)) {
                ++fails;
                continue;
            }
            auto ft = [&](double t) {
                std::vector<double> y(n);
                for (std::size_t i = 0; i < n; ++i)
                    y[i] = std::clamp(x[i] + t * d[i], lower[i], upper[i]);
                return f(y);
            };
            LinePoint lp = golden_section_min(ft, tlo, thi, 2e-8 * (thi - tlo), res.evals);
            double gain = res.value - lp.value;
            if (gain > 0.0) {
                for (std::size_t i = 0; i < n; ++i)
                    x[i] = std::clamp(x[i] + lp.x * d[i], lower[i], upper[i]);
                res.value = lp.value;
                round_gain += gain;
            }
            if (gain > gain_floor()) {
                fails = 0;
            } else {
                ++fails;
            }
        }
        if (res.evals >= opts.budget) {
            res.point = x;
            return res;
        }
        if (round_gain <= 2.0 * gain_floor()) {
            res.converged = true;
            break;
        }
    }
    res.point = x;
    res.converged = res.converged || res.evals < opts.budget;
    return res;
}

BoxMinResult ellipsoid_box_min(const SubgradFn& f, const std::vector<double>& lower,
                               const std::vector<double>& upper,
                               const std::vector<double>& warm_point, double warm_value,
                               const SolveOptions& opts, const FeasCutFn& feas) {
    const std::size_t n = lower.size();
    BoxMinResult res;
    res.point = warm_point;
    res.value = warm_value;
    if (n == 0) {
        res.converged = true;
        return res;
    }

    std::vector<double> z(n);
    double radius2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = 0.5 * (lower[i] + upper[i]);
        double h = 0.5 * (upper[i] - lower[i]);
        radius2 += h * h;
    }
    radius2 = std::max(radius2 * 1.0001, 1e-30);

    // P = radius^2 * I covers the box from its center.
    std::vector<double> P(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) P[i * n + i] = radius2;

    const double nd = static_cast<double>(n);
    std::vector<double> g(n), Pa(n);
    double lipschitz = 1e-12;
    int restarts = 0;

    const long max_iter = static_cast<long>(8.0 * nd * (nd + 1.0) * std::log(1e12)) + 96;
    for (long it = 0; it < max_iter && res.evals < opts.budget; ++it) {
        // Deep feasibility cut if the center left the box (or violates the
        // extra oracle), else a central objective cut.
        double alpha = 0.0;
        double violation = 0.0;
        int violated = -1;
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (z[i] < lower[i] - 1e-15) {
                violated = static_cast<int>(i);
                sign = -1.0;
                violation = lower[i] - z[i];
                break;
            }
            if (z[i] > upper[i] + 1e-15) {
                violated = static_cast<int>(i);
                sign = 1.0;
                violation = z[i] - upper[i];
                break;
            }
        }
        double objective_excess = -1.0;
        if (violated >= 0) {
            std::fill(g.begin(), g.end(), 0.0);
            g[static_cast<std::size_t>(violated)] = sign;
        } else if (feas && feas(z, g)) {
            // outer normal in g; depth unknown, use a central cut
        } else {
            std::vector<double> zc = z;
            for (std::size_t i = 0; i < n; ++i) zc[i] = std::clamp(zc[i], lower[i], upper[i]);
            double v = f.eval(zc, g);
            ++res.evals;
            if (v < res.value) {
                res.value = v;
                res.point = zc;
            }
            objective_excess = v - res.value;  // deep objective cut depth
            double gn = std::sqrt(dot(g, g));
            lipschitz = std::max(lipschitz, gn);
            if (gn < 1e-16) break;  // flat spot: cannot cut further
        }

        double aPa = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += P[i * n + j] * g[j];
            Pa[i] = s;
        }
        for (std::size_t i = 0; i < n; ++i) aPa += g[i] * Pa[i];
        if (!(aPa > 1e-300)) {
            // Rank-one downdates eventually destroy positive definiteness.
            // Restart as the covering sphere of the degenerate ellipsoid;
            // the optimum stays inside, conditioning is reset.
            double cover = lambda_max_bound(P, n);
            if (++restarts > 12 || !(cover > 1e-280)) break;
            std::fill(P.begin(), P.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) P[i * n + i] = cover;
            continue;
        }
        double denom = std::sqrt(aPa);
        if (violated >= 0) {
            if (violation / denom >= 1.0) {
                // The remaining ellipsoid lies outside the box, so no feasible
                // point better than the incumbent is left.
                res.converged = res.evals > 0;
                break;
            }
            alpha = std::min(violation / denom, 0.999);
        } else if (objective_excess > 0.0) {
            if (objective_excess / denom >= 1.0) {
                // No point of the remaining ellipsoid can beat the incumbent.
                res.converged = true;
                break;
            }
            alpha = std::min(objective_excess / denom, 0.97);
        }

        if (n == 1) {
            z[0] -= (1.0 + alpha) * 0.5 * Pa[0] / denom;
            P[0] *= (1.0 - alpha) * (1.0 - alpha) * 0.25;
        } else {
            double tau = (1.0 + nd * alpha) / (nd + 1.0);
            double sigma = 2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha));
            double delta = nd * nd * (1.0 - alpha * alpha) / (nd * nd - 1.0);
            for (std::size_t i = 0; i < n; ++i) z[i] -= tau * Pa[i] / denom;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    double v = delta * (0.5 * (P[i * n + j] + P[j * n + i]) -
                                        sigma * Pa[i] * Pa[j] / aPa);
                    P[i * n + j] = v;
                    P[j * n + i] = v;
                }
            }
        }

        double cover = lambda_max_bound(P, n);
        if (!(cover >= 0.0)) break;
        double reach = lipschitz * std::sqrt(cover);
        if (reach <= opts.tol * std::max(1.0, std::abs(res.value))) {
            res.converged = true;
            break;
        }
    }
    return res;
}

AscentResult maximize_linear_on_ball(
    const std::vector<double>& c,
    const std::function<double(const std::vector<double>&)>& gauge,
    const std::vector<std::vector<double>>& starts, const SolveOptions& opts) {
    const std::size_t m = c.size();
    AscentResult res;
    res.value = 0.0;

    double cnorm = std::sqrt(dot(c, c));
    if (cnorm == 0.0 || m == 0) {
        res.converged = true;
        res.point.assign(m, 0.0);
        return res;
    }
    std::vector<double> cdir(m);
    for (std::size_t i = 0; i < m; ++i) cdir[i] = c[i] / cnorm;

    // Normalize onto the gauge sphere; one gauge evaluation per call.
    auto normalize = [&](std::vector<double> y) -> std::vector<double> {
        for (double& v : y) v = std::max(v, 0.0);
        double g = gauge(y);
        ++res.evals;
        if (!(g > 0.0) || !std::isfinite(g)) return {};
        for (double& v : y) v /= g;
        return y;
    };

    const long per_start = std::max<long>(500, opts.budget / std::max<std::size_t>(1, starts.size()));
    for (const auto& s0 : starts) {
        if (res.evals >= opts.budget) break;
        std::vector<double> x = normalize(s0);
        if (x.empty()) continue;
        double v = dot(c, x);
        long spent_at_entry = res.evals;

        for (int anneal = 0; anneal < 2; ++anneal) {
            double eta = anneal == 0 ? 0.5 : 1e-3;
            while (eta > 1e-13 && (res.evals - spent_at_entry) < per_start) {
                bool improved = false;
                // step along the objective direction
                {
                    std::vector<double> y = x;
                    for (std::size_t i = 0; i < m; ++i) y[i] += eta * cdir[i];
                    y = normalize(std::move(y));
                    if (!y.empty()) {
                        double vy = dot(c, y);
                        if (vy > v) {
                            x = std::move(y);
                            v = vy;
                            improved = true;
                        }
                    }
                }
                // coordinate bumps, both signs
                double bump = eta * std::max(1e-12, *std::max_element(x.begin(), x.end()));
                for (std::size_t i = 0; i < m && (res.evals - spent_at_entry) < per_start; ++i) {
                    for (double sgn : {1.0, -1.0}) {
                        std::vector<double> y = x;
                        y[i] += sgn * bump;
                        if (y[i] < 0.0) y[i] = 0.0;
                        y = normalize(std::move(y));
                        if (y.empty()) continue;
                        double vy = dot(c, y);
                        if (vy > v) {
                            x = std::move(y);
                            v = vy;
                            improved = true;
                        }
                    }
                }
                if (!improved) eta *= 0.5;
            }
        }
        if (v > res.value) {
            res.value = v;
            res.point = x;
            res.converged = true;
        }
    }
    if (res.point.empty()) res.point.assign(m, 0.0);
    return res;
}

}  // namespace bislat
