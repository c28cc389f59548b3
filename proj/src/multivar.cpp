#include "rdpf/multivar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rdpf/errors.hpp"

namespace rdpf {

namespace {

double stagewise_rate(PerceptionMetric metric, double eigval, double dist, double perc) {
    return scalar_rdpf(metric, eigval, dist, perc).rate;
}

double lagrangian_value(PerceptionMetric metric, const Vec& eigvals, const Vec& dist,
                        const Vec& perc, LagrangePair lagrange) {
    double value = 0.0;
    for (std::size_t i = 0; i < eigvals.size(); ++i) {
        value += stagewise_rate(metric, eigvals[i], dist[i], perc[i]);
        value += lagrange.s1 * dist[i];
        value += lagrange.s2 * perception_compose_term(metric, perc[i]);
    }
    return value;
}

// dR/dP + s2 * h'(P), rescaled by (2 - P) for squared Hellinger so the factor
// stays bounded near the metric ceiling. Shares its sign with the stationarity
// condition on the transformed coordinate.
double stationarity_perc(PerceptionMetric metric, double eigval, double dist, double perc,
                         double s2) {
    double deriv = drate_dperception(metric, eigval, dist, perc);
    if (metric == PerceptionMetric::hellinger_sq) return (2.0 - perc) * deriv + s2;
    return deriv + s2;
}

double solve_perc_coordinate(PerceptionMetric metric, double eigval, double dist, double s2,
                             bool* at_boundary) {
    *at_boundary = false;

    // The both-active region in P is empty once the distortion budget covers
    // twice the component variance; the stationarity function is then the
    // constant s2 and we report the region boundary instead of a root.
    if (dist >= 2.0 * eigval) {
        *at_boundary = true;
        return perception_boundary(metric, eigval, dist);
    }

    double hi = perception_boundary(metric, eigval, dist);
    if (std::isinf(hi)) {
        if (s2 <= 0.0)
            throw NumericalError("solve_subproblem_perc: unbounded metric with s2=0 at dist=lambda; "
                                 "no finite minimizer exists");
        hi = 1.0;
        int grow = 0;
        while (stationarity_perc(metric, eigval, dist, hi, s2) <= 0.0) {
            hi *= 2.0;
            if (++grow > 60)
                throw NumericalError("solve_subproblem_perc: bracket growth failed (lambda=" +
                                     std::to_string(eigval) + ", dist=" + std::to_string(dist) + ")");
        }
    } else if (metric == PerceptionMetric::hellinger_sq) {
        hi = std::min(hi, 2.0 - 1e-9);
    }

    if (s2 <= 0.0) return hi;  // unpriced perception: smallest level with the RDF rate

    // dR/dP -> -inf as P -> 0 guarantees a sign change on (0, hi].
    double lo = 0.5 * hi;
    int shrink = 0;
    while (stationarity_perc(metric, eigval, dist, lo, s2) >= 0.0) {
        lo *= 0.5;
        if (++shrink > 2000)
            throw NumericalError("solve_subproblem_perc: no negative bracket endpoint found "
                                 "(lambda=" + std::to_string(eigval) + ", dist=" + std::to_string(dist) +
                                 ", s2=" + std::to_string(s2) + ")");
    }

    // Residual target; scaled up for extreme prices where T itself carries s2
    // and double precision cannot resolve 1e-9 absolutely.
    const double tol = 1e-9 * std::max(1.0, s2);
    double a = lo, b = hi;
    double root = 0.5 * (a + b);
    double f_root = stationarity_perc(metric, eigval, dist, root, s2);
    for (int i = 0; i < 200; ++i) {
        root = 0.5 * (a + b);
        f_root = stationarity_perc(metric, eigval, dist, root, s2);
        if ((b - a) <= 1e-12 && std::abs(f_root) <= tol) break;
        if (f_root < 0.0)
            a = root;
        else
            b = root;
    }

    // Secant polish; bisection alone can leave |T| above target where the
    // stationarity function is steep.
    double x0 = a, f0 = stationarity_perc(metric, eigval, dist, a, s2);
    double x1 = b, f1 = stationarity_perc(metric, eigval, dist, b, s2);
    for (int i = 0; i < 40 && std::abs(f_root) > 0.1 * tol; ++i) {
        if (std::abs(f1 - f0) < 1e-300) break;
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 > 0.0) || x2 >= hi || std::isnan(x2)) break;
        double f2 = stationarity_perc(metric, eigval, dist, x2, s2);
        x0 = x1; f0 = f1; x1 = x2; f1 = f2;
        if (std::abs(f2) < std::abs(f_root)) { root = x2; f_root = f2; }
        if (std::abs(f2) <= 0.1 * tol) break;
    }

    if (std::abs(f_root) > tol)
        throw NumericalError("solve_subproblem_perc: stationarity residual " + std::to_string(f_root) +
                             " above tolerance (lambda=" + std::to_string(eigval) + ", dist=" +
                             std::to_string(dist) + ", s2=" + std::to_string(s2) + ")");
    return root;
}

struct LinearFit {
    double slope;
    double r2;
};

LinearFit fit_line(const Vec& x, const Vec& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    double slope = vxx > 0.0 ? vxy / vxx : 0.0;
    double r2 = (vxx > 0.0 && vyy > 0.0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return {slope, r2};
}

}  // namespace

double hs_perception_transform(double perc) {
    if (!(perc >= 0.0) || perc >= 2.0)
        throw std::domain_error("hs_perception_transform: level must lie in [0, 2)");
    return -std::log1p(-0.5 * perc);
}

double hs_perception_transform_inv(double transformed) {
    if (!(transformed >= 0.0))
        throw std::domain_error("hs_perception_transform_inv: level must be >= 0");
    return -2.0 * std::expm1(-transformed);
}

double perception_compose_term(PerceptionMetric metric, double perc) {
    return metric == PerceptionMetric::hellinger_sq ? hs_perception_transform(perc) : perc;
}

double perception_compose_term_dperc(PerceptionMetric metric, double perc) {
    return metric == PerceptionMetric::hellinger_sq ? 1.0 / (2.0 - perc) : 1.0;
}

double perception_total(PerceptionMetric metric, const Vec& perc_alloc) {
    double sum = 0.0;
    for (double p : perc_alloc) sum += perception_compose_term(metric, p);
    return metric == PerceptionMetric::hellinger_sq ? hs_perception_transform_inv(sum) : sum;
}

Vec solve_subproblem_dist(PerceptionMetric metric, const Vec& eigvals, const Vec& perc_alloc,
                          double s1) {
    if (!(s1 > 0.0)) throw std::domain_error("solve_subproblem_dist: s1 must be > 0");
    if (eigvals.size() != perc_alloc.size())
        throw std::invalid_argument("solve_subproblem_dist: length mismatch");
    const double half_inv = 0.5 / s1;
    Vec dist(eigvals.size());
    for (std::size_t i = 0; i < eigvals.size(); ++i) {
        double lam = eigvals[i];
        double v = recon_variance_floor(metric, lam, perc_alloc[i]);
        if (half_inv <= lam - v) {
            dist[i] = half_inv;  // distortion-only stationary point, perception slack
        } else {
            // Both-active stationary point, written so tiny s1 keeps full precision.
            double root = std::sqrt(4.0 * lam * v + half_inv * half_inv);
            dist[i] = lam + v - 4.0 * lam * v / (half_inv + root);
        }
    }
    return dist;
}

SubproblemPercResult solve_subproblem_perc(PerceptionMetric metric, const Vec& eigvals,
                                           const Vec& dist_alloc, double s2) {
    if (!(s2 >= 0.0)) throw std::domain_error("solve_subproblem_perc: s2 must be >= 0");
    if (eigvals.size() != dist_alloc.size())
        throw std::invalid_argument("solve_subproblem_perc: length mismatch");
    SubproblemPercResult result;
    result.perc.resize(eigvals.size());
    result.at_boundary.resize(eigvals.size());
    for (std::size_t i = 0; i < eigvals.size(); ++i) {
        if (!(dist_alloc[i] > 0.0))
            throw std::domain_error("solve_subproblem_perc: distortions must be > 0");
        bool flag = false;
        result.perc[i] = solve_perc_coordinate(metric, eigvals[i], dist_alloc[i], s2, &flag);
        result.at_boundary[i] = flag;
    }
    return result;
}

MultiRdpSolution alternating_minimization(const GaussianSource& source, PerceptionMetric metric,
                                          LagrangePair lagrange, double epsilon, int max_iters,
                                          const AllocationState* init) {
    if (!(lagrange.s1 > 0.0)) throw std::domain_error("alternating_minimization: s1 must be > 0");
    if (!(lagrange.s2 >= 0.0)) throw std::domain_error("alternating_minimization: s2 must be >= 0");
    if (!(epsilon > 0.0)) throw std::domain_error("alternating_minimization: epsilon must be > 0");
    if (max_iters < 1) throw std::domain_error("alternating_minimization: max_iters must be >= 1");

    const Vec& eigvals = source.eigvals();
    const std::size_t n = eigvals.size();
    Vec dist_prev(n, 0.0), perc_prev(n, 0.0);
    if (init != nullptr) {
        if (init->dist.size() != n || init->perc.size() != n)
            throw std::invalid_argument("alternating_minimization: init length mismatch");
        dist_prev = init->dist;
        perc_prev = init->perc;
    }

    MultiRdpSolution sol;
    AlgorithmTrace& trace = sol.trace;
    Vec dist = dist_prev, perc = perc_prev;
    std::vector<bool> at_boundary(n, false);

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        dist = solve_subproblem_dist(metric, eigvals, perc_prev, lagrange.s1);
        trace.lagrangian_values.push_back(lagrangian_value(metric, eigvals, dist, perc_prev, lagrange));

        SubproblemPercResult pr = solve_subproblem_perc(metric, eigvals, dist, lagrange.s2);
        perc = pr.perc;
        at_boundary = pr.at_boundary;
        trace.lagrangian_values.push_back(lagrangian_value(metric, eigvals, dist, perc, lagrange));

        double gap_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            gap_sq += (dist[i] - dist_prev[i]) * (dist[i] - dist_prev[i]);
            gap_sq += (perc[i] - perc_prev[i]) * (perc[i] - perc_prev[i]);
        }
        double gap = std::sqrt(gap_sq);
        trace.gaps.push_back(gap);
        dist_prev = dist;
        perc_prev = perc;
        if (gap <= epsilon) {
            trace.converged = true;
            ++iter;
            break;
        }
    }
    trace.iterations_used = iter;

    sol.allocation = {dist, perc, iter};
    sol.perc_at_boundary = at_boundary;
    sol.total_dist = 0.0;
    sol.rate = 0.0;
    Vec gains(n), noise_vars(n);
    for (std::size_t i = 0; i < n; ++i) {
        ScalarRdpSolution s = scalar_rdpf(metric, eigvals[i], dist[i], perc[i]);
        sol.rate += s.rate;
        sol.total_dist += dist[i];
        gains[i] = s.realization.gain;
        noise_vars[i] = std::max(s.realization.noise_var, 0.0);
    }
    sol.total_perc = perception_total(metric, perc);
    sol.realization = assemble_realization(source, gains, noise_vars);
    return sol;
}

double default_s2_floor(PerceptionMetric metric) {
    switch (metric) {
        case PerceptionMetric::kl_direct:
        case PerceptionMetric::kl_reverse:
        case PerceptionMetric::gjs:
            return 1e-3;
        default:
            return 0.0;
    }
}

Vec perfect_realism_allocation(const Vec& eigvals, double s1) {
    if (!(s1 >= 0.0)) throw std::domain_error("perfect_realism_allocation: s1 must be >= 0");
    Vec dist(eigvals.size());
    for (std::size_t i = 0; i < eigvals.size(); ++i) {
        double lam = eigvals[i];
        if (s1 == 0.0) {
            dist[i] = 2.0 * lam;
            continue;
        }
        double half_inv = 0.5 / s1;
        double root = std::sqrt(4.0 * lam * lam + half_inv * half_inv);
        dist[i] = 2.0 * lam - 4.0 * lam * lam / (half_inv + root);
    }
    return dist;
}

WaterFillResult water_filling(const Vec& eigvals, double s1) {
    if (!(s1 > 0.0)) throw std::domain_error("water_filling: s1 must be > 0");
    double level = 0.5 / s1;
    WaterFillResult result;
    result.dist.resize(eigvals.size());
    result.rate = 0.0;
    for (std::size_t i = 0; i < eigvals.size(); ++i) {
        result.dist[i] = std::min(level, eigvals[i]);
        result.rate += 0.5 * std::log(eigvals[i] / result.dist[i]);
    }
    return result;
}

RateEstimates measure_convergence_rate(const AlgorithmTrace& trace) {
    Vec gaps;
    for (double g : trace.gaps) {
        if (g < 1e-13) break;  // floating-point floor reached; later gaps are noise
        gaps.push_back(g);
    }
    if (gaps.size() < 5)
        throw std::invalid_argument("measure_convergence_rate: need at least 5 usable gaps");

    RateEstimates est;
    est.gap_ratios.resize(gaps.size() - 1);
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) est.gap_ratios[i] = gaps[i + 1] / gaps[i];

    Vec iteration_index(gaps.size()), log_index(gaps.size()), log_gap(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        iteration_index[i] = static_cast<double>(i + 1);
        log_index[i] = std::log(iteration_index[i]);
        log_gap[i] = std::log(gaps[i]);
    }
    LinearFit exp_fit = fit_line(iteration_index, log_gap);
    LinearFit pow_fit = fit_line(log_index, log_gap);
    est.geometric_factor = std::exp(exp_fit.slope);
    est.loglog_slope = pow_fit.slope;
    est.exp_fit_r2 = exp_fit.r2;
    est.power_fit_r2 = pow_fit.r2;
    est.classification = (exp_fit.r2 >= pow_fit.r2 && exp_fit.slope < 0.0)
                             ? ConvergenceClass::linear
                             : ConvergenceClass::sublinear;
    return est;
}

}  // namespace rdpf
