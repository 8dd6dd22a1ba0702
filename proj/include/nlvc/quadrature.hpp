#pragma once

// 1-D quadrature toolbox used throughout: a globally adaptive Gauss-Kronrod
// (G7,K15) rule, substitution helpers for algebraic endpoint singularities and
// semi-infinite ranges, and a block-summed evaluator for the oscillatory
// power tail  Phi(x; a) = \int_x^inf u^{-1-a} e^{iu} du.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "nlvc/common.hpp"

namespace nlvc {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// Positive K15 abscissae and weights; the Gauss subset sits at odd indices.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace detail

// One (G7, K15) pass over [a, b]. kronrod15 is the integral estimate, the
// gap to gauss7 the error indicator.
template <typename T, typename F>
void gk15_eval(const F& f, double a, double b, T& kronrod15, T& gauss7, double& resabs) {
    using detail::kGaussW;
    using detail::kKronrodW;
    using detail::kKronrodX;
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    T k{};
    T g{};
    resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = hw * kKronrodX[i];
        const T lo = f(c - dx);
        const T hi = f(c + dx);
        k = k + kKronrodW[i] * (lo + hi);
        resabs += kKronrodW[i] * (std::abs(lo) + std::abs(hi));
        if (i % 2 == 1) g = g + kGaussW[i / 2] * (lo + hi);
    }
    const T mid = f(c);
    k = k + kKronrodW[7] * mid;
    g = g + kGaussW[3] * mid;
    resabs += kKronrodW[7] * std::abs(mid);
    kronrod15 = hw * k;
    gauss7 = hw * g;
    resabs *= std::abs(hw);
}

// Globally adaptive integration of f over [a, b].
template <typename T = double, typename F>
QuadResult adaptive_integrate_t(const F& f, double a, double b, T& out,
                                double abs_tol = 1e-12, double rel_tol = 1e-10,
                                int max_intervals = 4000) {
    struct Interval {
        double a, b, err;
        T val;
        bool operator<(const Interval& o) const { return err < o.err; }
    };
    QuadResult res;
    if (a == b) {
        out = T{};
        return res;
    }
    std::priority_queue<Interval> q;
    T total{};
    double err_total = 0.0;
    auto push = [&](double lo, double hi) {
        T k, g;
        double resabs = 0.0;
        gk15_eval<T>(f, lo, hi, k, g, resabs);
        res.evaluations += 15;
        const double e = std::abs(k - g);
        q.push({lo, hi, e, k});
        total = total + k;
        err_total += e;
    };
    push(a, b);
    for (int n = 1; n < max_intervals; ++n) {
        const double goal = std::max(abs_tol, rel_tol * std::abs(total));
        if (err_total <= goal) break;
        Interval worst = q.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) break;  // not splittable in double
        q.pop();
        total = total - worst.val;
        err_total -= worst.err;
        push(worst.a, mid);
        push(mid, worst.b);
    }
    out = total;
    res.error = err_total;
    res.converged = err_total <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

inline QuadResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                                     int max_intervals = 4000) {
    double out = 0.0;
    QuadResult r = adaptive_integrate_t<double>(f, a, b, out, abs_tol, rel_tol, max_intervals);
    r.value = out;
    return r;
}

// Integrate f over [a, b] when f behaves like (r - a)^{-sigma} near a with
// 0 <= sigma < 1. Substituting r = a + t^p with p = 1/(1 - sigma) removes the
// singularity exactly for pure powers and tames it otherwise.
inline QuadResult integrate_singular_lower(const std::function<double(double)>& f, double a,
                                           double b, double sigma, double abs_tol = 1e-12,
                                           double rel_tol = 1e-10) {
    if (sigma <= 0.0) return adaptive_integrate(f, a, b, abs_tol, rel_tol);
    if (sigma >= 1.0) {
        QuadResult r;
        r.converged = false;
        r.error = HUGE_VAL;
        return r;
    }
    const double p = 1.0 / (1.0 - sigma);
    const double tb = std::pow(b - a, 1.0 / p);
    auto g = [&](double t) {
        const double r = a + std::pow(t, p);
        return f(r) * p * std::pow(t, p - 1.0);
    };
    return adaptive_integrate(g, 0.0, tb, abs_tol, rel_tol);
}

// Integrate a decaying, non-oscillatory f over [a, inf) via r = a + t/(1-t).
inline QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                          double abs_tol = 1e-12, double rel_tol = 1e-10) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double r = a + t / om;
        return f(r) / (om * om);
    };
    return adaptive_integrate(g, 0.0, 1.0, abs_tol, rel_tol, 8000);
}

// Phi(x; alpha) = \int_x^inf u^{-1-alpha} e^{iu} du  for x > 0, alpha > 0.
//
// For x >= 1 the integral is summed over half-period blocks of length pi with
// repeated averaging of the partial sums (the block sums alternate in sign
// asymptotically, so averaging accelerates convergence to well below 1e-12).
// For x < 1 the smooth piece over [x, 1] is split off with the closed-form
// antiderivative of u^{-1-alpha} absorbing the singular part.
inline std::complex<double> osc_power_tail(double x, double alpha, double tol = 1e-13) {
    using cd = std::complex<double>;
    if (!(x > 0.0)) throw std::invalid_argument("osc_power_tail: x must be positive");
    if (x < 1.0) {
        // \int_x^1 u^{-1-a} e^{iu} du = \int_x^1 u^{-1-a} du + \int_x^1 u^{-1-a}(e^{iu}-1) du
        const double head = (std::pow(x, -alpha) - 1.0) / alpha;
        double re = 0.0, im = 0.0;
        auto fre = [&](double u) { return std::pow(u, -1.0 - alpha) * (std::cos(u) - 1.0); };
        auto fim = [&](double u) { return std::pow(u, -1.0 - alpha) * std::sin(u); };
        // (e^{iu} - 1) ~ i u kills one power: effective singularity exponent alpha.
        re = integrate_singular_lower(fre, x, 1.0, std::max(0.0, alpha), 0.1 * tol, 1e-13).value;
        im = integrate_singular_lower(fim, x, 1.0, std::max(0.0, alpha), 0.1 * tol, 1e-13).value;
        return cd(head + re, im) + osc_power_tail(1.0, alpha, tol);
    }
    auto block = [&](double lo, double hi) {
        cd k, g;
        double resabs = 0.0;
        auto f = [&](double u) { return std::pow(u, -1.0 - alpha) * cd(std::cos(u), std::sin(u)); };
        gk15_eval<cd>(f, lo, hi, k, g, resabs);
        return k;
    };
    constexpr int kMaxBlocks = 96;
    std::vector<cd> partial;
    partial.reserve(kMaxBlocks);
    cd acc(0.0, 0.0);
    for (int kb = 0; kb < kMaxBlocks; ++kb) {
        const double lo = x + kb * kPi;
        const double hi = lo + kPi;
        acc += block(lo, hi);
        partial.push_back(acc);
        if (kb >= 8 && kb % 4 == 0) {
            // Repeated averaging of the tail of the partial-sum sequence.
            std::vector<cd> t(partial.end() - 9, partial.end());
            while (t.size() > 1) {
                for (size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
                t.pop_back();
            }
            std::vector<cd> t2(partial.end() - 8, partial.end());
            while (t2.size() > 1) {
                for (size_t i = 0; i + 1 < t2.size(); ++i) t2[i] = 0.5 * (t2[i] + t2[i + 1]);
                t2.pop_back();
            }
            if (std::abs(t[0] - t2[0]) < tol) return t[0];
        }
    }
    std::vector<cd> t(partial.end() - 12, partial.end());
    while (t.size() > 1) {
        for (size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
        t.pop_back();
    }
    return t[0];
}

// \int_R^inf r^{-1-alpha} (cos(b r) - 1) dr and \int_R^inf r^{-1-alpha} sin(b r) dr
// for R > 0, alpha > 0, any real b; used for power-law kernel tails.
inline double power_tail_cos_minus_one(double R, double alpha, double b) {
    if (b == 0.0) return 0.0;
    const double ab = std::abs(b);
    const std::complex<double> phi = osc_power_tail(ab * R, alpha);
    return std::pow(ab, alpha) * phi.real() - std::pow(R, -alpha) / alpha;
}

inline double power_tail_sin(double R, double alpha, double b) {
    if (b == 0.0) return 0.0;
    const double ab = std::abs(b);
    const std::complex<double> phi = osc_power_tail(ab * R, alpha);
    const double s = std::pow(ab, alpha) * phi.imag();
    return b > 0.0 ? s : -s;
}

}  // namespace nlvc
