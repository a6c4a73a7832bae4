#include "stin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stin/error.hpp"

namespace stin {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
    double a;
    double b;
    bool splittable;
};

// One 21-point panel for all n components. Writes value and QUADPACK error.
void qk21(FunctionRef<void(double, double*)> f, int n, double a, double b, double* value,
          double* error, std::vector<double>& scratch) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    // scratch layout: 21 rows of n values
    scratch.resize(static_cast<std::size_t>(21 * n));
    double* fc = scratch.data();
    f(center, fc);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        f(center - dx, fc + (1 + 2 * j) * n);
        f(center + dx, fc + (2 + 2 * j) * n);
    }

    for (int c = 0; c < n; ++c) {
        const double f0 = fc[c];
        double resk = wgk[10] * f0;
        double resg = 0.0;
        double resabs = std::abs(resk);
        for (int j = 0; j < 10; ++j) {
            const double f1 = fc[(1 + 2 * j) * n + c];
            const double f2 = fc[(2 + 2 * j) * n + c];
            resk += wgk[j] * (f1 + f2);
            resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
        }
        const double reskh = 0.5 * resk;
        double resasc = wgk[10] * std::abs(f0 - reskh);
        for (int j = 0; j < 10; ++j) {
            resasc += wgk[j] * (std::abs(fc[(1 + 2 * j) * n + c] - reskh) +
                                std::abs(fc[(2 + 2 * j) * n + c] - reskh));
        }
        const double result = resk * half;
        resabs *= abs_half;
        resasc *= abs_half;
        double err = std::abs((resk - resg) * half);
        if (resasc != 0.0 && err != 0.0) {
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        }
        if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
        value[c] = result;
        error[c] = err;
    }
}

}  // namespace

VectorQuadResult integrate_vector(FunctionRef<void(double, double*)> f, int n, double a,
                                  double b, const QuadratureSpec& spec,
                                  std::span<const double> breakpoints) {
    VectorQuadResult out;
    out.values.assign(static_cast<std::size_t>(n), 0.0);
    out.errors.assign(static_cast<std::size_t>(n), 0.0);
    if (!(b > a) || n <= 0) return out;

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> panels;
    std::vector<double> vals;  // panels.size() * n
    std::vector<double> errs;
    std::vector<double> scratch;
    const auto nn = static_cast<std::size_t>(n);

    auto add_panel = [&](double pa, double pb) {
        panels.push_back({pa, pb, true});
        vals.resize(panels.size() * nn);
        errs.resize(panels.size() * nn);
        qk21(f, n, pa, pb, vals.data() + (panels.size() - 1) * nn,
             errs.data() + (panels.size() - 1) * nn, scratch);
        out.evaluations += 21;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) add_panel(cuts[i], cuts[i + 1]);

    std::vector<double> tol(nn);
    const int budget = std::max(spec.max_subdivisions, static_cast<int>(panels.size()));
    for (;;) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        std::fill(out.errors.begin(), out.errors.end(), 0.0);
        for (std::size_t p = 0; p < panels.size(); ++p) {
            for (std::size_t c = 0; c < nn; ++c) {
                out.values[c] += vals[p * nn + c];
                out.errors[c] += errs[p * nn + c];
            }
        }
        out.worst_ratio = 0.0;
        for (std::size_t c = 0; c < nn; ++c) {
            tol[c] = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.values[c]));
            out.worst_ratio = std::max(out.worst_ratio, out.errors[c] / tol[c]);
        }
        if (out.worst_ratio <= 1.0) break;

        // Bisect the panel contributing the most tolerance-scaled error.
        std::size_t worst = panels.size();
        double worst_key = -1.0;
        for (std::size_t p = 0; p < panels.size(); ++p) {
            if (!panels[p].splittable) continue;
            double key = 0.0;
            for (std::size_t c = 0; c < nn; ++c) key = std::max(key, errs[p * nn + c] / tol[c]);
            if (key > worst_key) {
                worst_key = key;
                worst = p;
            }
        }
        if (worst == panels.size() || static_cast<int>(panels.size()) >= budget) {
            out.converged = false;
            break;
        }
        const Panel pw = panels[worst];
        const double mid = 0.5 * (pw.a + pw.b);
        if (!(mid > pw.a && mid < pw.b) ||
            (pw.b - pw.a) < 1e3 * kEps * std::max(std::abs(pw.a), std::abs(pw.b))) {
            panels[worst].splittable = false;
            continue;
        }
        // Replace the worst panel by its left half, append the right half.
        std::vector<double> lv(nn), le(nn);
        qk21(f, n, pw.a, mid, lv.data(), le.data(), scratch);
        out.evaluations += 21;
        panels[worst] = {pw.a, mid, true};
        std::copy(lv.begin(), lv.end(), vals.begin() + static_cast<std::ptrdiff_t>(worst * nn));
        std::copy(le.begin(), le.end(), errs.begin() + static_cast<std::ptrdiff_t>(worst * nn));
        add_panel(mid, pw.b);
    }

    if (!out.converged && spec.throw_on_failure) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not converge: error/tolerance "
            << out.worst_ratio << " after " << panels.size() << " panels";
        throw NonConvergence(msg.str(), out.values[0], out.errors[0]);
    }
    return out;
}

QuadResult integrate_1d(FunctionRef<double(double)> f, double a, double b,
                        const QuadratureSpec& spec, std::span<const double> breakpoints) {
    auto g = [&f](double x, double* out) { out[0] = f(x); };
    const VectorQuadResult r = integrate_vector(g, 1, a, b, spec, breakpoints);
    return {r.values[0], r.errors[0], r.evaluations, r.converged};
}

}  // namespace stin
