#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "tailsitter/errors.hpp"
#include "tailsitter/observer.hpp"

namespace tailsitter {

namespace {

struct Response {
    std::complex<double> g1;
    std::complex<double> g2;
};

Response evaluate(const LinearizedObserver& lin, double omega) {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> den = s * s + lin.c1 * s + lin.c2;
    return {(lin.c1 * s + lin.c2) / den, lin.c2 * s / den};
}

double to_db(std::complex<double> z) { return 20.0 * std::log10(std::abs(z)); }
double to_deg(std::complex<double> z) { return std::arg(z) * 180.0 / std::numbers::pi; }

}  // namespace

DescribingGains describing_function_gains(double A0) {
    if (!(A0 > 0.0)) throw DomainError("describing-function amplitude must be positive");
    return {kDelta1 / std::sqrt(A0), 4.0 / (A0 * std::numbers::pi)};
}

double delta1_quadrature() {
    auto f = [](double u) { return std::pow(std::abs(std::sin(u)), 1.5); };
    return 2.0 / std::numbers::pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, 15, 1e-14);
}

LinearizedObserver linearize_observer(double A0, double k1, double k2) {
    if (!(A0 > 0.0 && k1 > 0.0 && k2 > 0.0)) throw DomainError("A0, k1 and k2 must be positive");
    const DescribingGains n = describing_function_gains(A0);
    return {n.N1 * k1, n.N2 * k2};
}

std::vector<BodePoint> bode_response(double A0, double k1, double k2, const std::vector<double>& freq_grid) {
    const LinearizedObserver lin = linearize_observer(A0, k1, k2);
    std::vector<BodePoint> out;
    out.reserve(freq_grid.size());
    for (double w : freq_grid) {
        const Response r = evaluate(lin, w);
        out.push_back({w, to_db(r.g1), to_deg(r.g1), to_db(r.g2), to_deg(r.g2)});
    }
    return out;
}

double g1_cutoff_frequency(double A0, double k1, double k2) {
    const LinearizedObserver lin = linearize_observer(A0, k1, k2);
    const double target = std::pow(10.0, -3.0 / 20.0);
    auto below = [&](double w) { return std::abs(evaluate(lin, w).g1) < target; };
    double lo = 1e-6;
    double hi = lo;
    while (!below(hi)) {
        lo = hi;
        hi *= 1.05;
        if (hi > 1e12) throw DomainError("no -3 dB crossing found");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (below(mid)) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace tailsitter
