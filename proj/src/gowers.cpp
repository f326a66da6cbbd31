#include "petlab/gowers.hpp"

#include "petlab/fft.hpp"
#include "petlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>

namespace petlab {

namespace {

Rat power_serial(const GridFunction& f, int d) {
    if (f.empty()) return Rat(0);
    if (d == 1) {
        Rat s = f.sum();
        return s * s;
    }
    long long span = f.hi() - f.lo();
    Rat total = 0;
    for (long long h = -span; h <= span; ++h) total += power_serial(delta(f, h), d - 1);
    return total;
}

double root_of(const Rat& power, int degree) {
    return std::pow(to_double(power), std::ldexp(1.0, -degree));
}

}  // namespace

double NormValue::real_root() const { return root_of(power, degree); }

GridFunction delta(const GridFunction& f, long long h) { return f * f.shifted(-h); }

NormValue gowers_norm(const GridFunction& f, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    NormValue out;
    out.degree = d;
    out.power = 0;
    if (f.empty()) return out;
    if (d == 1) {
        Rat s = f.sum();
        out.power = s * s;
        return out;
    }
    long long span = f.hi() - f.lo();
    long long count = 2 * span + 1;
    std::vector<Rat> per_h(static_cast<std::size_t>(count));
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
#endif
    for (long long idx = 0; idx < count; ++idx)
        per_h[static_cast<std::size_t>(idx)] = power_serial(delta(f, idx - span), d - 1);
    Rat total = 0;
    for (const auto& v : per_h) total += v;
    out.power = total;
    return out;
}

NormValue gowers_norm_local(const GridFunction& f, long long lo, long long hi, int d) {
    return gowers_norm(f.restricted(lo, hi), d);
}

NormValue gowers_norm_local(const GridFunction& f, const std::set<long long>& S, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    if (S.empty()) {
        NormValue out;
        out.degree = d;
        out.power = 0;
        return out;
    }
    return gowers_norm(f * GridFunction::from_set(S), d);
}

ScaleDecomposition gowers_norm_scale(const GridFunction& f, long long M, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    if (M < 1) throw Error("domain", "window length must be positive");
    ScaleDecomposition out;
    out.width = M;
    if (f.empty()) return out;
    out.first_x = f.lo() - M;
    long long nwin = f.hi() - out.first_x;
    out.powers.assign(static_cast<std::size_t>(nwin), Rat(0));
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
#endif
    for (long long idx = 0; idx < nwin; ++idx) {
        long long x = out.first_x + idx;
        out.powers[static_cast<std::size_t>(idx)] =
            power_serial(f.restricted(x + 1, x + M), d);
    }
    double total = 0;
    for (const auto& p : out.powers) total += root_of(p, d);
    out.total = total;
    out.error_bound = (static_cast<double>(nwin) + 8.0) * 1.1e-16 * std::abs(total);
    return out;
}

std::complex<double> fourier_transform(const GridFunction& f, const Rat& alpha) {
    std::complex<double> acc(0.0, 0.0);
    if (f.empty()) return acc;
    for (long long x = f.lo(); x <= f.hi(); ++x) {
        Rat v = f.value(x);
        if (v == 0) continue;
        Rat ax = alpha * Rat(x);
        Int num = numerator(ax);
        Int den = denominator(ax);
        Int fl = num >= 0 ? Int(num / den) : Int(-((-num + den - 1) / den));
        double theta = 2.0 * std::numbers::pi * to_double(ax - Rat(fl));
        acc += to_double(v) * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return acc;
}

FourierCheck u2_fourier_check(const GridFunction& f, long long grid_size) {
    long long width = f.empty() ? 0 : f.hi() - f.lo() + 1;
    if (grid_size < std::max<long long>(1, 4 * width))
        throw Error("domain", "grid size " + std::to_string(grid_size) +
                                  " is below the exactness threshold " +
                                  std::to_string(std::max<long long>(1, 4 * width)));
    FourierCheck out;
    out.u2_power = gowers_norm(f, 2).power;
    if (width == 0) return out;

    std::vector<std::complex<double>> v(static_cast<std::size_t>(grid_size));
    for (long long j = 0; j < width; ++j)
        v[static_cast<std::size_t>(j)] = {to_double(f.value(f.lo() + j)), 0.0};

    double l4 = 0;
    if (is_pow2(grid_size)) {
        fft_pow2(v);
        for (const auto& z : v) {
            double m = std::norm(z);
            l4 += m * m;
        }
    } else {
        for (long long m = 0; m < grid_size; ++m) {
            std::complex<double> s(0.0, 0.0);
            for (long long j = 0; j < width; ++j) {
                double theta = -2.0 * std::numbers::pi *
                               static_cast<double>(m % grid_size) * static_cast<double>(j) /
                               static_cast<double>(grid_size);
                s += v[static_cast<std::size_t>(j)] *
                     std::complex<double>(std::cos(theta), std::sin(theta));
            }
            double sq = std::norm(s);
            l4 += sq * sq;
        }
    }
    out.l4_integral = l4 / static_cast<double>(grid_size);
    double u2d = to_double(out.u2_power);
    out.relative_gap = std::abs(out.l4_integral - u2d) / std::max(std::abs(u2d), 1e-300);
    return out;
}

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> step(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> t = w * a[i + k + len / 2];
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= step;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

}  // namespace petlab
