#pragma once

// Analytic transition formulas: the kernel F_p(n;t), Schutz determinant for
// the line, the periodic k-sum, the Bethe-root contour formula, and the
// discrete-limit / resummation identities used to cross-check them.
//
// Index conventions: configurations are passed with strictly decreasing
// entries (x_1 > ... > x_N); internally both endpoints are re-indexed in
// increasing order X_1 < ... < X_N, under which the determinant entries read
// F_{i-j}(X_i - Y_j; t) on the line and F_{i-j-N k_i}(X_i - Y_j - L k_i; t)
// on the ring with sum over integer tuples with sum k_i = 0.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "cylrsk/errors.hpp"
#include "cylrsk/tasep.hpp"

namespace cylrsk {

struct KernelParams {
    int n = 1;
    long long l = 2;
    double t = 1.0;
    double tol = 1e-10;
    int k_cap = 6;
};

namespace detail {

inline double binom(int a, int b) {
    if (b < 0 || b > a) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// t^m / m! with the reciprocal-factorial convention 1/m! = 0 for m < 0.
inline double pois_term(double t, long long m) {
    if (m < 0) return 0.0;
    double r = 1.0;
    for (long long i = 1; i <= m; ++i) r *= t / i;
    return r;
}

template <typename Scalar>
Scalar det_lu(std::vector<std::vector<Scalar>> m) {
    int n = static_cast<int>(m.size());
    Scalar det = Scalar(1);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == Scalar(0)) return Scalar(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Scalar f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

inline std::vector<long long> sorted_increasing(const ParticleStateX& x) {
    std::vector<long long> v(x.rbegin(), x.rend());
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) throw validation_error("configuration: not strictly ordered");
    return v;
}

}  // namespace detail

// F_p(n;t). For p <= 0 the sum is the exact alternating one over k = 0..|p|;
// for p > 0 the series is truncated once past the Poisson mode with the
// running term below tol relative to the accumulated magnitude.
inline double kernel_F(int p, long long n, double t, double tol = 1e-16) {
    if (t < 0) throw validation_error("kernel F: negative time");
    double sum = 0.0;
    if (p <= 0) {
        int q = -p;
        for (int k = 0; k <= q; ++k) {
            double c = detail::binom(q, k);
            double term = detail::pois_term(t, n + k);
            sum += (k % 2 == 0 ? c : -c) * term;
        }
        return std::exp(-t) * sum;
    }
    long long k0 = std::max<long long>(0, -n);
    // term_k = C(k+p-1, p-1) t^{k+n} / (k+n)!
    double term = detail::pois_term(t, n + k0);
    for (long long i = 1; i <= k0; ++i) term = term * (i + p - 1) / i;
    double mag = 0.0;
    for (long long k = k0; k < k0 + 100000; ++k) {
        sum += term;
        mag = std::max(mag, std::abs(term));
        if (k + n + 1 > t && std::abs(term) < tol * std::max(mag, 1e-300)) break;
        term = term * (static_cast<double>(k + p) / (k + 1)) * (t / (k + n + 1));
    }
    return std::exp(-t) * sum;
}

// det[(F_{i-j}(X_i - Y_j; t))], the line transition probability.
inline double schutz_transition(const ParticleStateX& x, const ParticleStateX& y, double t) {
    auto xs = detail::sorted_increasing(x);
    auto ys = detail::sorted_increasing(y);
    if (xs.size() != ys.size()) throw validation_error("schutz: size mismatch");
    int n = static_cast<int>(xs.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = kernel_F(i - j, xs[i] - ys[j], t);
    return detail::det_lu(std::move(m));
}

// Periodic transition probability as a sum of shifted Schutz determinants
// over k in Z^N with sum k_i = 0, expanded in shells max|k_i| = K until a
// full shell contributes less than tol.
inline double periodic_transition_ksum(const ParticleStateX& x, const ParticleStateX& y,
                                       const KernelParams& params) {
    auto xs = detail::sorted_increasing(x);
    auto ys = detail::sorted_increasing(y);
    int n = static_cast<int>(xs.size());
    auto det_for = [&](const std::vector<int>& k) {
        std::vector<std::vector<double>> m(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[i][j] = kernel_F(i - j - n * k[i], xs[i] - ys[j] - params.l * k[i], params.t);
        return detail::det_lu(std::move(m));
    };
    std::vector<int> k(n, 0);
    double total = det_for(k);
    for (int shell = 1;; ++shell) {
        if (shell > params.k_cap)
            throw tolerance_not_reached("periodic k-sum: shell cap exceeded");
        double contrib = 0.0;
        // All tuples with max|k_i| = shell and zero sum.
        std::function<void(int, int, bool)> rec = [&](int idx, int partial, bool hit) {
            if (idx == n) {
                if (partial == 0 && hit) contrib += det_for(k);
                return;
            }
            int remaining = (n - 1 - idx) * shell;
            for (int v = -shell; v <= shell; ++v) {
                if (std::abs(partial + v) > remaining) continue;
                k[idx] = v;
                rec(idx + 1, partial + v, hit || std::abs(v) == shell);
            }
        };
        rec(0, 0, false);
        total += contrib;
        if (std::abs(contrib) < params.tol) break;
    }
    return total;
}

namespace detail {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline cplx ipow(cplx w, long long e) {
    if (e < 0) return cplx(1.0) / ipow(w, -e);
    cplx r(1.0), b = w;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Aberth-Ehrlich iteration for all roots of a monic polynomial given by its
// full coefficient vector (coeff[i] multiplies w^i, coeff back = 1).
inline std::vector<cplx> all_roots(const std::vector<cplx>& coeff) {
    int deg = static_cast<int>(coeff.size()) - 1;
    auto eval = [&](cplx w, cplx& dp) {
        cplx p = coeff[deg];
        dp = 0.0;
        for (int i = deg - 1; i >= 0; --i) {
            dp = dp * w + p;
            p = p * w + coeff[i];
        }
        return p;
    };
    std::vector<cplx> w(deg);
    for (int i = 0; i < deg; ++i) {
        double ang = 2 * kPi * (i + 0.25) / deg;
        w[i] = cplx(0.4 + 0.9 * std::cos(ang), 0.9 * std::sin(ang));
    }
    for (int iter = 0; iter < 300; ++iter) {
        double move = 0.0;
        for (int i = 0; i < deg; ++i) {
            cplx dp;
            cplx p = eval(w[i], dp);
            if (p == cplx(0.0)) continue;
            cplx ratio = p / dp;
            cplx sum = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) sum += cplx(1.0) / (w[i] - w[j]);
            cplx delta = ratio / (cplx(1.0) - ratio * sum);
            w[i] -= delta;
            move = std::max(move, std::abs(delta) / (1.0 + std::abs(w[i])));
        }
        if (move < 1e-15) break;
    }
    for (int i = 0; i < deg; ++i) {  // Newton polish
        for (int s = 0; s < 2; ++s) {
            cplx dp;
            cplx p = eval(w[i], dp);
            if (dp != cplx(0.0)) w[i] -= p / dp;
        }
        cplx dp;
        if (std::abs(eval(w[i], dp)) > 1e-6)
            throw error("bethe roots: root finding failed to converge");
    }
    return w;
}

}  // namespace detail

// Largest |z| below which the Bethe roots of (w-1)^N w^{L-N} = z^L stay
// clear of the double root at w = (L-N)/L.
inline double bethe_critical_radius(int n, long long l) {
    double rho = static_cast<double>(n) / l;
    return std::pow(rho, rho) * std::pow(1.0 - rho, 1.0 - rho);
}

// Bethe-root contour formula: for z on the contour, the L roots of
// q_z(w) = (w-1)^N w^{L-N} - z^L feed the N x N matrix of root sums
// sum_w f_ij(w)/q'_z(w) with
// f_ij(w) = (w-1)^{j-i+N} w^{Y_j - X_i + i - j + L - N - 1} e^{t(w-1)},
// and the z-integral dz/(2 pi i z) is the node average on the circle,
// doubling the node count until stable. radius_frac scales the critical
// radius; any value away from 1 gives the same answer (the integrand is
// analytic in z away from 0), it only moves the nodes off the degenerate
// circle.
inline double bethe_transition(const ParticleStateX& x, const ParticleStateX& y,
                               const KernelParams& params, double radius_frac = 0.75,
                               int quad_start = 64, int quad_cap = 16384) {
    using detail::cplx;
    auto xs = detail::sorted_increasing(x);
    auto ys = detail::sorted_increasing(y);
    int n = static_cast<int>(xs.size());
    long long l = params.l;
    if (radius_frac <= 0 || radius_frac >= 1)
        throw validation_error("bethe: radius fraction must be in (0,1)");
    double radius = radius_frac * bethe_critical_radius(n, l);

    auto node_value = [&](cplx z) {
        std::vector<cplx> coeff(l + 1, cplx(0.0));
        for (int j = 0; j <= n; ++j) {
            double c = detail::binom(n, j) * ((n - j) % 2 == 0 ? 1.0 : -1.0);
            coeff[l - n + j] += c;
        }
        coeff[0] -= detail::ipow(z, l);
        auto roots = detail::all_roots(coeff);
        std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n, cplx(0.0)));
        for (cplx w : roots) {
            cplx qp = cplx(static_cast<double>(n)) * detail::ipow(w - 1.0, n - 1) *
                          detail::ipow(w, l - n) +
                      cplx(static_cast<double>(l - n)) * detail::ipow(w - 1.0, n) *
                          detail::ipow(w, l - n - 1);
            cplx et = std::exp(params.t * (w - 1.0));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    cplx f = detail::ipow(w - 1.0, j - i + n) *
                             detail::ipow(w, ys[j - 1] - xs[i - 1] + i - j + l - n - 1) * et;
                    m[i - 1][j - 1] += f / qp;
                }
        }
        return detail::det_lu(std::move(m));
    };

    auto integrate = [&](int q) {
        cplx acc(0.0);
        for (int k = 0; k < q; ++k) {
            double ang = 2 * detail::kPi * k / q;
            acc += node_value(radius * cplx(std::cos(ang), std::sin(ang)));
        }
        return acc / cplx(static_cast<double>(q));
    };

    cplx prev = integrate(quad_start);
    for (int q = 2 * quad_start; q <= quad_cap; q *= 2) {
        cplx cur = integrate(q);
        if (std::abs(cur - prev) < params.tol) return cur.real();
        prev = cur;
    }
    throw tolerance_not_reached("bethe: quadrature did not stabilize");
}

// |F_{p+1}(x;t) - sum_{y=x}^{x+window} F_p(y;t)|.
inline double rowsum_identity_check(int p, long long x, double t, int window = 80) {
    double s = 0.0;
    for (long long yy = x; yy <= x + window; ++yy) s += kernel_F(p, yy, t);
    return std::abs(kernel_F(p + 1, x, t) - s);
}

// |F_{p+1}(x;t) + sum_{y<x} F_p(y;t)| on the pole-free range p+1 <= 0,
// where the lower sum terminates at y = -|p| exactly.
inline double rowsum_identity2_check(int p, long long x, double t) {
    if (p + 1 > 0) throw validation_error("identity two: needs p+1 <= 0");
    double s = 0.0;
    for (long long yy = -std::abs(p); yy < x; ++yy) s += kernel_F(p, yy, t);
    return std::abs(kernel_F(p + 1, x, t) + s);
}

// Gelfand-Tsetlin resummation of the line determinant:
//   det[(F_{i-j}(X_i - Y_j))] = sum_D det[(F_{-j}(chi_{i+1} - Y_{j+1}))]
// over patterns x^j_i (2 <= i <= j <= N) with x^j_1 = X_{N+1-j},
// x^j_i >= x^{j-1}_{i-1} and x^j_i > x^{j+1}_i, where chi = x^N.
// Returns |lhs - rhs| with the free variables capped at max(X) + window.
inline double gt_resummation_check(const ParticleStateX& x, const ParticleStateX& y, double t,
                                   int window = 45) {
    auto xs = detail::sorted_increasing(x);
    auto ys = detail::sorted_increasing(y);
    int n = static_cast<int>(xs.size());
    double lhs = schutz_transition(x, y, t);
    long long ub = xs.back() + window;

    // pattern[j][i], 1-based in both, pattern[j][1] fixed.
    std::vector<std::vector<long long>> pat(n + 1);
    for (int j = 1; j <= n; ++j) {
        pat[j].assign(j + 1, 0);
        pat[j][1] = xs[n - j];
    }
    double rhs = 0.0;
    auto term = [&]() {
        std::vector<std::vector<double>> m(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = kernel_F(-j, pat[n][i + 1] - ys[j], t);
        rhs += detail::det_lu(std::move(m));
    };
    // Enumerate row by row; the strict bound on x^{j+1}_i needs x^j_i known,
    // so iterate j upward and look back.
    std::function<void(int, int)> rec = [&](int j, int i) {
        if (j > n) {
            term();
            return;
        }
        if (i > j) {
            rec(j + 1, 2);
            return;
        }
        long long lo = pat[j - 1][i - 1];        // x^j_i >= x^{j-1}_{i-1}
        long long hi = (i <= j - 1) ? std::min(ub, pat[j - 1][i] - 1) : ub;  // x^{j-1}_i > x^j_i
        for (long long v = lo; v <= hi; ++v) {
            pat[j][i] = v;
            rec(j, i + 1);
        }
    };
    if (n == 1)
        rhs = kernel_F(0, xs[0] - ys[0], t);
    else
        rec(2, 2);
    return std::abs(lhs - rhs);
}

using bigint = boost::multiprecision::cpp_int;

namespace detail {

inline bigint binom_exact(long long a, long long b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    bigint r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;
    }
    return r;
}

template <typename Scalar>
Scalar det_fraction_free(std::vector<std::vector<Scalar>> m) {
    int n = static_cast<int>(m.size());
    Scalar det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Scalar(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Scalar f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace detail

namespace detail {

// C(n, e) p^e (1-p)^{n-e} as an exact rational; zero outside [0, n].
inline rational bernoulli_pmf(long long n, long long e, const rational& p) {
    if (e < 0 || e > n) return rational(0);
    rational v(binom_exact(n, e));
    for (long long s = 0; s < e; ++s) v *= p;
    rational q = rational(1) - p;
    for (long long s = 0; s < n - e; ++s) v *= q;
    return v;
}

// Discrete-time analogue of kernel_F: e^{t(w-1)} replaced by (1-p+pw)^n in
// the contour form, extracted exactly:
//   m <= 0: sum_{j=0}^{|m|} C(|m|,j) (-1)^{|m|-j} B(n, d-m-j)
//   m >  0: sum_{k>=0}      C(k+m-1, m-1)         B(n, d+k)
// with B(n,e) = C(n,e) p^e (1-p)^{n-e}.
inline rational kernel_F_discrete(int m, long long d, long long n, const rational& p) {
    rational sum = 0;
    if (m <= 0) {
        int mm = -m;
        for (int j = 0; j <= mm; ++j) {
            rational c(binom_exact(mm, j) * bernoulli_pmf(n, d - m - j, p));
            sum += ((mm - j) % 2 == 0 ? c : -c);
        }
    } else {
        for (long long k = std::max<long long>(0, -d); d + k <= n; ++k)
            sum += rational(binom_exact(k + m - 1, m - 1)) * bernoulli_pmf(n, d + k, p);
    }
    return sum;
}

}  // namespace detail

// Transition probability of the sequential-update Bernoulli walk with rates
// a_k/M = 1/M run for `steps` steps, as the exact rational determinant
// det[(F^disc_{i-j}(X_i - Y_j; steps, 1/M))]. Agrees with the exhaustive
// Bernoulli evolution at every M and converges to the line determinant at
// rate 1/M.
inline rational discrete_transition_exact(const ParticleStateX& x, const ParticleStateX& y,
                                          long long m_param, long long steps) {
    if (m_param < 2) throw validation_error("discrete transition: need M >= 2");
    auto xs = detail::sorted_increasing(x);
    auto ys = detail::sorted_increasing(y);
    int n = static_cast<int>(xs.size());
    rational p(1, m_param);
    std::vector<std::vector<rational>> m(n, std::vector<rational>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m[i - 1][j - 1] = detail::kernel_F_discrete(i - j, xs[i - 1] - ys[j - 1], steps, p);
    return detail::det_fraction_free(std::move(m));
}

inline double discrete_transition(const ParticleStateX& x, const ParticleStateX& y,
                                  long long m_param, double t) {
    long long steps = static_cast<long long>(std::floor(m_param * t));
    return static_cast<double>(discrete_transition_exact(x, y, m_param, steps));
}

// Coefficient of the n-factor convolution of the two-point step kernel
// P_{t/n}(x, y) = (t/n)^{x-y} 1{y in [x-1, x]} at displacement d, computed
// by direct convolution: equals C(n, d) (t/n)^d.
inline double conv_power_P(int n_factors, double t, int d) {
    if (d < 0) throw validation_error("conv power: negative displacement");
    std::vector<double> coef{1.0};
    double step = t / n_factors;
    for (int f = 0; f < n_factors; ++f) {
        std::vector<double> next(std::min<std::size_t>(coef.size() + 1, d + 1), 0.0);
        for (std::size_t k = 0; k < coef.size(); ++k) {
            if (k < next.size()) next[k] += coef[k];
            if (k + 1 < next.size()) next[k + 1] += coef[k] * step;
        }
        coef = std::move(next);
    }
    return d < static_cast<int>(coef.size()) ? coef[d] : 0.0;
}

// The paper's closed form for the same object carries one extra binomial:
// (t/n)^d (C(n,d) + C(n,d-1)). Both converge to the Poisson limit.
inline double conv_power_P_closed(int n_factors, double t, int d) {
    double td = std::pow(t / n_factors, d);
    return td * (detail::binom(n_factors, d) + detail::binom(n_factors, d - 1));
}

// |e^{-t} conv_power_P(n,t,d) - e^{-t} t^d / d!|, decaying like 1/n.
inline double rt_limit_check(int n_factors, double t, int d) {
    return std::exp(-t) * std::abs(conv_power_P(n_factors, t, d) - detail::pois_term(t, d));
}

}  // namespace cylrsk
