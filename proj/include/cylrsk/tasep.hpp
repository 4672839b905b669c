#pragma once

// Discrete-time TASEP on the line and on the ring, the ledge coupling to
// cylindrical dual-RSK, and brute-force transition-probability oracles.
//
// Two coordinate systems coexist and are never converted implicitly:
//   Y: weakly ordered jump counts (RSK-facing), Y_N <= ... <= Y_1;
//   x: strictly ordered absolute positions (formula-facing), x_N < ... < x_1,
//      with x_1 < x_N + L on the ring; winding is kept in the magnitudes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "cylrsk/cyl_rsk.hpp"
#include "cylrsk/errors.hpp"

namespace cylrsk {

using rational = boost::multiprecision::cpp_rational;

using ParticleStateY = std::vector<long long>;  // index 0 = particle 1 (rightmost)
using ParticleStateX = std::vector<long long>;  // strictly decreasing

inline void check_state_y(const ParticleStateY& y) {
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[i - 1]) throw validation_error("state Y: not weakly decreasing");
}

inline void check_state_x(const ParticleStateX& x, long long l_ring = 0) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] >= x[i - 1]) throw validation_error("state x: not strictly decreasing");
    if (l_ring > 0 && !x.empty() && x.front() >= x.back() + l_ring)
        throw validation_error("state x: ring constraint violated");
}

// x_i = Y_i - i maps the weak order onto the exclusion order on the line.
inline ParticleStateX y_to_x(const ParticleStateY& y) {
    ParticleStateX x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] - static_cast<long long>(i + 1);
    return x;
}

// Sequential right-to-left update: particle 1 first, then each particle
// blocked by the already-updated neighbour on its right.
inline ParticleStateY step_discrete_line(const ParticleStateY& y, const std::vector<int>& xi) {
    check_state_y(y);
    ParticleStateY out = y;
    out[0] = y[0] + (xi[0] ? 1 : 0);
    for (std::size_t k = 1; k < y.size(); ++k)
        out[k] = std::min(y[k] + (xi[k] ? 1 : 0), out[k - 1]);
    return out;
}

// As the line update, but particle 1 is capped by Y_N(n-1) + L.
inline ParticleStateY step_discrete_ring(const ParticleStateY& y, const std::vector<int>& xi,
                                         long long l) {
    check_state_y(y);
    if (y.front() > y.back() + l) throw validation_error("ring step: Y_1 > Y_N + L");
    ParticleStateY out = y;
    out[0] = std::min(y[0] + (xi[0] ? 1 : 0), y.back() + l);
    for (std::size_t k = 1; k < y.size(); ++k)
        out[k] = std::min(y[k] + (xi[k] ? 1 : 0), out[k - 1]);
    return out;
}

// Bernoulli clocks xi(k, n) for k in [1, N], n in [1, steps].
struct BernoulliDriver {
    int n = 0;
    int steps = 0;
    std::vector<std::vector<int>> xi;  // xi[step-1][k-1]
    std::vector<double> rates;

    int at(int k, int step) const { return xi[step - 1][k - 1]; }
};

struct CoupledRun {
    std::vector<ParticleStateY> y_trajectory;      // Y(0), Y(1), ...
    std::vector<std::vector<int>> ledge_trajectory;  // ledge(CP0(0)), ...
    CylState final_state;
};

// Runs the ring recursion and cylindrical RSK in lockstep off one driver.
// The tableau with period parameter L leaves L - N free sites on the ring,
// so the Y-recursion is driven with cap Y_N + (L - N).
inline CoupledRun coupled_run(const BernoulliDriver& driver, int n, int l) {
    if (l - n < 1) throw validation_error("coupled run: need L - N >= 1");
    CoupledRun run{{}, {}, CylState(n, l)};
    ParticleStateY y(n, 0);
    run.y_trajectory.push_back(y);
    run.ledge_trajectory.push_back(run.final_state.ledge());
    for (int step = 1; step <= driver.steps; ++step) {
        std::vector<int> xi(n);
        for (int k = 1; k <= n; ++k) xi[k - 1] = driver.at(k, step);
        y = step_discrete_ring(y, xi, l - n);
        for (int k = 1; k <= n; ++k)
            if (xi[k - 1]) run.final_state.insert(k, step);
        run.y_trajectory.push_back(y);
        run.ledge_trajectory.push_back(run.final_state.ledge());
    }
    return run;
}

namespace detail {

inline std::vector<std::size_t> movable_particles(const ParticleStateX& x, long long l_ring) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        long long block = (i == 0) ? (l_ring > 0 ? x.back() + l_ring
                                                 : std::numeric_limits<long long>::max())
                                   : x[i - 1];
        if (x[i] + 1 < block) m.push_back(i);
    }
    return m;
}

}  // namespace detail

// Full time-t distribution of continuous-time TASEP (all rates 1), started
// from the point mass at y, by uniformization with total rate N:
//   P(t) = sum_j e^{-Nt} (Nt)^j / j! * Pi^j,
// truncated once the Poisson tail drops below tol. l_ring = 0 means the line.
inline std::map<ParticleStateX, double> ctmc_distribution(const ParticleStateX& y, double t,
                                                          long long l_ring, double tol,
                                                          int j_cap = 10000) {
    check_state_x(y, l_ring);
    int n = static_cast<int>(y.size());
    double rate = n * t;
    // Smallest J with P(Poisson(Nt) > J) < tol/2.
    int j_max = 0;
    {
        double term = std::exp(-rate), cum = term;
        while (1.0 - cum >= 0.5 * tol) {
            ++j_max;
            if (j_max > j_cap) throw tolerance_not_reached("ctmc oracle: Poisson cap exceeded");
            term *= rate / j_max;
            cum += term;
        }
    }
    std::map<ParticleStateX, double> pi{{y, 1.0}};
    std::map<ParticleStateX, double> acc;
    double poisson = std::exp(-rate);
    for (auto& [s, m] : pi) acc[s] += poisson * m;
    for (int j = 1; j <= j_max; ++j) {
        std::map<ParticleStateX, double> next;
        for (auto& [s, m] : pi) {
            auto movable = detail::movable_particles(s, l_ring);
            double stay = static_cast<double>(n - movable.size()) / n;
            if (stay > 0) next[s] += m * stay;
            for (std::size_t i : movable) {
                ParticleStateX s2 = s;
                ++s2[i];
                next[s2] += m / n;
            }
        }
        pi = std::move(next);
        poisson *= rate / j;
        for (auto& [s, m] : pi) acc[s] += poisson * m;
    }
    return acc;
}

// Mass at x with absolute error <= tol.
inline double ctmc_oracle(const ParticleStateX& y, const ParticleStateX& x, double t,
                          long long l_ring, double tol) {
    check_state_x(x, l_ring);
    auto dist = ctmc_distribution(y, t, l_ring, tol);
    auto it = dist.find(x);
    return it == dist.end() ? 0.0 : it->second;
}

// Exact rational forward evolution under sequential Bernoulli update on the
// x-state space; l_ring = 0 means the line.
inline std::map<ParticleStateX, rational> dtmc_distribution(const ParticleStateX& y, int steps,
                                                            const std::vector<rational>& rates,
                                                            long long l_ring,
                                                            std::size_t state_cap = 2000000) {
    check_state_x(y, l_ring);
    std::size_t n = y.size();
    std::map<ParticleStateX, rational> dist{{y, rational(1)}};
    for (int step = 0; step < steps; ++step) {
        std::map<ParticleStateX, rational> next;
        for (auto& [s, m] : dist) {
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                rational pr = m;
                ParticleStateX s2 = s;
                for (std::size_t k = 0; k < n; ++k) {
                    bool jump = (mask >> k) & 1;
                    pr *= jump ? rates[k] : rational(1) - rates[k];
                    if (jump) {
                        long long block = (k == 0) ? (l_ring > 0
                                                          ? s.back() + l_ring
                                                          : std::numeric_limits<long long>::max())
                                                   : s2[k - 1];
                        if (s2[k] + 1 < block) ++s2[k];
                    }
                }
                if (pr != 0) next[s2] += pr;
            }
            if (next.size() > state_cap) throw tolerance_not_reached("dtmc oracle: state cap");
        }
        dist = std::move(next);
    }
    return dist;
}

inline rational dtmc_oracle(const ParticleStateX& y, const ParticleStateX& x, int steps,
                            const std::vector<rational>& rates, long long l_ring) {
    auto dist = dtmc_distribution(y, steps, rates, l_ring);
    auto it = dist.find(x);
    return it == dist.end() ? rational(0) : it->second;
}

}  // namespace cylrsk
