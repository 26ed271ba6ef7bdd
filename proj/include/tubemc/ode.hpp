#pragma once

#include <cmath>
#include <functional>

namespace tubemc {

/// One classical Runge-Kutta step. State must support +, and scalar *.
template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& f) {
    State k1 = f(t, y);
    State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
    State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
    State k4 = f(t + h, State(y + h * k3));
    return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Fixed-step integration from t0 to t1 with at least `min_steps` steps;
/// the step is shortened to land on t1 exactly.
template <class State, class Rhs>
State rk4_integrate(State y, double t0, double t1, double h_max, Rhs&& f, int min_steps = 1) {
    if (t1 == t0) return y;
    const double span = t1 - t0;
    int steps = std::max(min_steps, int(std::ceil(std::abs(span) / h_max)));
    const double h = span / steps;
    double t = t0;
    for (int j = 0; j < steps; ++j) {
        y = rk4_step(y, t, h, f);
        t = t0 + (j + 1) * span / steps;
    }
    return y;
}

}  // namespace tubemc
