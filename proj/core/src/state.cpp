#include "mpe/state.hpp"

namespace mpe {

void axpy(State& s, double c, const State& t) {
    s.v1.for_each([&](int i, int j, int k, double& x) { x += c * t.v1(i, j, k); });
    s.v2.for_each([&](int i, int j, int k, double& x) { x += c * t.v2(i, j, k); });
    s.T.for_each([&](int i, int j, int k, double& x) { x += c * t.T(i, j, k); });
    s.q.for_each([&](int i, int j, int k, double& x) { x += c * t.q(i, j, k); });
}

State lincomb(double a, const State& x, double b, const State& y) {
    State out = x;
    out.v1.for_each(
        [&](int i, int j, int k, double& v) { v = a * v + b * y.v1(i, j, k); });
    out.v2.for_each(
        [&](int i, int j, int k, double& v) { v = a * v + b * y.v2(i, j, k); });
    out.T.for_each(
        [&](int i, int j, int k, double& v) { v = a * v + b * y.T(i, j, k); });
    out.q.for_each(
        [&](int i, int j, int k, double& v) { v = a * v + b * y.q(i, j, k); });
    out.time = x.time;
    return out;
}

} // namespace mpe
