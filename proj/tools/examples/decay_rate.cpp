// Long-time algebraic decay of a stable solution: observed index and the
// t^{-alpha} constant.

#include <cstdio>

#include "fracdde/decay.hpp"
#include "fracdde/solver.hpp"

using namespace fracdde;

int main() {
    const ModelParams p{0.5, -3.0, 1.0, 1.0, 10};
    const Trajectory traj = solve(p, phi::Constant{0.4}, 10000);

    for (double t : {100.0, 250.0, 500.0, 1000.0}) {
        std::printf("t = %6.0f  y = %.6e  p = %.4f\n", t, traj.y(static_cast<long>(t / p.step())), decay_index(traj, t));
    }
    const auto ml = ml_constant(traj);
    std::printf("y t^alpha -> %.6f (predicted %.6f)\n", ml.estimate, ml.predicted);
}
