// Where does a parameter pair sit relative to the continuous and discrete regions?
//   stability_check alpha k a b

#include <cstdio>
#include <cstdlib>

#include "fracdde/characteristic.hpp"
#include "fracdde/regions.hpp"

using namespace fracdde;

int main(int argc, char** argv) {
    if (argc != 5) {
        std::fprintf(stderr, "usage: %s alpha k a b\n", argv[0]);
        return 2;
    }
    const double alpha = std::atof(argv[1]);
    const int k = std::atoi(argv[2]);
    const double a = std::atof(argv[3]);
    const double b = std::atof(argv[4]);

    const auto cont = continuous_membership(alpha, a, b);
    const auto num = numerical_membership(alpha, k, a, b);
    const ModelParams p{alpha, a, b, 1.0, k};
    const auto cls = classify_with_roots(p);

    std::printf("continuous region : %s\n", to_string(cont.status).c_str());
    std::printf("scheme, k = %-3d   : %s (margin %.3g)\n", k, to_string(num.status).c_str(), num.margin);
    std::printf("roots in disk     : %d -> %s\n", cls.roots.winding, to_string(cls.classification).c_str());
    if (cont.stable() && !num.stable()) std::printf("stable for the equation but not for the scheme\n");
}
