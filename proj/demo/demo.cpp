// Prints the headline numbers for broken-stick triangles, cyclic
// quadrilaterals and pentagons.

#include <cstdio>

#include "stickdist/stickdist.hpp"

int main()
{
    namespace tri = stickdist::triangle;
    namespace quad = stickdist::quadrilateral;

    std::printf("triangle: P(formable) = %s\n", stickdist::ngon::formable_probability(3).str().c_str());
    std::printf("  median area  %.17g\n", tri::median());
    std::printf("  mean area    %.17g\n", tri::moment(1));
    std::printf("  P(area > 0.1) = %.15f\n", tri::survival(0.1));

    std::printf("cyclic quadrilateral: P(formable) = %s\n", stickdist::ngon::formable_probability(4).str().c_str());
    std::printf("  mean area    %.12f\n", quad::mean_area);
    std::printf("  median area  %.12f (numeric)\n", quad::numeric_median(1e-10).median);
    std::printf("  density of area^2 near 0: %.12f\n", quad::area_marginal_density(1e-20));

    const auto w = quad::omega_interval(0.03);
    std::printf("  omega(0.03) = [%.6f, %.6f]\n", w.lo, w.hi);

    const auto pent = stickdist::ngon::pentagon_stats(1, 1'000'000, 4);
    const auto med = stickdist::mc::empirical_median(pent.values);
    std::printf("cyclic pentagon (Monte Carlo, 1e6 sticks): P(formable) = %.4f +- %.4f\n", pent.acceptance(),
                pent.acceptance_se());
    std::printf("  mean area    %.5f +- %.5f\n", pent.mean, pent.mean_se());
    std::printf("  median area  %.5f +- %.5f\n", med.median, med.error);
    return 0;
}
