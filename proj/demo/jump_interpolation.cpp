// Interpolates f1 (one jump at 0) on equispaced samples with and without mapping, then
// prints the error and Lebesgue constant of each basis.

#include <cstdio>
#include <vector>

#include "graspa/graspa.hpp"

int main() {
    using namespace graspa;

    const PiecewiseDomain domain(Interval::reference(), {0.0});
    const std::vector<double> grid = uniform_grid(domain.interval(), 332);
    std::vector<double> truth;
    for (double x : grid) truth.push_back(f1(x));

    std::printf("%4s  %-10s %14s %14s\n", "n", "method", "rmae", "lebesgue");
    for (std::size_t n : {11, 23, 51}) {
        const NodeSet nodes = equispaced_nodes(n, domain.interval());
        std::vector<double> samples;
        for (double x : nodes) samples.push_back(f1(x));

        for (Method m : {Method::classical, Method::sgibbs, Method::graspa}) {
            const MapChain map = make_map(m, 1e4, domain, n);
            const Interpolant r = build_interpolant(nodes, samples, map);
            const double err = rmae(r, truth, grid);
            const double lambda = lebesgue_constant(nodes, map, domain).lebesgue_constant;
            std::printf("%4zu  %-10s %14.6g %14.6g\n", n, to_string(m).c_str(), err, lambda);
        }
    }

    // The fake nodes the GRASPA basis actually interpolates on.
    const NodeSet nodes = equispaced_nodes(7, domain.interval());
    const MapChain q = MapChain::graspa(1e4, domain);
    std::printf("\n%s\n", q.describe().c_str());
    for (double x : nodes) std::printf("  %+.6f -> %+.6f\n", x, q(x));
    return 0;
}
