#pragma once

#include <array>

#include "malfatti/hyp_cycles.hpp"

namespace malfatti {

struct TriangleSides {
    double a = 0.0, b = 0.0, c = 0.0;
};

struct DerivedQuantities {
    double s = 0.0, l = 0.0, m = 0.0, n = 0.0;
};

using Triple = std::array<double, 3>;

struct SchellbachSolution {
    double s = 0.0, l = 0.0, m = 0.0, n = 0.0;
    double phi = 0.0, chi = 0.0, psi = 0.0;
    double lambda = 0.0, mu = 0.0, nu = 0.0;
    double xi = 0.0, eta = 0.0, zeta = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
    Triple residuals{};    // fundamental equations at the final (xi, eta, zeta)
    Triple consistency{};  // difference formulas vs the solved differences
    int polish_iterations = 0;
};

DerivedQuantities derived_quantities(const TriangleSides& t);

// (phi, chi, psi)
Triple auxiliary_angles(double s, double l, double m, double n);

// cosh(s/2) cosh(phi) / (cosh m cosh n), and cyclic
Triple subsidiary_arguments(double s, double l, double m, double n, const Triple& aux);

// Residual of the subsidiary defining condition for lambda (index 0), mu, nu.
double subsidiary_condition(int index, double value, double s, double l, double m, double n);

// lambda = phi + arccosh(q) (and cyclic); the branch reproducing the pair-sum system.
Triple subsidiary_angles(double s, double l, double m, double n, const Triple& aux,
                         double tol = 1e-12);

// both branches (phi - arccosh, phi + arccosh) per angle
std::array<std::array<double, 2>, 3> subsidiary_branches(double s, double l, double m, double n,
                                                         const Triple& aux, double tol = 1e-12);

struct PairSums {
    Triple sums{};         // eta+zeta, zeta+xi, xi+eta
    Triple differences{};  // |eta-zeta|, |zeta-xi|, |xi-eta| from the companion formulas
};

PairSums pair_sums(double s, double l, double m, double n, const Triple& sub, double tol = 1e-12);

// F_i of the fundamental system (zero at a solution)
Triple fundamental_residuals(double s, double l, double m, double n, double xi, double eta,
                             double zeta);

SchellbachSolution solve(const TriangleSides& t, double tol = 1e-11);

// c_A, c_B, c_C in the frame of the given triangle
std::array<Cycle, 3> analytic_circles(const HTriangle& t, const SchellbachSolution& sol);

}  // namespace malfatti
