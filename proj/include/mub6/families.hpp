#pragma once

#include <vector>

#include "mub6/core.hpp"

namespace mub6 {

/// The six unimodular entries b..g of the symmetric family M6(a), unscaled.
struct M6Entries {
  Complex b, c, d, e, f, g;
};

/// Reduces t modulo 2*pi into (0, 2*pi] and tests membership in
/// (pi/2, pi] U (3pi/2, 2pi].
bool is_m6_admissible(double t);

/// Entries b..g for a = e^{it}. The branch is the one reached by continuation
/// from the exact root at a = -1; for t in the second arc the
/// a -> -a symmetry (swap index pairs {3,4} <-> {5,6}) maps it onto the first.
/// Throws DomainError for |a| != 1 or inadmissible arg(a), SolveError if the
/// reassembled matrix is not Hadamard.
M6Entries solve_m6_entries(Complex a, const Tolerances& tol = {});

/// Assembles the symmetric M6 layout from a and its entries (1/sqrt(6) scale).
CMat6 assemble_m6(Complex a, const M6Entries& e, std::string label = {});

/// Symmetric Hadamard matrix M6(e^{it}); first row/column all ones, second
/// row (1, -1, a, a, -a, -a).
CMat6 m6(double t, const Tolerances& tol = {});

/// n equally spaced admissible points on (pi/2, pi], left end excluded.
std::vector<double> m6_grid(int n);

/// Two-parameter Fourier family F6(x1, x2); fourier_f6(0, 0) is the
/// sixth-root Fourier matrix with entries w^{jk}/sqrt(6).
CMat6 fourier_f6(double x1, double x2);

/// Inner edge of the self-adjoint family's parameter arc,
/// arccos((sqrt(3) - 1) / 2). Admissible: arc_start < |theta| <= pi.
/// At the edge itself the discriminant of the x-quadratic vanishes.
extern const double kB6ArcStart;

bool is_b6_admissible(double theta);

/// Self-adjoint one-parameter family B6(theta), with y = e^{i theta} and x
/// the unimodular root of (1+2y-y^2) x^2 - 2(1+2y+y^2) x + (-1+2y+y^2) = 0.
///
///   1   1    1    1    1    1
///   1  -1  -x*   -y    y    x*
///   1  -x    1    y    t    w
///   1  -y*   y*  -1    w   -w
///   1   y*   t*   w*   1   -x*
///   1   x    w*  -w*  -x   -1
///
/// t and w are the two unit numbers with t + w = x - y - 2.
CMat6 b6(double theta);

/// Tao's isolated matrix S6 built from cube roots of unity.
CMat6 s6();

}  // namespace mub6
