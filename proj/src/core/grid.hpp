#pragma once

#include <cstddef>
#include <vector>

namespace loglab {

using Field = std::vector<double>;

// Uniform grid on [0,1] with n nodes, x_i = i/(n-1).  All operators below use
// the mirror-ghost convention for zero-flux boundaries, so the discrete
// Laplacian is symmetric under the trapezoid inner product and summation by
// parts holds exactly: <u, L v>_w == -sum (du)(dv)/h for all u, v.
class Grid {
public:
  explicit Grid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double node(std::size_t i) const;

  // Trapezoid weight of node i (h at interior nodes, h/2 at the ends).
  double weight(std::size_t i) const;

private:
  std::size_t n_;
  double h_;
};

// y = L u with zero-flux ends (ghost mirror: row 0 is 2(u1-u0)/h^2, row n-1
// is 2(u_{n-2}-u_{n-1})/h^2).  Adjacent differences are formed first and the
// row sum is accumulated in long double; for nearly-linear u the adjacent
// differences are exact (Sterbenz) and the evaluation error stays O(eps)
// per unit of curvature rather than O(eps/h^2) per unit of u.
void neumann_laplacian_apply(const Grid& g, const Field& u, Field& out);
Field neumann_laplacian(const Grid& g, const Field& u);

// Central differences inside, second-order one-sided stencils at the ends.
Field derivative(const Grid& g, const Field& u);

// Trapezoid rule, accumulated in long double.
double integrate(const Grid& g, const Field& u);

// sum_i (u_{i+1} - u_i)^2 / h.  Equals -<u, L u>_w exactly for the mirror
// Laplacian above, which is what the summation-by-parts checks rely on.
double gradient_energy(const Grid& g, const Field& u);

double sup_norm(const Field& u);

// Solves (mu L + diag(c)) v = rhs by the Thomas algorithm with iterative
// refinement (long-double residuals).  Refinement stops when the residual
// drops under rtol*(|rhs|_inf + |v|_inf) or stalls; the reached residual is
// reported through `achieved` when non-null.  Throws SingularOperatorError if
// elimination meets a vanishing pivot (pure-Neumann c == 0 hits exactly 0.0
// in the last row).
Field solve_helmholtz(const Grid& g, double mu, const Field& c,
                      const Field& rhs, double* achieved = nullptr,
                      double rtol = 1e-12);

struct ZeroMeanPoisson {
  Field rho;        // zero-mean solution of L rho = rhs_projected
  bool compatible;  // false when |mean(rhs)| > 1e-6 * |rhs|_inf
  double rhs_mean;
};

// Solves the pure-Neumann Poisson problem L rho = rhs subject to the
// trapezoid-mean constraint <rho>_w = 0.  The rhs is projected onto mean
// zero first (the compatibility flag records whether projection changed it
// beyond roundoff).  Uses a bordered elimination: tridiagonal core, dense
// constraint row, column of ones, pivoted 2x2 finish, plus refinement.
ZeroMeanPoisson solve_neumann_poisson_zero_mean(const Grid& g,
                                                const Field& rhs);

}  // namespace loglab
