#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "core/errors.hpp"

namespace loglab {

Grid::Grid(std::size_t n) : n_(n) {
  if (n < 3) throw InvalidArgumentError("grid needs at least 3 nodes");
  h_ = 1.0 / static_cast<double>(n - 1);
}

double Grid::node(std::size_t i) const {
  if (i >= n_) throw InvalidArgumentError("node index out of range");
  if (i == n_ - 1) return 1.0;  // exact right endpoint
  return static_cast<double>(i) * h_;
}

double Grid::weight(std::size_t i) const {
  if (i >= n_) throw InvalidArgumentError("node index out of range");
  return (i == 0 || i == n_ - 1) ? 0.5 * h_ : h_;
}

void neumann_laplacian_apply(const Grid& g, const Field& u, Field& out) {
  const std::size_t n = g.size();
  if (u.size() != n) throw InvalidArgumentError("field size mismatch");
  out.resize(n);
  const double h = g.spacing();
  const long double inv_h2 = 1.0L / (static_cast<long double>(h) * h);
  // d_i = u_{i+1} - u_i, formed once so both rows sharing it agree exactly.
  for (std::size_t i = 0; i < n; ++i) {
    long double left = (i > 0) ? static_cast<long double>(u[i - 1]) -
                                     static_cast<long double>(u[i])
                               : static_cast<long double>(u[1]) -
                                     static_cast<long double>(u[0]);
    long double right = (i + 1 < n) ? static_cast<long double>(u[i + 1]) -
                                          static_cast<long double>(u[i])
                                    : static_cast<long double>(u[n - 2]) -
                                          static_cast<long double>(u[n - 1]);
    out[i] = static_cast<double>((left + right) * inv_h2);
  }
}

Field neumann_laplacian(const Grid& g, const Field& u) {
  Field out;
  neumann_laplacian_apply(g, u, out);
  return out;
}

Field derivative(const Grid& g, const Field& u) {
  const std::size_t n = g.size();
  if (u.size() != n) throw InvalidArgumentError("field size mismatch");
  const double h = g.spacing();
  Field d(n);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return d;
}

double integrate(const Grid& g, const Field& u) {
  const std::size_t n = g.size();
  if (u.size() != n) throw InvalidArgumentError("field size mismatch");
  long double acc = 0.5L * (static_cast<long double>(u[0]) +
                            static_cast<long double>(u[n - 1]));
  for (std::size_t i = 1; i + 1 < n; ++i) acc += u[i];
  return static_cast<double>(acc * static_cast<long double>(g.spacing()));
}

double gradient_energy(const Grid& g, const Field& u) {
  const std::size_t n = g.size();
  if (u.size() != n) throw InvalidArgumentError("field size mismatch");
  long double acc = 0.0L;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    long double d = static_cast<long double>(u[i + 1]) -
                    static_cast<long double>(u[i]);
    acc += d * d;
  }
  return static_cast<double>(acc / static_cast<long double>(g.spacing()));
}

double sup_norm(const Field& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Tridiagonal system for (mu L + diag(c)) with the mirror-ghost rows baked
// in.  lower/upper are the off-diagonals, diag the main diagonal.
struct Tridiag {
  std::vector<double> lower, diag, upper;

  static Tridiag helmholtz(const Grid& g, double mu, const Field& c) {
    const std::size_t n = g.size();
    const double h = g.spacing();
    const double w = mu / (h * h);
    Tridiag t;
    t.lower.assign(n, 0.0);
    t.diag.assign(n, 0.0);
    t.upper.assign(n, 0.0);
    t.diag[0] = -2.0 * w + c[0];
    t.upper[0] = 2.0 * w;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      t.lower[i] = w;
      t.diag[i] = -2.0 * w + c[i];
      t.upper[i] = w;
    }
    t.lower[n - 1] = 2.0 * w;
    t.diag[n - 1] = -2.0 * w + c[n - 1];
    return t;
  }

  double scale() const {
    double s = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i)
      s = std::max(s, std::abs(lower[i]) + std::abs(diag[i]) +
                          std::abs(upper[i]));
    return s;
  }

  // Thomas elimination.  Throws on a vanishing pivot; the pure-Neumann case
  // (c == 0) hits pivot == 0.0 exactly in the last row, so the check doubles
  // as singularity detection.
  Field solve(const Field& rhs) const {
    const std::size_t n = diag.size();
    const double tol = 1e-14 * scale();
    std::vector<double> cp(n), dp(n);
    double piv = diag[0];
    if (std::abs(piv) <= tol)
      throw SingularOperatorError("vanishing pivot in tridiagonal solve", piv,
                                  0);
    cp[0] = upper[0] / piv;
    dp[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
      piv = diag[i] - lower[i] * cp[i - 1];
      if (std::abs(piv) <= tol)
        throw SingularOperatorError("vanishing pivot in tridiagonal solve",
                                    piv, i);
      cp[i] = upper[i] / piv;
      dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / piv;
    }
    Field x(n);
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
  }
};

// r = rhs - (mu L + diag(c)) v, computed with adjacent differences in long
// double so the residual is trustworthy well below the matvec noise.
void helmholtz_residual(const Grid& g, double mu, const Field& c,
                        const Field& rhs, const Field& v, Field& r) {
  const std::size_t n = g.size();
  const double h = g.spacing();
  const long double w =
      static_cast<long double>(mu) / (static_cast<long double>(h) * h);
  r.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double left = (i > 0) ? static_cast<long double>(v[i - 1]) -
                                     static_cast<long double>(v[i])
                               : static_cast<long double>(v[1]) -
                                     static_cast<long double>(v[0]);
    long double right = (i + 1 < n) ? static_cast<long double>(v[i + 1]) -
                                          static_cast<long double>(v[i])
                                    : static_cast<long double>(v[n - 2]) -
                                          static_cast<long double>(v[n - 1]);
    long double av = (left + right) * w +
                     static_cast<long double>(c[i]) *
                         static_cast<long double>(v[i]);
    r[i] = static_cast<double>(static_cast<long double>(rhs[i]) - av);
  }
}

}  // namespace

Field solve_helmholtz(const Grid& g, double mu, const Field& c,
                      const Field& rhs, double* achieved, double rtol) {
  const std::size_t n = g.size();
  if (c.size() != n || rhs.size() != n)
    throw InvalidArgumentError("field size mismatch");
  if (!(mu > 0.0)) throw InvalidArgumentError("diffusion must be positive");

  const Tridiag t = Tridiag::helmholtz(g, mu, c);
  Field v = t.solve(rhs);

  Field r;
  helmholtz_residual(g, mu, c, rhs, v, r);
  double best = sup_norm(r);
  // Refinement: correct with the residual until the target is met or the
  // residual stops shrinking.  The attainable floor scales like
  // eps * mu * |v|_inf / h^2, so the target may be out of reach on fine
  // grids; `achieved` lets callers see where it landed.
  for (int pass = 0; pass < 8; ++pass) {
    const double target = rtol * (sup_norm(rhs) + sup_norm(v));
    if (best <= target) break;
    Field dv = t.solve(r);
    Field v2(n);
    for (std::size_t i = 0; i < n; ++i) v2[i] = v[i] + dv[i];
    Field r2;
    helmholtz_residual(g, mu, c, rhs, v2, r2);
    const double nr2 = sup_norm(r2);
    if (nr2 >= best) break;
    v.swap(v2);
    r.swap(r2);
    best = nr2;
  }
  if (achieved) *achieved = best;
  return v;
}

ZeroMeanPoisson solve_neumann_poisson_zero_mean(const Grid& g,
                                                const Field& rhs) {
  const std::size_t n = g.size();
  if (rhs.size() != n) throw InvalidArgumentError("field size mismatch");

  ZeroMeanPoisson out;
  out.rhs_mean = integrate(g, rhs);  // domain length is 1
  const double rn = sup_norm(rhs);
  out.compatible = std::abs(out.rhs_mean) <= 1e-6 * std::max(rn, 1e-300);

  // Project rhs onto mean zero; the singular operator only sees that part.
  Field f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = rhs[i] - out.rhs_mean;

  // Bordered system
  //   [ L   1 ] [rho   ]   [f]
  //   [ w^T 0 ] [lambda] = [0]
  // where w are the trapezoid weights.  Eliminate the tridiagonal core while
  // carrying the border column and the constraint row, then finish with the
  // pivoted trailing 2x2.
  const Field zero_c(n, 0.0);
  const Tridiag t = Tridiag::helmholtz(g, 1.0, zero_c);

  auto bordered_solve = [&](const Field& fin) -> Field {
    std::vector<double> diag(t.diag), upper(t.upper);
    Field b(fin);
    std::vector<double> border(n, 1.0);  // column of ones
    std::vector<double> row(n);          // constraint row (weights)
    for (std::size_t i = 0; i < n; ++i) row[i] = g.weight(i);
    double row_border = 0.0;  // constraint-row entry in the border column
    double row_rhs = 0.0;

    const double tol = 1e-14 * t.scale();
    // Forward elimination over the first n-1 pivots; keep the final
    // tridiagonal row and the constraint row for the trailing 2x2.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double piv = diag[i];
      if (std::abs(piv) <= tol)
        throw SingularOperatorError("vanishing pivot in bordered solve", piv,
                                    i);
      const double li = (i + 1 < n) ? t.lower[i + 1] : 0.0;
      const double m1 = li / piv;
      diag[i + 1] -= m1 * upper[i];
      border[i + 1] -= m1 * border[i];
      b[i + 1] -= m1 * b[i];
      const double m2 = row[i] / piv;
      row[i + 1] -= m2 * upper[i];
      row_border -= m2 * border[i];
      row_rhs -= m2 * b[i];
      row[i] = 0.0;
    }
    // Trailing 2x2 in (rho_{n-1}, lambda); pivot by larger leading entry.
    double a11 = diag[n - 1], a12 = border[n - 1], b1 = b[n - 1];
    double a21 = row[n - 1], a22 = row_border, b2 = row_rhs;
    if (std::abs(a21) > std::abs(a11)) {
      std::swap(a11, a21);
      std::swap(a12, a22);
      std::swap(b1, b2);
    }
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(a11) <= tol || std::abs(det) <= tol * (std::abs(a22) + 1.0))
      throw SingularOperatorError("singular trailing block in bordered solve",
                                  det, n - 1);
    const double lambda = (b2 * a11 - b1 * a21) / det;
    Field x(n);
    x[n - 1] = (b1 - a12 * lambda) / a11;
    for (std::size_t i = n - 1; i-- > 0;)
      x[i] = (b[i] - upper[i] * x[i + 1] - border[i] * lambda) / diag[i];
    return x;
  };

  Field rho = bordered_solve(f);

  // Refinement on the projected problem, re-centering each sweep.
  Field r;
  const Field zc(n, 0.0);
  for (int pass = 0; pass < 4; ++pass) {
    helmholtz_residual(g, 1.0, zc, f, rho, r);
    const double mean_r = integrate(g, r);
    for (std::size_t i = 0; i < n; ++i) r[i] -= mean_r;
    const double nr = sup_norm(r);
    if (nr <= 1e-13 * std::max(1.0, sup_norm(f) + sup_norm(rho))) break;
    Field drho = bordered_solve(r);
    for (std::size_t i = 0; i < n; ++i) rho[i] += drho[i];
  }
  const double mean_rho = integrate(g, rho);
  for (std::size_t i = 0; i < n; ++i) rho[i] -= mean_rho;

  out.rho = std::move(rho);
  return out;
}

}  // namespace loglab
