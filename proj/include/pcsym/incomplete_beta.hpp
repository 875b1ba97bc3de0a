#pragma once

namespace pcsym {

/// Regularized incomplete beta I_u(a, b), the Beta(a, b) cdf at u.
/// Throws DomainError unless a > 0, b > 0 and u in [0, 1].
double reg_inc_beta(double a, double b, double u);

/// Binomial upper tail sum_{r=i}^{n} C(n,r) u^r (1-u)^(n-r), summed directly.
/// Equals I_u(i, n-i+1); kept as an independent route for integer arguments.
double binomial_tail(int i, int n, double u);

/// Inverse of I_u(a, b) in u.
double reg_inc_beta_inv(double a, double b, double p);

/// Complete beta function B(a, b).
double beta_fn(double a, double b);

} // namespace pcsym
