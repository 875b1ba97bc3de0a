#include "pcsym/incomplete_beta.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "pcsym/error.hpp"

namespace pcsym {

namespace {

void check_shape(double a, double b)
{
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("incomplete beta: shape parameters must be positive and finite");
    }
}

} // namespace

double reg_inc_beta(double a, double b, double u)
{
    check_shape(a, b);
    if (!(u >= 0 && u <= 1)) {
        throw DomainError("incomplete beta: u must lie in [0, 1], got " + std::to_string(u));
    }
    if (u == 0) {
        return 0;
    }
    if (u == 1) {
        return 1;
    }
    return boost::math::ibeta(a, b, u);
}

double binomial_tail(int i, int n, double u)
{
    if (n < 1 || i < 0 || i > n + 1) {
        throw DomainError("binomial tail: need 0 <= i <= n + 1 and n >= 1");
    }
    if (!(u >= 0 && u <= 1)) {
        throw DomainError("binomial tail: u must lie in [0, 1]");
    }
    double sum = 0;
    for (int r = i; r <= n; ++r) {
        sum += boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(r))
             * std::pow(u, r) * std::pow(1 - u, n - r);
    }
    return sum;
}

double reg_inc_beta_inv(double a, double b, double p)
{
    check_shape(a, b);
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("incomplete beta inverse: p must lie in [0, 1]");
    }
    return boost::math::ibeta_inv(a, b, p);
}

double beta_fn(double a, double b)
{
    check_shape(a, b);
    return boost::math::beta(a, b);
}

} // namespace pcsym
