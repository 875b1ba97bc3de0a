#include "pcsym/distribution.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include "pcsym/error.hpp"
#include "pcsym/incomplete_beta.hpp"
#include "pcsym/quadrature.hpp"

namespace pcsym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, const char *what)
{
    if (!(value > 0) || !std::isfinite(value)) {
        throw InvalidConstruction(std::string(what) + " must be positive and finite");
    }
}

void require_finite_center(double center)
{
    if (!std::isfinite(center)) {
        throw InvalidConstruction("center must be finite");
    }
}

bool same_center(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Largest integer shape for which a Beta(k, k) variate is drawn as the
// middle order statistic of 2k - 1 uniforms.
constexpr int kMaxOrderStatShape = 32;

// A Beta(alpha + 1, alpha + 1) variate in (0, 1).
// A Beta(alpha + 1, alpha + 1) draw as (v, 1 - v), both sides kept accurate.
std::pair<double, double> draw_symmetric_beta(double alpha, Stream &rng)
{
    if (alpha == 0) {
        const double u = rng.uniform();
        return {u, 1 - u};
    }
    if (alpha == -0.5) {
        const double phi = std::numbers::pi * rng.uniform() / 2;
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        return {s * s, c * c};
    }
    const double shape = alpha + 1;
    if (shape == std::floor(shape) && shape <= kMaxOrderStatShape) {
        const int k = static_cast<int>(shape);
        std::array<double, 2 * kMaxOrderStatShape - 1> u{};
        const int n = 2 * k - 1;
        for (int j = 0; j < n; ++j) {
            u[j] = rng.uniform();
        }
        std::nth_element(u.begin(), u.begin() + (k - 1), u.begin() + n);
        return {u[k - 1], 1 - u[k - 1]};
    }
    std::gamma_distribution<double> gamma(shape, 1.0);
    const double g1 = gamma(rng);
    const double g2 = gamma(rng);
    return {g1 / (g1 + g2), g2 / (g1 + g2)};
}

} // namespace

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::Uniform: return "uniform";
    case Family::Normal: return "normal";
    case Family::Logistic: return "logistic";
    case Family::Laplace: return "laplace";
    case Family::BetaGenerated: return "beta_generated";
    case Family::Mixture: return "mixture";
    }
    return "unknown";
}

Family family_from_string(std::string_view name)
{
    std::string key;
    for (char c : name) {
        if (c == '-' || c == ' ') {
            c = '_';
        }
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "uniform") return Family::Uniform;
    if (key == "normal" || key == "gaussian") return Family::Normal;
    if (key == "logistic") return Family::Logistic;
    if (key == "laplace") return Family::Laplace;
    if (key == "beta_generated" || key == "betagenerated") return Family::BetaGenerated;
    if (key == "mixture") return Family::Mixture;
    throw InvalidConstruction("unknown distribution family '" + std::string(name) + "'");
}

Distribution Distribution::uniform(double center, double half_width)
{
    require_finite_center(center);
    require_positive(half_width, "uniform half-width");
    return {center, UniformParams{half_width}};
}

Distribution Distribution::normal(double center, double sigma)
{
    require_finite_center(center);
    require_positive(sigma, "normal sigma");
    return {center, NormalParams{sigma}};
}

Distribution Distribution::logistic(double center, double scale)
{
    require_finite_center(center);
    require_positive(scale, "logistic scale");
    return {center, LogisticParams{scale}};
}

Distribution Distribution::laplace(double center, double scale)
{
    require_finite_center(center);
    require_positive(scale, "laplace scale");
    return {center, LaplaceParams{scale}};
}

Distribution Distribution::beta_generated(double alpha, const Distribution &parent)
{
    if (!(alpha > -1) || !std::isfinite(alpha)) {
        throw InvalidConstruction("beta-generated exponent must satisfy alpha > -1");
    }
    return {parent.center(), BetaGeneratedParams{alpha, std::make_shared<const Distribution>(parent)}};
}

Distribution make_mixture(std::vector<Distribution> components, std::vector<double> weights)
{
    if (components.empty()) {
        throw InvalidConstruction("mixture needs at least one component");
    }
    if (components.size() != weights.size()) {
        throw InvalidConstruction("mixture needs one weight per component");
    }
    const double center = components.front().center();
    double total = 0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        if (!same_center(components[k].center(), center)) {
            throw InvalidConstruction("mixture components must share a center");
        }
        if (!(weights[k] >= 0) || !std::isfinite(weights[k])) {
            throw InvalidConstruction("mixture weights must be nonnegative");
        }
        total += weights[k];
    }
    if (std::abs(total - 1) > 1e-12) {
        throw InvalidConstruction("mixture weights must sum to 1");
    }
    return Distribution(center, MixtureParams{std::move(components), std::move(weights)});
}

Family Distribution::family() const
{
    return std::visit(overloaded{
                          [](const UniformParams &) { return Family::Uniform; },
                          [](const NormalParams &) { return Family::Normal; },
                          [](const LogisticParams &) { return Family::Logistic; },
                          [](const LaplaceParams &) { return Family::Laplace; },
                          [](const BetaGeneratedParams &) { return Family::BetaGenerated; },
                          [](const MixtureParams &) { return Family::Mixture; },
                      },
                      params_);
}

double Distribution::half_width() const
{
    return std::visit(overloaded{
                          [](const UniformParams &p) { return p.half_width; },
                          [](const BetaGeneratedParams &p) { return p.parent->half_width(); },
                          [](const MixtureParams &p) {
                              double w = 0;
                              for (const auto &c : p.components) {
                                  w = std::max(w, c.half_width());
                              }
                              return w;
                          },
                          [](const auto &) { return kInf; },
                      },
                      params_);
}

bool Distribution::bounded() const { return std::isfinite(half_width()); }

double Distribution::scale() const
{
    return std::visit(overloaded{
                          [](const UniformParams &p) { return p.half_width; },
                          [](const NormalParams &p) { return p.sigma; },
                          [](const LogisticParams &p) { return p.scale; },
                          [](const LaplaceParams &p) { return p.scale; },
                          [](const auto &) -> double {
                              throw UnsupportedError("composite distributions have no single scale");
                          },
                      },
                      params_);
}

const BetaGeneratedParams &Distribution::beta_generated_params() const
{
    if (const auto *p = std::get_if<BetaGeneratedParams>(&params_)) {
        return *p;
    }
    throw PreconditionError("not a beta-generated distribution");
}

const MixtureParams &Distribution::mixture_params() const
{
    if (const auto *p = std::get_if<MixtureParams>(&params_)) {
        return *p;
    }
    throw PreconditionError("not a mixture distribution");
}

double Distribution::tail(double t) const
{
    if (t <= 0) {
        return t == 0 ? 0.5 : 1.0 - tail(-t);
    }
    return std::visit(overloaded{
                          [t](const UniformParams &p) {
                              return t >= p.half_width ? 0.0 : (p.half_width - t) / (2 * p.half_width);
                          },
                          [t](const NormalParams &p) {
                              return 0.5 * std::erfc(t / (p.sigma * std::numbers::sqrt2));
                          },
                          [t](const LogisticParams &p) { return 1.0 / (1.0 + std::exp(t / p.scale)); },
                          [t](const LaplaceParams &p) { return 0.5 * std::exp(-t / p.scale); },
                          [t](const BetaGeneratedParams &p) {
                              const double shape = p.alpha + 1;
                              return reg_inc_beta(shape, shape, p.parent->tail(t));
                          },
                          [t](const MixtureParams &p) {
                              double s = 0;
                              for (std::size_t k = 0; k < p.components.size(); ++k) {
                                  s += p.weights[k] * p.components[k].tail(t);
                              }
                              return s;
                          },
                      },
                      params_);
}

double Distribution::cdf(double x) const
{
    const double z = x - center_;
    return z <= 0 ? tail(-z) : 1.0 - tail(z);
}

double Distribution::density_at_offset(double t) const
{
    t = std::abs(t);
    return std::visit(overloaded{
                          [t](const UniformParams &p) { return t < p.half_width ? 0.5 / p.half_width : 0.0; },
                          [t](const NormalParams &p) {
                              const double z = t / p.sigma;
                              return std::exp(-0.5 * z * z) / (p.sigma * std::sqrt(2 * std::numbers::pi));
                          },
                          [t](const LogisticParams &p) {
                              const double e = std::exp(-t / p.scale);
                              return e / (p.scale * (1 + e) * (1 + e));
                          },
                          [t](const LaplaceParams &p) { return std::exp(-t / p.scale) / (2 * p.scale); },
                          [t](const BetaGeneratedParams &p) {
                              const double f = p.parent->density_at_offset(t);
                              if (f == 0) {
                                  return 0.0;
                              }
                              const double lower = p.parent->tail(t);
                              const double shape = p.alpha + 1;
                              return f * std::pow(lower * (1 - lower), p.alpha) / beta_fn(shape, shape);
                          },
                          [t](const MixtureParams &p) {
                              double s = 0;
                              for (std::size_t k = 0; k < p.components.size(); ++k) {
                                  s += p.weights[k] * p.components[k].density_at_offset(t);
                              }
                              return s;
                          },
                      },
                      params_);
}

double Distribution::pdf(double x) const { return density_at_offset(x - center_); }

double Distribution::upper_offset(double q) const
{
    if (!(q > 0 && q <= 0.5)) {
        throw DomainError("upper_offset: q must lie in (0, 1/2]");
    }
    if (q == 0.5) {
        return 0;
    }
    return std::visit(overloaded{
                          [q](const UniformParams &p) { return p.half_width * (1 - 2 * q); },
                          [q](const NormalParams &p) {
                              return p.sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2 * q);
                          },
                          [q](const LogisticParams &p) { return p.scale * (std::log1p(-q) - std::log(q)); },
                          [q](const LaplaceParams &p) { return -p.scale * std::log(2 * q); },
                          [q](const BetaGeneratedParams &p) {
                              double v;
                              if (p.alpha == 0) {
                                  v = q;
                              } else if (p.alpha == -0.5) {
                                  const double s = std::sin(std::numbers::pi * q / 2);
                                  v = s * s;
                              } else if (q < 1e-60) {
                                  // I_v(s, s) = v^s / (s B(s, s)) (1 + O(v)); the inverse iteration stalls here.
                                  const double s = p.alpha + 1;
                                  v = std::exp((std::log(q) + std::log(s) + std::log(beta_fn(s, s))) / s);
                              } else {
                                  v = reg_inc_beta_inv(p.alpha + 1, p.alpha + 1, q);
                              }
                              // v can round to 0 deep in the tail; the parent offset diverges there.
                              v = std::max(v, std::numeric_limits<double>::min());
                              return p.parent->upper_offset(std::min(v, 0.5));
                          },
                          [q, this](const MixtureParams &p) {
                              double lo = kInf;
                              double hi = 0;
                              for (const auto &c : p.components) {
                                  const double t = c.upper_offset(q);
                                  lo = std::min(lo, t);
                                  hi = std::max(hi, t);
                              }
                              if (hi - lo <= 1e-15 * std::max(1.0, hi)) {
                                  return lo;
                              }
                              // Component quantiles carry rounding error; widen so the bracket holds.
                              lo *= 1 - 1e-12;
                              hi *= 1 + 1e-12;
                              std::uintmax_t iterations = 200;
                              auto f = [&](double t) { return tail(t) - q; };
                              const auto [a, b] = boost::math::tools::toms748_solve(
                                  f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
                              if (iterations >= 200) {
                                  throw ConvergenceError("mixture quantile: root finder hit its iteration cap");
                              }
                              return 0.5 * (a + b);
                          },
                      },
                      params_);
}

double Distribution::quantile(double p) const
{
    if (!(p > 0 && p < 1)) {
        throw DomainError("quantile: p must lie in (0, 1), got " + std::to_string(p));
    }
    return p <= 0.5 ? center_ - upper_offset(p) : center_ + upper_offset(1 - p);
}

double Distribution::variance() const
{
    const double v = std::visit(
        overloaded{
            [](const UniformParams &p) { return p.half_width * p.half_width / 3; },
            [](const NormalParams &p) { return p.sigma * p.sigma; },
            [](const LogisticParams &p) { return std::numbers::pi * std::numbers::pi * p.scale * p.scale / 3; },
            [](const LaplaceParams &p) { return 2 * p.scale * p.scale; },
            [](const BetaGeneratedParams &p) {
                // 2 * int_0^{1/2} offset(u)^2 * Beta(alpha+1, alpha+1) density du, with u = parent tail.
                const double shape = p.alpha + 1;
                const double norm = beta_fn(shape, shape);
                auto integrand = [&](double u, double uc) {
                    const double left = u < 0.25 ? -uc : u;
                    if (!(left > 0)) {
                        return 0.0;
                    }
                    const double t = p.parent->upper_offset(std::min(left, 0.5));
                    return t * t * std::pow(left * (1 - left), p.alpha) / norm;
                };
                return 2 * integrate_singular(integrand, 0.0, 0.5).value;
            },
            [](const MixtureParams &p) {
                double s = 0;
                for (std::size_t k = 0; k < p.components.size(); ++k) {
                    if (p.weights[k] > 0) {
                        s += p.weights[k] * p.components[k].variance();
                    }
                }
                return s;
            },
        },
        params_);
    if (!std::isfinite(v)) {
        throw UnsupportedError("variance is not finite");
    }
    return v;
}

double Distribution::draw_offset_quantile(Stream &rng) const
{
    const double u = rng.uniform();
    return u <= 0.5 ? center_ - upper_offset(u) : center_ + upper_offset(1 - u);
}

double Distribution::draw(Stream &rng) const
{
    if (const auto *bg = std::get_if<BetaGeneratedParams>(&params_)) {
        const auto [v, w] = draw_symmetric_beta(bg->alpha, rng);
        const Distribution &parent = *bg->parent;
        if (v <= 0.5) {
            return center_ - parent.upper_offset(std::max(v, std::numeric_limits<double>::min()));
        }
        return center_ + parent.upper_offset(std::max(w, std::numeric_limits<double>::min()));
    }
    if (const auto *mix = std::get_if<MixtureParams>(&params_)) {
        const double u = rng.uniform();
        double acc = 0;
        std::size_t pick = mix->components.size() - 1;
        for (std::size_t k = 0; k < mix->components.size(); ++k) {
            acc += mix->weights[k];
            if (u < acc) {
                pick = k;
                break;
            }
        }
        return mix->components[pick].draw(rng);
    }
    return draw_offset_quantile(rng);
}

std::vector<double> Distribution::sample(std::size_t n, Stream &rng) const
{
    std::vector<double> out(n);
    for (auto &x : out) {
        x = draw(rng);
    }
    return out;
}

std::vector<double> Distribution::kinks() const
{
    return std::visit(overloaded{
                          [](const UniformParams &p) { return std::vector<double>{p.half_width}; },
                          [](const BetaGeneratedParams &p) { return p.parent->kinks(); },
                          [](const MixtureParams &p) {
                              std::vector<double> out;
                              for (const auto &c : p.components) {
                                  const auto k = c.kinks();
                                  out.insert(out.end(), k.begin(), k.end());
                              }
                              std::sort(out.begin(), out.end());
                              out.erase(std::unique(out.begin(), out.end()), out.end());
                              return out;
                          },
                          [](const auto &) { return std::vector<double>{}; },
                      },
                      params_);
}

TwoPiece::TwoPiece(Distribution base, double left_scale, double right_scale)
    : base_(std::move(base)), left_(left_scale), right_(right_scale)
{
    require_positive(left_scale, "two-piece left scale");
    require_positive(right_scale, "two-piece right scale");
}

double TwoPiece::cdf(double x) const
{
    const double z = x - center();
    return z <= 0 ? base_.tail(-z / left_) : 1.0 - base_.tail(z / right_);
}

double TwoPiece::quantile(double p) const
{
    if (!(p > 0 && p < 1)) {
        throw DomainError("quantile: p must lie in (0, 1)");
    }
    return p <= 0.5 ? center() - left_ * base_.upper_offset(p) : center() + right_ * base_.upper_offset(1 - p);
}

double TwoPiece::draw(Stream &rng) const
{
    const double b = base_.draw(rng) - center();
    return center() + (b < 0 ? left_ * b : right_ * b);
}

double draw(const Law &law, Stream &rng)
{
    return std::visit([&rng](const auto &d) { return d.draw(rng); }, law);
}

double center_of(const Law &law)
{
    return std::visit([](const auto &d) { return d.center(); }, law);
}

} // namespace pcsym
