#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "pcsym/random.hpp"

namespace pcsym {

enum class Family { Uniform, Normal, Logistic, Laplace, BetaGenerated, Mixture };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

class Distribution;

/// Density proportional to f(x) [F(x)(1 - F(x))]^alpha of a symmetric parent.
struct BetaGeneratedParams {
    double alpha = 0;
    std::shared_ptr<const Distribution> parent;
};

struct MixtureParams {
    std::vector<Distribution> components;
    std::vector<double> weights;
};

/// A continuous distribution symmetric about center(). Immutable once built,
/// so values can be copied and shared across threads freely.
///
/// Offsets are measured from the center: tail(t) = P(X - center < -t) and, by
/// symmetry, P(X - center > t). Working in offsets keeps both tails accurate.
class Distribution {
public:
    static Distribution uniform(double center, double half_width);
    static Distribution normal(double center, double sigma);
    static Distribution logistic(double center, double scale);
    static Distribution laplace(double center, double scale);
    /// Throws InvalidConstruction unless alpha > -1.
    static Distribution beta_generated(double alpha, const Distribution &parent);

    Family family() const;
    double center() const { return center_; }

    /// Half-width a of the support (center - a, center + a); +inf if unbounded.
    double half_width() const;
    bool bounded() const;

    /// The family's own scale (half-width, sigma or scale). Throws for
    /// BetaGenerated and Mixture.
    double scale() const;

    const BetaGeneratedParams &beta_generated_params() const;
    const MixtureParams &mixture_params() const;

    double cdf(double x) const;
    double pdf(double x) const;
    /// Throws DomainError unless 0 < p < 1.
    double quantile(double p) const;

    /// P(X - center < -t) for t >= 0.
    double tail(double t) const;
    /// Density at center + t (equivalently center - t).
    double density_at_offset(double t) const;
    /// The t >= 0 with tail(t) = q, for q in (0, 1/2].
    double upper_offset(double q) const;
    /// P(|X - center| <= t).
    double central_mass(double t) const { return t <= 0 ? 0.0 : 1.0 - 2.0 * tail(t); }

    /// Throws UnsupportedError if the variance is not finite.
    double variance() const;

    /// One inverse-cdf draw.
    double draw(Stream &rng) const;
    std::vector<double> sample(std::size_t n, Stream &rng) const;

    /// Offsets t > 0 at which the cdf has a kink (edges of bounded components).
    std::vector<double> kinks() const;

    friend Distribution make_mixture(std::vector<Distribution> components, std::vector<double> weights);

private:
    struct UniformParams {
        double half_width;
    };
    struct NormalParams {
        double sigma;
    };
    struct LogisticParams {
        double scale;
    };
    struct LaplaceParams {
        double scale;
    };
    using Params = std::variant<UniformParams, NormalParams, LogisticParams, LaplaceParams, BetaGeneratedParams, MixtureParams>;

    Distribution(double center, Params params) : center_(center), params_(std::move(params)) {}

    double draw_offset_quantile(Stream &rng) const;

    double center_;
    Params params_;
};

/// Weighted mixture of components sharing one center. Throws
/// InvalidConstruction on mismatched centers, negative weights or weights
/// that do not sum to 1 within 1e-12.
Distribution make_mixture(std::vector<Distribution> components, std::vector<double> weights);

/// Asymmetric law with median at base.center(): the lower half of `base` is
/// stretched by left_scale and the upper half by right_scale. With
/// left_scale <= right_scale it is right-skewed, P(X < c - t) <= P(X > c + t).
class TwoPiece {
public:
    TwoPiece(Distribution base, double left_scale, double right_scale);

    const Distribution &base() const { return base_; }
    double center() const { return base_.center(); }
    double left_scale() const { return left_; }
    double right_scale() const { return right_; }

    double cdf(double x) const;
    double quantile(double p) const;
    double draw(Stream &rng) const;

    /// Support edges as offsets below and above the center.
    double lower_half_width() const { return left_ * base_.half_width(); }
    double upper_half_width() const { return right_ * base_.half_width(); }

private:
    Distribution base_;
    double left_;
    double right_;
};

/// Anything a Monte Carlo replication can draw from.
using Law = std::variant<Distribution, TwoPiece>;

double draw(const Law &law, Stream &rng);
double center_of(const Law &law);

} // namespace pcsym
