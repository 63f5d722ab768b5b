#include "hcsos/tisgm.hpp"

#include "hcsos/errors.hpp"
#include "hcsos/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace hcsos {

namespace {

// sum_{i=0}^{n-1} x^i by Horner accumulation; stays finite and exact-ish at x = 1.
double geometric_sum(double x, int n)
{
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc = acc * x + 1.0;
    return acc;
}

// sum_{i=1}^{k-1} x^i
double inner_sum(double x, int k) { return x * geometric_sum(x, k - 1); }

// Residual contract of every returned solution.
constexpr double kResidualTol = 1e-10;

TisgmSolution checked(TisgmSolution s, int k, double theta)
{
    const double r = fixed_point_residual(s, k, theta);
    if (!(r < kResidualTol))
        throw InternalError("fixed point residual " + std::to_string(r) + " exceeds tolerance");
    return s;
}

TisgmSolution asymmetric_from_x(double x, int k, double theta)
{
    const double y = std::pow(inner_sum(x, k) / theta, 1.0 / k);
    return {x, y, branch_for(x)};
}

}  // namespace

double theta_cr(int k)
{
    require_order(k);
    const double eta_max = (k - 1) * std::pow(k / 2.0, k);
    const double v = std::pow(eta_max, 1.0 / (k + 1));
    if (!std::isfinite(v))
        throw DomainError("theta_cr overflows for k = " + std::to_string(k));
    return v;
}

bool is_near_critical(int k, double theta) { return std::abs(theta - theta_cr(k)) < kCriticalBand; }

double eta(double x, int k)
{
    require_order(k);
    if (!(x > 0.0))
        throw DomainError("eta requires x > 0");
    // eta(x) = eta(1/x); evaluating on (0, 1] keeps every power bounded.
    if (x > 1.0)
        x = 1.0 / x;
    const double ratio = geometric_sum(x, k) / (std::pow(x, k) + 1.0);
    return inner_sum(x, k) * std::pow(ratio, k);
}

TisgmSolution solve_symmetric(int k, double theta)
{
    require_order(k);
    require_coupling(theta);

    auto f = [=](double y) { return theta * std::pow(y, k + 1) + y - 2.0 * theta; };
    auto df = [=](double y) { return (k + 1) * theta * std::pow(y, k) + 1.0; };
    const auto b = Bracket::certify(f, 0.0, std::pow(2.0, 1.0 / (k + 1)));
    const double y = find_root(f, df, b);
    return checked({1.0, y, Branch::Symmetric}, k, theta);
}

std::vector<TisgmSolution> solve_asymmetric(int k, double theta)
{
    require_order(k);
    require_coupling(theta);
    if (theta >= theta_cr(k) - kCriticalBand)
        return {};

    const double target = std::pow(theta, k + 1);
    auto eta_k = [k](double x) { return eta(x, k); };
    auto g = [&](double x) { return eta_k(x) - target; };
    const auto b = expand_bracket_decreasing(eta_k, 1.0, target);
    const double x_upper = find_root(g, b);
    if (!(x_upper > 1.0))
        throw InternalError("asymmetric root did not separate from x = 1");

    return {checked(asymmetric_from_x(x_upper, k, theta), k, theta),
            checked(asymmetric_from_x(1.0 / x_upper, k, theta), k, theta)};
}

std::vector<TisgmSolution> solve_k2_closed_form(double theta)
{
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("k = 2 asymmetric solutions exist only for 0 < theta < 1");
    const double t3 = theta * theta * theta;
    const double rho = (1.0 + std::sqrt(1.0 + 8.0 * t3)) / (2.0 * t3);
    const double root = std::sqrt(rho * rho - 4.0);
    const double x1 = 0.5 * (rho + root);
    // (rho - root) / 2 rewritten to avoid cancellation near rho = 2
    const double x2 = 2.0 / (rho + root);
    return {{x1, std::sqrt(x1 / theta), Branch::Upper}, {x2, std::sqrt(x2 / theta), Branch::Lower}};
}

double symmetric_root_closed_form(int k, double theta)
{
    require_coupling(theta);
    if (k == 2) {
        const double c = std::cbrt(3.0 * theta * std::sqrt(81.0 * std::pow(theta, 4) + 3.0 * theta)
                                   + 27.0 * theta * theta * theta);
        return c / (3.0 * theta) - 1.0 / c;
    }
    if (k == 3) {
        // resolvent cubic s^3 + 2 s - 1/(8 theta^2) = 0
        const double a = 1.0 / (16.0 * theta * theta);
        const double b = std::sqrt(a * a + 8.0 / 27.0);
        const double s = std::cbrt(a + b) - std::cbrt(b - a);
        return std::sqrt(1.0 / (2.0 * theta * std::sqrt(2.0 * s)) - 0.5 * s) - std::sqrt(0.5 * s);
    }
    throw Unsupported("closed-form symmetric root is available for k = 2, 3 only");
}

SolutionSet enumerate(int k, double theta)
{
    SolutionSet set;
    set.k = k;
    set.theta = theta;
    set.solutions.push_back(solve_symmetric(k, theta));
    set.critical = is_near_critical(k, theta);
    if (!set.critical) {
        auto asym = solve_asymmetric(k, theta);
        set.solutions.insert(set.solutions.end(), asym.begin(), asym.end());
    }
    return set;
}

BoundaryLaw::BoundaryLaw(std::vector<double> z) : z_(std::move(z))
{
    if (z_.size() < 3 || (z_.size() - 1) % 2 != 0)
        throw DomainError("boundary law needs m + 1 entries with m even and >= 2");
    for (double v : z_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("boundary law entries must be positive and finite");
    if (z_.back() != 1.0)
        throw DomainError("boundary law must be normalised with z_m = 1");
}

BoundaryLaw BoundaryLaw::ones(int m) { return BoundaryLaw(std::vector<double>(static_cast<std::size_t>(m) + 1, 1.0)); }

std::vector<double> boundary_law_map(const ModelParams& p, std::span<const double> z)
{
    const int m = p.m();
    if (static_cast<int>(z.size()) != m + 1)
        throw DomainError("boundary law size does not match m");
    const Activity lambda(m, p.theta());

    auto weighted = [&](int i) {
        double s = 0.0;
        for (int j = std::max(0, i - 1); j <= std::min(m, i + 1); ++j)
            s += lambda(i, j) * z[static_cast<std::size_t>(j)];
        return s;
    };

    const double norm = weighted(m);
    std::vector<double> out(z.size());
    for (int i = 0; i < m; ++i)
        out[static_cast<std::size_t>(i)] = std::pow(weighted(i) / norm, p.k());
    out.back() = 1.0;
    return out;
}

double boundary_law_residual(const ModelParams& p, const BoundaryLaw& z)
{
    const auto image = boundary_law_map(p, z.values());
    double r = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i)
        r = std::max(r, std::abs(image[i] - z[i]));
    return r;
}

BoundaryLawIteration iterate_boundary_law(const ModelParams& p, const BoundaryLaw& init, int max_iter, double tol)
{
    if (init.m() != p.m())
        throw DomainError("initial boundary law size does not match m");
    if (max_iter < 1 || !(tol > 0.0))
        throw DomainError("iteration requires max_iter >= 1 and tol > 0");

    BoundaryLawIteration out;
    std::vector<double> z(init.values().begin(), init.values().end());
    std::deque<std::vector<double>> tail;

    for (int it = 1; it <= max_iter; ++it) {
        auto next = boundary_law_map(p, z);
        out.iterations = it;

        bool finite = true;
        for (double v : next) {
            if (!std::isfinite(v)) {
                finite = false;
                break;
            }
            if (!(v > 0.0))
                throw NumericalDomainError("boundary-law iterate reached a non-positive entry at step "
                                           + std::to_string(it));
        }
        if (!finite) {
            out.reason = "overflow";
            break;
        }

        double step = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            step = std::max(step, std::abs(next[i] - z[i]));
        out.last_step = step;
        z = std::move(next);

        tail.push_back(z);
        if (tail.size() > kTrajectoryTail)
            tail.pop_front();

        if (step < tol) {
            out.converged = true;
            out.reason = "converged";
            break;
        }
    }
    if (out.reason.empty())
        out.reason = "max_iter";

    out.law = z;
    out.tail.assign(tail.begin(), tail.end());
    out.residual = boundary_law_residual(p, BoundaryLaw(z));
    return out;
}

TisgmSolution solution_from_law(std::span<const double> z, int k)
{
    if (z.size() != 3)
        throw DomainError("solution_from_law expects an m = 2 boundary law");
    const double x = std::pow(z[0], 1.0 / k);
    return {x, std::pow(z[1], 1.0 / k), branch_for(x)};
}

}  // namespace hcsos
