#include "hcsos/chain.hpp"

#include "hcsos/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hcsos {

namespace {

void sort_by_modulus(std::array<double, 3>& ev)
{
    std::sort(ev.begin(), ev.end(), [](double a, double b) {
        if (std::abs(a) != std::abs(b))
            return std::abs(a) > std::abs(b);
        return a > b;
    });
}

double det3(const Matrix3& p)
{
    return p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1])
         - p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0])
         + p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0]);
}

double half_l1(const Row3& a, const Row3& b)
{
    return 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]));
}

}  // namespace

TransitionKernel TransitionKernel::from_matrix(const Matrix3& p, int k, double theta)
{
    for (const auto& row : p) {
        double sum = 0.0;
        for (double v : row) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw DomainError("transition entries must be finite and non-negative");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw DomainError("transition matrix rows must sum to 1");
    }
    if (p[0][2] != 0.0 || p[1][1] != 0.0 || p[2][0] != 0.0)
        throw DomainError("transition matrix violates the wand sparsity pattern");
    return TransitionKernel(p, TisgmSolution{}, k, theta);
}

TransitionKernel kernel_of(const TisgmSolution& sol, int k, double theta)
{
    require_order(k);
    require_coupling(theta);
    const double a = std::pow(sol.x, k);
    const double b = theta * std::pow(sol.y, k);
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InternalError("degenerate transition weights");

    Matrix3 p{};
    p[0] = {a / (a + b), b / (a + b), 0.0};
    p[1] = {a / (1.0 + a), 0.0, 1.0 / (1.0 + a)};
    p[2] = {0.0, b / (1.0 + b), 1.0 / (1.0 + b)};
    return TransitionKernel(p, sol, k, theta);
}

SpectrumReport spectrum_symmetric(double y, double theta, int k)
{
    const double t = theta * std::pow(y, k);
    const double lambda1 = -t / (t + 1.0);
    const double lambda2 = 1.0 / (t + 1.0);

    SpectrumReport r;
    r.eigenvalues = {1.0, lambda1, lambda2};
    sort_by_modulus(r.eigenvalues);
    r.s2_signed = theta <= 1.0 ? lambda2 : lambda1;
    r.s2 = std::abs(r.s2_signed);
    r.closed_form_used = true;
    return r;
}

SpectrumReport spectrum_asymmetric_k2(double x)
{
    if (!(x > 0.0))
        throw DomainError("spectrum_asymmetric_k2 requires x > 0");
    const double s = std::sqrt(2.0) * x / ((x + 1.0) * std::sqrt(x * x + 1.0));

    SpectrumReport r;
    r.eigenvalues = {1.0, s, -s};
    r.s2_signed = s;
    r.s2 = s;
    r.closed_form_used = true;
    return r;
}

SpectrumReport spectrum_numeric(const Matrix3& p)
{
    const double sum = p[0][0] + p[1][1] + p[2][2] - 1.0;
    const double prod = det3(p);
    const double disc = sum * sum - 4.0 * prod;

    SpectrumReport r;
    if (disc >= 0.0) {
        const double q = -0.5 * (-sum + std::copysign(std::sqrt(disc), -sum));
        // q is the root of larger modulus; the partner follows from the product
        const double mu1 = q;
        const double mu2 = q != 0.0 ? prod / q : 0.0;
        r.eigenvalues = {1.0, mu1, mu2};
        sort_by_modulus(r.eigenvalues);
        r.s2_signed = r.eigenvalues[1];
        r.s2 = std::abs(r.s2_signed);
    } else {
        const double re = 0.5 * sum;
        const double im = 0.5 * std::sqrt(-disc);
        r.eigenvalues = {1.0, re, re};
        r.complex_pair = im > kComplexTolerance;
        r.s2_signed = re;
        r.s2 = std::sqrt(re * re + im * im);
    }
    return r;
}

SpectrumReport spectrum_numeric(const TransitionKernel& kern) { return spectrum_numeric(kern.p()); }

Row3 stationary(const Matrix3& p)
{
    // Markov chain tree theorem: pi_i is proportional to the total weight of
    // spanning trees directed into i.  Only off-diagonal products appear, so
    // nothing cancels when a row is close to a unit vector.
    Row3 pi{p[1][0] * p[2][0] + p[1][0] * p[2][1] + p[1][2] * p[2][0],
            p[0][1] * p[2][1] + p[0][1] * p[2][0] + p[0][2] * p[2][1],
            p[0][2] * p[1][2] + p[0][2] * p[1][0] + p[0][1] * p[1][2]};
    const double total = pi[0] + pi[1] + pi[2];
    if (!(total > 0.0) || !std::isfinite(total))
        throw InternalError("stationary distribution solve is singular");
    for (double& v : pi) {
        v /= total;
        if (!(v > 0.0))
            throw InternalError("kernel is not irreducible");
    }
    return pi;
}

Row3 stationary(const TransitionKernel& kern) { return stationary(kern.p()); }

double kappa_of(const Matrix3& p)
{
    double best = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            best = std::max(best, half_l1(p[i], p[j]));
    return best;
}

double kappa_of(const TransitionKernel& kern) { return kappa_of(kern.p()); }

double gamma_of(const Matrix3& p)
{
    const double d01 = 0.5 * (std::abs(p[0][0] - p[1][0]) + std::abs(p[0][1] - p[1][1]) + std::abs(p[0][2] - p[1][2]));
    const double d12 = 0.5 * (std::abs(p[1][0] - p[2][0]) + std::abs(p[1][1] - p[2][1]) + std::abs(p[1][2] - p[2][2]));
    const double d02 = 0.5 * (std::abs(p[0][0] - p[2][0]) + std::abs(p[0][1] - p[2][1]) + std::abs(p[0][2] - p[2][2]));
    return std::max({d01, d12, d02});
}

double gamma_of(const TransitionKernel& kern) { return gamma_of(kern.p()); }

}  // namespace hcsos
