#include "hcsos/extremality.hpp"

#include "hcsos/chain.hpp"
#include "hcsos/errors.hpp"
#include "hcsos/rootfind.hpp"
#include "hcsos/tisgm.hpp"

#include <cmath>

namespace hcsos {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Extreme: return "Extreme";
    case Verdict::NonExtreme: return "NonExtreme";
    case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string_view to_string(Measure m)
{
    switch (m) {
    case Measure::Mu0: return "mu0";
    case Measure::Mu1: return "mu1";
    case Measure::Mu2: return "mu2";
    }
    return "?";
}

Verdict parse_verdict(std::string_view s)
{
    if (s == "Extreme") return Verdict::Extreme;
    if (s == "NonExtreme") return Verdict::NonExtreme;
    if (s == "Undetermined") return Verdict::Undetermined;
    throw DomainError("unknown verdict '" + std::string(s) + "'");
}

Measure parse_measure(std::string_view s)
{
    if (s == "mu0") return Measure::Mu0;
    if (s == "mu1") return Measure::Mu1;
    if (s == "mu2") return Measure::Mu2;
    throw DomainError("unknown measure '" + std::string(s) + "'");
}

CriterionValue kesten_stigum(int k, double s2)
{
    const double v = k * s2 * s2;
    return {v > 1.0, v};
}

CriterionValue msw_extreme(int k, double kappa, double gamma)
{
    const double v = k * kappa * gamma;
    return {v < 1.0, v};
}

namespace {

Verdict decide(double ks_value, double msw_value, double tol, bool allow_non_extreme = true)
{
    if (msw_value < 1.0 - tol)
        return Verdict::Extreme;
    if (allow_non_extreme && ks_value > 1.0 + tol)
        return Verdict::NonExtreme;
    return Verdict::Undetermined;
}

ExtremalityVerdict assemble(Measure m, int k, const TransitionKernel& kern, const SpectrumReport& spec)
{
    ExtremalityVerdict v;
    v.measure = m;
    v.s2 = spec.s2;
    v.kappa = kappa_of(kern);
    v.gamma = gamma_of(kern);
    v.ks_value = kesten_stigum(k, v.s2).value;
    v.msw_value = msw_extreme(k, v.kappa, v.gamma).value;
    return v;
}

double symmetric_t(int k, double theta)
{
    const auto sol = solve_symmetric(k, theta);
    return theta * std::pow(sol.y, k);
}

TisgmSolution asymmetric_member(int k, double theta, Measure which)
{
    if (which == Measure::Mu0)
        throw DomainError("expected an asymmetric measure");
    auto pair = solve_asymmetric(k, theta);
    if (pair.empty())
        throw MeasureNotFound(std::string(to_string(which)) + " does not exist for theta >= theta_cr(k)");
    return which == Measure::Mu1 ? pair[0] : pair[1];
}

}  // namespace

ExtremalityVerdict classify_mu0(int k, double theta, double boundary_tol)
{
    const auto sol = solve_symmetric(k, theta);
    const auto kern = kernel_of(sol, k, theta);
    auto v = assemble(Measure::Mu0, k, kern, spectrum_symmetric(sol.y, theta, k));
    v.verdict = decide(v.ks_value, v.msw_value, boundary_tol);
    return v;
}

ExtremalityVerdict classify_mu12_k2(double theta, Measure which, double boundary_tol)
{
    if (!(theta > 0.0 && theta < 1.0))
        throw MeasureNotFound("mu1 and mu2 exist only for 0 < theta < theta_cr(2) = 1");
    if (which == Measure::Mu0)
        throw DomainError("classify_mu12_k2 handles mu1 and mu2 only");

    const auto pair = solve_k2_closed_form(theta);
    const auto& sol = which == Measure::Mu1 ? pair[0] : pair[1];
    const auto kern = kernel_of(sol, 2, theta);
    auto v = assemble(which, 2, kern, spectrum_asymmetric_k2(sol.x));
    v.verdict = decide(v.ks_value, v.msw_value, boundary_tol, /*allow_non_extreme=*/false);
    return v;
}

ExtremalityVerdict classify_asymmetric(int k, double theta, Measure which, double boundary_tol)
{
    const auto sol = asymmetric_member(k, theta, which);
    const auto kern = kernel_of(sol, k, theta);
    auto v = assemble(which, k, kern, spectrum_numeric(kern));
    v.verdict = v.ks_value > 1.0 + boundary_tol ? Verdict::NonExtreme : Verdict::Undetermined;
    return v;
}

ExtremalityVerdict classify(int k, double theta, Measure which, double boundary_tol)
{
    require_order(k);
    require_coupling(theta);
    if (which == Measure::Mu0)
        return classify_mu0(k, theta, boundary_tol);
    if (theta >= theta_cr(k) - kCriticalBand)
        throw MeasureNotFound(std::string(to_string(which)) + " does not exist for theta >= theta_cr("
                              + std::to_string(k) + ")");
    if (k == 2)
        return classify_mu12_k2(theta, which, boundary_tol);
    return classify_asymmetric(k, theta, which, boundary_tol);
}

double h_func(int k, double theta)
{
    if (!(theta > 0.0 && theta <= 1.0))
        throw DomainError("h_func requires 0 < theta <= 1");
    const double t = symmetric_t(k, theta);
    return k / ((t + 1.0) * (t + 1.0)) - 1.0;
}

double q_func(int k, double theta)
{
    if (!(theta >= 1.0) || !std::isfinite(theta))
        throw DomainError("q_func requires theta >= 1");
    const double t = symmetric_t(k, theta);
    const double r = t / (t + 1.0);
    return k * r * r - 1.0;
}

double msw_margin_k2(double theta)
{
    const auto kern = kernel_of(asymmetric_member(2, theta, Measure::Mu1), 2, theta);
    const double kappa = kappa_of(kern);
    return 2.0 * kappa * kappa - 1.0;
}

const Threshold& ThresholdTable::at(std::string_view name) const
{
    for (const auto& t : entries)
        if (t.name == name)
            return t;
    throw DomainError("no threshold named '" + std::string(name) + "' for k = " + std::to_string(k));
}

namespace {

constexpr double kThresholdTol = 1e-13;

double root_of_h(int k)
{
    auto h = [k](double th) { return h_func(k, th); };
    return find_root(h, Bracket::certify(h, 1e-3, 1.0), {kThresholdTol, 200, true});
}

double root_of_q(int k)
{
    auto minus_q = [k](double th) { return -q_func(k, th); };
    auto q = [k](double th) { return q_func(k, th); };
    const auto b = expand_bracket_decreasing(minus_q, 1.0, 0.0);
    return find_root(q, Bracket::certify(q, b.lo(), b.hi()), {kThresholdTol, 200, true});
}

double root_of_msw_k2()
{
    // 2 kappa^2 - 1 runs from +1 (theta -> 0) to -1/2 (theta -> 1)
    return find_root(msw_margin_k2, Bracket::certify(msw_margin_k2, 0.5, 0.999), {kThresholdTol, 200, true});
}

}  // namespace

ThresholdTable thresholds(int k)
{
    ThresholdTable table;
    table.k = k;
    const double r2 = std::sqrt(2.0);
    if (k == 2) {
        table.entries.push_back({"theta1", root_of_h(2), 0.5 * std::cbrt(4.0 * r2 - 4.0), 0.5916});
        table.entries.push_back({"theta2", root_of_q(2), 0.5 * std::cbrt(28.0 + 20.0 * r2), 1.9161});
        table.entries.push_back({"theta5", root_of_msw_k2(),
                                 std::cbrt((2.0 + std::sqrt(2.0 + 2.0 * r2)) / (2.0 + 2.0 * r2)), 0.954});
        return table;
    }
    if (k == 3) {
        table.entries.push_back({"theta3", root_of_h(3), std::nullopt, 0.801});
        table.entries.push_back({"theta4", root_of_q(3), std::nullopt, 1.8462});
        return table;
    }
    throw Unsupported("thresholds exist for k = 2, 3 only; for k >= 4 mu0 is non-extreme for every theta");
}

}  // namespace hcsos
