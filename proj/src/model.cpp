#include "hcsos/model.hpp"

#include "hcsos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcsos {

void require_order(int k)
{
    if (k < 2)
        throw DomainError("tree order k must be >= 2, got " + std::to_string(k));
}

void require_coupling(double theta)
{
    if (!std::isfinite(theta) || theta <= 0.0)
        throw DomainError("coupling theta must be positive and finite");
}

namespace {

void require_spin_space(int m)
{
    if (m < 2 || m % 2 != 0)
        throw DomainError("spin-space parameter m must be even and >= 2, got " + std::to_string(m));
}

void require_spin(int m, Spin s)
{
    if (s < 0 || s > m)
        throw DomainError("spin " + std::to_string(s) + " outside {0.." + std::to_string(m) + "}");
}

}  // namespace

ModelParams::ModelParams(int k, double theta, int m)
    : k_(k), theta_(theta), m_(m)
{
    require_order(k);
    require_coupling(theta);
    require_spin_space(m);
}

WandAdmissibility::WandAdmissibility(int m) : m_(m) { require_spin_space(m); }

bool WandAdmissibility::admits(Spin i, Spin j) const
{
    require_spin(m_, i);
    require_spin(m_, j);
    if (i == j)
        return i % 2 == 0;
    return std::abs(i - j) == 1;
}

bool is_admissible(const WandAdmissibility& a, Spin i, Spin j) { return a.admits(i, j); }

Activity::Activity(int m, double theta) : graph_(m), theta_(theta) { require_coupling(theta); }

double Activity::operator()(Spin i, Spin j) const
{
    if (!graph_.admits(i, j))
        return 0.0;
    return i == j ? 1.0 : theta_;
}

double activity_of(const Activity& a, Spin i, Spin j) { return a(i, j); }

std::string_view to_string(Branch b)
{
    switch (b) {
    case Branch::Symmetric: return "symmetric";
    case Branch::Upper: return "upper";
    case Branch::Lower: return "lower";
    }
    return "?";
}

Branch parse_branch(std::string_view s)
{
    if (s == "symmetric") return Branch::Symmetric;
    if (s == "upper") return Branch::Upper;
    if (s == "lower") return Branch::Lower;
    throw DomainError("unknown branch '" + std::string(s) + "'");
}

Branch branch_for(double x)
{
    if (std::abs(x - 1.0) < kBranchTolerance)
        return Branch::Symmetric;
    return x > 1.0 ? Branch::Upper : Branch::Lower;
}

double fixed_point_residual(const TisgmSolution& s, int k, double theta)
{
    const double xk = std::pow(s.x, k);
    const double ty = theta * std::pow(s.y, k);
    const double den = 1.0 + ty;

    auto scaled = [](double lhs, double rhs) {
        return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    };
    return std::max(scaled(s.x, (xk + ty) / den), scaled(s.y, theta * (xk + 1.0) / den));
}

}  // namespace hcsos
