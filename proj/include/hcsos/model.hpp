#pragma once

#include <string_view>

namespace hcsos {

using Spin = int;

/// One model instance: Cayley tree order k, coupling theta = e^J and the
/// spin space {0, ..., m} with m even.
class ModelParams {
public:
    ModelParams(int k, double theta, int m = 2);

    int k() const noexcept { return k_; }
    double theta() const noexcept { return theta_; }
    int m() const noexcept { return m_; }

private:
    int k_;
    double theta_;
    int m_;
};

/// Throws DomainError unless k >= 2.
void require_order(int k);
/// Throws DomainError unless theta is finite and positive.
void require_coupling(double theta);

/// Edge relation of the wand graph on {0, ..., m}: neighbouring spins are
/// always joined, and even spins additionally carry a loop.
class WandAdmissibility {
public:
    explicit WandAdmissibility(int m = 2);

    int m() const noexcept { return m_; }
    bool admits(Spin i, Spin j) const;

private:
    int m_;
};

bool is_admissible(const WandAdmissibility& a, Spin i, Spin j);

/// Edge weights: 1 on even loops, theta between neighbouring spins, 0 elsewhere.
class Activity {
public:
    Activity(int m, double theta);

    int m() const noexcept { return graph_.m(); }
    double theta() const noexcept { return theta_; }
    const WandAdmissibility& graph() const noexcept { return graph_; }

    double operator()(Spin i, Spin j) const;

private:
    WandAdmissibility graph_;
    double theta_;
};

double activity_of(const Activity& a, Spin i, Spin j);

enum class Branch { Symmetric, Upper, Lower };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view s);

/// |x - 1| below this is tagged Symmetric.
inline constexpr double kBranchTolerance = 1e-9;

Branch branch_for(double x);

/// A positive solution (x, y) of the m = 2 translation-invariant system
///   x = (x^k + theta y^k) / (1 + theta y^k)
///   y = theta (x^k + 1) / (1 + theta y^k)
/// where x^k = z_0 and y^k = z_1 are the boundary-law entries.
struct TisgmSolution {
    double x = 1.0;
    double y = 1.0;
    Branch branch = Branch::Symmetric;
};

/// Largest scaled residual of the two equations above, each measured as
/// |lhs - rhs| / max(1, |lhs|, |rhs|).
double fixed_point_residual(const TisgmSolution& s, int k, double theta);

}  // namespace hcsos
