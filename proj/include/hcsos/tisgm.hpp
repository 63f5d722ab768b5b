#pragma once

#include "hcsos/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace hcsos {

/// Critical coupling ((k-1) k^k / 2^k)^(1/(k+1)); two asymmetric fixed points
/// exist strictly below it.
double theta_cr(int k);

/// Half-width of the band around theta_cr(k) in which the asymmetric pair is
/// not separated from x = 1 and only the symmetric solution is reported.
inline constexpr double kCriticalBand = 1e-9;

bool is_near_critical(int k, double theta);

/// eta(x) = (sum_{i=1}^{k-1} x^i) (sum_{i=0}^{k-1} x^i)^k / (x^k + 1)^k.
/// Asymmetric fixed points are the solutions of eta(x) = theta^(k+1).
double eta(double x, int k);

/// Symmetric solution (1, y*) where y* is the unique positive root of
/// theta y^(k+1) + y - 2 theta.
TisgmSolution solve_symmetric(int k, double theta);

/// Upper (x > 1) and lower (x = 1/x_upper) solutions, or empty when
/// theta >= theta_cr(k) - kCriticalBand.
std::vector<TisgmSolution> solve_asymmetric(int k, double theta);

/// k = 2 pair from rho = x + 1/x = (1 + sqrt(1 + 8 theta^3)) / (2 theta^3).
std::vector<TisgmSolution> solve_k2_closed_form(double theta);

/// Cardano (k = 2) and Ferrari (k = 3) expressions for the symmetric root.
double symmetric_root_closed_form(int k, double theta);

struct SolutionSet {
    int k = 2;
    double theta = 1.0;
    bool critical = false;  ///< theta within kCriticalBand of theta_cr(k)
    std::vector<TisgmSolution> solutions;  ///< symmetric, upper, lower
};

SolutionSet enumerate(int k, double theta);

/// Translation-invariant boundary law z = (z_0, ..., z_m) with z_m = 1.
class BoundaryLaw {
public:
    explicit BoundaryLaw(std::vector<double> z);
    static BoundaryLaw ones(int m);

    int m() const noexcept { return static_cast<int>(z_.size()) - 1; }
    std::span<const double> values() const noexcept { return z_; }
    double operator[](std::size_t i) const { return z_.at(i); }

private:
    std::vector<double> z_;
};

/// One application of the translation-invariant compatibility map
///   z_i <- (sum_j lambda_ij z_j / sum_j lambda_mj z_j)^k.
/// Returns the raw image; entries may be non-finite on overflow.
std::vector<double> boundary_law_map(const ModelParams& p, std::span<const double> z);

/// max_i |F(z)_i - z_i|
double boundary_law_residual(const ModelParams& p, const BoundaryLaw& z);

struct BoundaryLawIteration {
    bool converged = false;
    std::string reason;        ///< "converged", "max_iter" or "overflow"
    int iterations = 0;
    double last_step = 0.0;    ///< max-norm of the last update
    double residual = 0.0;     ///< boundary_law_residual of `law`
    std::vector<double> law;   ///< fixed point, or the last finite iterate
    std::vector<std::vector<double>> tail;  ///< up to kTrajectoryTail last iterates
};

inline constexpr std::size_t kTrajectoryTail = 8;

/// Plain forward iteration with max-norm stopping.  Throws
/// NumericalDomainError if an iterate reaches a non-positive entry.
BoundaryLawIteration iterate_boundary_law(const ModelParams& p, const BoundaryLaw& init, int max_iter,
                                          double tol);

/// (x, y) = (z_0^(1/k), z_1^(1/k)) for an m = 2 law.
TisgmSolution solution_from_law(std::span<const double> z, int k);

}  // namespace hcsos
