#pragma once

#include "hcsos/model.hpp"

#include <array>

namespace hcsos {

using Row3 = std::array<double, 3>;
using Matrix3 = std::array<Row3, 3>;

/// Row-stochastic 3x3 transition matrix of the tree-indexed Markov chain
/// behind an m = 2 TISGM.  Entries (0,2), (1,1), (2,0) are exactly zero.
class TransitionKernel {
public:
    /// Validates row sums (1e-12), non-negativity and the wand sparsity pattern.
    static TransitionKernel from_matrix(const Matrix3& p, int k = 2, double theta = 1.0);

    const Matrix3& p() const noexcept { return p_; }
    double operator()(int i, int j) const { return p_.at(i).at(j); }
    const TisgmSolution& source() const noexcept { return source_; }
    int k() const noexcept { return k_; }
    double theta() const noexcept { return theta_; }

private:
    friend TransitionKernel kernel_of(const TisgmSolution&, int, double);
    TransitionKernel(const Matrix3& p, const TisgmSolution& s, int k, double theta)
        : p_(p), source_(s), k_(k), theta_(theta) {}

    Matrix3 p_;
    TisgmSolution source_;
    int k_;
    double theta_;
};

TransitionKernel kernel_of(const TisgmSolution& sol, int k, double theta);

struct SpectrumReport {
    /// Sorted by |.| descending (ties: larger value first); the first is 1.
    /// For a complex pair the real parts are stored and complex_pair is set.
    std::array<double, 3> eigenvalues{};
    double s2 = 0.0;         ///< |second eigenvalue|
    double s2_signed = 0.0;  ///< the eigenvalue itself (real part if complex)
    bool closed_form_used = false;
    bool complex_pair = false;
};

/// Symmetric branch: {1, -t/(t+1), 1/(t+1)} with t = theta y^k.  s2 picks
/// 1/(t+1) for theta <= 1 and -t/(t+1) for theta > 1.
SpectrumReport spectrum_symmetric(double y, double theta, int k);

/// k = 2 asymmetric branch: {1, s, -s}, s = sqrt(2) x / ((x+1) sqrt(x^2+1)).
SpectrumReport spectrum_asymmetric_k2(double x);

/// Characteristic polynomial with the eigenvalue 1 deflated: the other two
/// roots have sum trace - 1 and product det.
SpectrumReport spectrum_numeric(const Matrix3& p);
SpectrumReport spectrum_numeric(const TransitionKernel& kern);

/// Imaginary parts above this mark a complex pair.
inline constexpr double kComplexTolerance = 1e-10;

/// Unique left fixed vector of an irreducible kernel.
Row3 stationary(const Matrix3& p);
Row3 stationary(const TransitionKernel& kern);

/// Half of the largest L1 distance between two rows.
double kappa_of(const Matrix3& p);
double kappa_of(const TransitionKernel& kern);

/// Largest of the three pairwise half-L1 distances, (0,1), (1,2), (0,2),
/// written out term by term.
double gamma_of(const Matrix3& p);
double gamma_of(const TransitionKernel& kern);

}  // namespace hcsos
