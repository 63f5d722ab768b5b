#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcsos {

enum class Verdict { Extreme, NonExtreme, Undetermined };
enum class Measure { Mu0, Mu1, Mu2 };

std::string_view to_string(Verdict v);
std::string_view to_string(Measure m);
Verdict parse_verdict(std::string_view s);
Measure parse_measure(std::string_view s);

struct ExtremalityVerdict {
    Verdict verdict = Verdict::Undetermined;
    Measure measure = Measure::Mu0;
    double ks_value = 0.0;   ///< k s2^2
    double msw_value = 0.0;  ///< k kappa gamma
    double s2 = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
};

struct CriterionValue {
    bool holds = false;
    double value = 0.0;
};

/// k s2^2 > 1 (sufficient for non-extremality).
CriterionValue kesten_stigum(int k, double s2);
/// k kappa gamma < 1 (sufficient for extremality).
CriterionValue msw_extreme(int k, double kappa, double gamma);

inline constexpr double kDefaultBoundaryTol = 1e-9;

/// The symmetric measure.  Both criteria are evaluated; values within
/// boundary_tol of 1 are Undetermined.
ExtremalityVerdict classify_mu0(int k, double theta, double boundary_tol = kDefaultBoundaryTol);

/// Asymmetric measures for k = 2, 0 < theta < 1.  Never NonExtreme: the
/// Kesten-Stigum bound cannot hold for these kernels.
ExtremalityVerdict classify_mu12_k2(double theta, Measure which = Measure::Mu1,
                                    double boundary_tol = kDefaultBoundaryTol);

/// Asymmetric measures for k >= 3: numeric spectrum, NonExtreme only when
/// Kesten-Stigum strictly holds, otherwise Undetermined.
ExtremalityVerdict classify_asymmetric(int k, double theta, Measure which,
                                       double boundary_tol = kDefaultBoundaryTol);

/// Dispatches on the measure; throws MeasureNotFound when an asymmetric
/// measure does not exist at (k, theta).
ExtremalityVerdict classify(int k, double theta, Measure which, double boundary_tol = kDefaultBoundaryTol);

/// k / (theta y*^k + 1)^2 - 1, for 0 < theta <= 1.
double h_func(int k, double theta);
/// k (theta y*^k / (theta y*^k + 1))^2 - 1, for theta >= 1.
double q_func(int k, double theta);

/// 2 kappa(theta)^2 - 1 for the k = 2 upper measure, 0 < theta < 1.
double msw_margin_k2(double theta);

struct Threshold {
    std::string name;
    double root_found = 0.0;
    std::optional<double> closed_form;
    std::optional<double> quoted;  ///< value quoted in the literature, if any
};

struct ThresholdTable {
    int k = 2;
    std::vector<Threshold> entries;

    const Threshold& at(std::string_view name) const;
};

/// k = 2: theta1, theta2, theta5.  k = 3: theta3, theta4.
/// Throws Unsupported for any other k (mu0 is never extreme for k >= 4).
ThresholdTable thresholds(int k);

}  // namespace hcsos
