#pragma once

#include <functional>
#include <stdexcept>

namespace hcsos {

using ScalarFn = std::function<double(double)>;

/// No sign change on the requested interval, or an invalid interval.
class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iteration budget exhausted; carries the midpoint of the last bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_(best_estimate) {}
    double best_estimate() const noexcept { return best_; }

private:
    double best_;
};

/// Interval [lo, hi] on which a function has been observed to change sign.
/// Only obtainable through certify() or expand_bracket_decreasing().
class Bracket {
public:
    static Bracket certify(const ScalarFn& f, double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    int lo_sign() const noexcept { return lo_sign_; }
    int hi_sign() const noexcept { return hi_sign_; }

private:
    Bracket(double lo, double hi, int lo_sign, int hi_sign)
        : lo_(lo), hi_(hi), lo_sign_(lo_sign), hi_sign_(hi_sign) {}

    double lo_;
    double hi_;
    int lo_sign_;
    int hi_sign_;
};

struct RootConfig {
    double abs_tol = 1e-12;
    int max_iter = 200;
    bool polish = true;
};

struct RootResult {
    double root = 0.0;
    int iterations = 0;  ///< bisection steps taken
    double lo = 0.0;     ///< final bracket
    double hi = 0.0;
};

/// Bisection down to abs_tol (or until the bracket spans adjacent doubles),
/// followed by an optional polish step that is kept only if it stays inside
/// the final bracket and does not increase |f|.  Polishing uses Newton when
/// `df` is given, otherwise a secant through the final endpoints.
RootResult solve_bracketed(const ScalarFn& f, const Bracket& b, const RootConfig& cfg = {},
                           const ScalarFn& df = {});

double find_root(const ScalarFn& f, const Bracket& b, const RootConfig& cfg = {});
double find_root(const ScalarFn& f, const ScalarFn& df, const Bracket& b, const RootConfig& cfg = {});

/// For f strictly decreasing on [lo, inf) with f(lo) > target, walks
/// hi = lo + 1, lo + 2, lo + 4, ... until f(hi) < target.  The returned
/// bracket is for g(x) = f(x) - target and its lower end is the last probe
/// that was still above target.
Bracket expand_bracket_decreasing(const ScalarFn& f, double lo, double target);

inline constexpr int kMaxDoublings = 60;

}  // namespace hcsos
