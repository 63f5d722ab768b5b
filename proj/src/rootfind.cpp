#include "hcsos/rootfind.hpp"

#include <cmath>
#include <string>

namespace hcsos {

namespace {

int sign_of(double v)
{
    if (std::isnan(v))
        throw BracketError("function value is NaN");
    return (v > 0.0) - (v < 0.0);
}

}  // namespace

Bracket Bracket::certify(const ScalarFn& f, double lo, double hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw BracketError("bracket requires finite lo < hi");
    const int s_lo = sign_of(f(lo));
    const int s_hi = sign_of(f(hi));
    if (s_lo == s_hi)
        throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return Bracket(lo, hi, s_lo, s_hi);
}

RootResult solve_bracketed(const ScalarFn& f, const Bracket& b, const RootConfig& cfg, const ScalarFn& df)
{
    if (!(cfg.abs_tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("RootConfig requires abs_tol > 0 and max_iter >= 1");

    RootResult out{0.0, 0, b.lo(), b.hi()};
    if (b.lo_sign() == 0) {
        out.root = b.lo();
        out.hi = b.lo();
        return out;
    }
    if (b.hi_sign() == 0) {
        out.root = b.hi();
        out.lo = b.hi();
        return out;
    }

    double lo = b.lo();
    double hi = b.hi();
    const int s_lo = b.lo_sign();
    double f_lo = f(lo);
    double f_hi = f(hi);

    bool converged = false;
    while (true) {
        const double mid = lo + 0.5 * (hi - lo);
        if (hi - lo <= cfg.abs_tol || mid <= lo || mid >= hi) {
            converged = true;
            break;
        }
        if (out.iterations >= cfg.max_iter)
            break;
        const double f_mid = f(mid);
        ++out.iterations;
        const int s_mid = sign_of(f_mid);
        if (s_mid == 0) {
            lo = hi = mid;
            f_lo = f_hi = 0.0;
            converged = true;
            break;
        }
        if (s_mid == s_lo) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }

    out.lo = lo;
    out.hi = hi;
    const double mid = lo + 0.5 * (hi - lo);
    if (!converged)
        throw ConvergenceError("bisection did not reach tolerance within max_iter", mid);

    out.root = mid;
    if (!cfg.polish || lo == hi)
        return out;

    const double f_mid = f(mid);
    double candidate = mid;
    if (df) {
        const double d = df(mid);
        if (d != 0.0 && std::isfinite(d))
            candidate = mid - f_mid / d;
    } else if (f_hi != f_lo) {
        candidate = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    }
    if (candidate >= lo && candidate <= hi && candidate != mid) {
        const double f_cand = f(candidate);
        if (std::isfinite(f_cand) && std::abs(f_cand) <= std::abs(f_mid))
            out.root = candidate;
    }
    return out;
}

double find_root(const ScalarFn& f, const Bracket& b, const RootConfig& cfg)
{
    return solve_bracketed(f, b, cfg).root;
}

double find_root(const ScalarFn& f, const ScalarFn& df, const Bracket& b, const RootConfig& cfg)
{
    return solve_bracketed(f, b, cfg, df).root;
}

Bracket expand_bracket_decreasing(const ScalarFn& f, double lo, double target)
{
    auto g = [&](double x) { return f(x) - target; };
    if (!(g(lo) > 0.0))
        throw BracketError("expand_bracket_decreasing requires f(lo) > target");

    double last_above = lo;
    double width = 1.0;
    for (int i = 0; i <= kMaxDoublings; ++i, width *= 2.0) {
        const double hi = lo + width;
        const double v = g(hi);
        if (std::isnan(v))
            throw BracketError("function value is NaN while expanding bracket");
        if (v < 0.0)
            return Bracket::certify(g, last_above, hi);
        if (v > 0.0)
            last_above = hi;
        else
            return Bracket::certify(g, last_above, hi);  // exact hit: hi is a root
    }
    throw BracketError("bracket expansion exceeded " + std::to_string(kMaxDoublings) + " doublings");
}

}  // namespace hcsos
