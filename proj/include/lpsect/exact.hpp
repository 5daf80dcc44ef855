#pragma once

// Closed-form volume arithmetic, carried in log space so factorial-sized
// quantities stay finite; `value` is exp(log_value) and may round to 0 or
// inf outside double range.

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lpsect/spaces.hpp"

namespace lpsect {

struct ExactValue {
    double value = 0.0;
    double log_value = 0.0;
    std::string expression;
};

// log |B_p^k| = k (log 2 + lgamma(1 + 1/p)) - lgamma(1 + k/p); p = inf gives k log 2.
inline double log_lp_ball_volume(int k, double p) {
    if (k < 1) throw std::invalid_argument("lp_ball_volume: dimension must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("lp_ball_volume: p must be positive (inf allowed)");
    if (std::isinf(p)) return k * std::log(2.0);
    return k * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) - std::lgamma(1.0 + k / p);
}

inline ExactValue lp_ball_volume(int k, double p) {
    const double lg = log_lp_ball_volume(k, p);
    std::ostringstream ex;
    if (std::isinf(p)) ex << "2^" << k;
    else ex << "(2*Gamma(1+1/" << p << "))^" << k << " / Gamma(1+" << k << "/" << p << ")";
    return {std::exp(lg), lg, ex.str()};
}

// |B(X (+)_1 Y)| = k1! k2! / (k1+k2)! * |B_X| * |B_Y|
inline ExactValue direct_sum_volume(double vol1, int k1, double vol2, int k2) {
    if (k1 < 1 || k2 < 1) throw std::invalid_argument("direct_sum_volume: dimensions must be positive");
    if (!(vol1 > 0.0) || !(vol2 > 0.0)) throw std::invalid_argument("direct_sum_volume: volumes must be positive");
    const double lg = std::lgamma(k1 + 1.0) + std::lgamma(k2 + 1.0) - std::lgamma(k1 + k2 + 1.0) +
                      std::log(vol1) + std::log(vol2);
    std::ostringstream ex;
    ex << k1 << "!*" << k2 << "!/" << (k1 + k2) << "! * " << vol1 << " * " << vol2;
    return {std::exp(lg), lg, ex.str()};
}

// |B_1^s(Z)| = (k!)^s / (s k)! * |B_Z|^s for dim Z = k
inline ExactValue power_volume(double volZ, int k, int s) {
    if (k < 1 || s < 1) throw std::invalid_argument("power_volume: dimensions must be positive");
    if (!(volZ > 0.0)) throw std::invalid_argument("power_volume: volume must be positive");
    const double lg = s * std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(s) * k + 1.0) +
                      s * std::log(volZ);
    std::ostringstream ex;
    ex << "(" << k << "!)^" << s << "/(" << s * k << ")! * " << volZ << "^" << s;
    return {std::exp(lg), lg, ex.str()};
}

// |B(l_1^a (+)_1 l_2^c (+)_1 ... (+)_1 l_2^c)| with b Euclidean summands:
//   2^a (c!)^b / (a + b c)! * pi^(b c / 2) / Gamma(c/2 + 1)^b
inline ExactValue mixed_sum_volume(int a, int b, int c) {
    if (a < 0) throw std::invalid_argument("mixed_sum_volume: negative l1 dimension");
    if (b < 1 || c < 1) throw std::invalid_argument("mixed_sum_volume: need b >= 1 Euclidean blocks of dimension c >= 1");
    const int total = a + b * c;
    double lg = a * std::log(2.0) - std::lgamma(total + 1.0) + b * std::lgamma(c + 1.0) +
                (0.5 * b * c) * std::log(kPi) - b * std::lgamma(0.5 * c + 1.0);
    std::ostringstream ex;
    ex << "2^" << a << "*(" << c << "!)^" << b << "/(" << total << ")! * pi^(" << b * c
       << "/2)/Gamma(" << c << "/2+1)^" << b;
    return {std::exp(lg), lg, ex.str()};
}

// For X = l_1^{2n} (+)_1 l_2^{2n}, the coordinate section of B_X^n beats the
// corresponding projection-type bound iff (2n)!/n! > (4/pi)^n. Both the
// factorial form and the equivalent mixed-sum volume comparison are recorded.
struct CounterexampleCheck {
    int n = 0;
    double lhs_log = 0.0;  // log((2n)!/n!)
    double rhs_log = 0.0;  // n log(4/pi)
    double lhs = 0.0;
    double rhs = 0.0;
    double vol_lhs_log = 0.0;  // log |B(l_1^{2n(n-2)} (+)_1 n copies of l_2^{2n})|
    double vol_rhs_log = 0.0;  // log |B(l_1^{2n(n-1)} (+)_1 n-1 copies of l_2^{2n})|
    bool strict = false;
};

inline CounterexampleCheck remark_counterexample_check(int n) {
    if (n < 2) throw std::invalid_argument("remark_counterexample_check: n must be >= 2");
    CounterexampleCheck r;
    r.n = n;
    r.lhs_log = std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0);
    r.rhs_log = n * std::log(4.0 / kPi);
    r.lhs = std::exp(r.lhs_log);
    r.rhs = std::exp(r.rhs_log);
    r.vol_lhs_log = mixed_sum_volume(2 * n * (n - 2), n, 2 * n).log_value;
    r.vol_rhs_log = mixed_sum_volume(2 * n * (n - 1), n - 1, 2 * n).log_value;
    r.strict = r.lhs_log > r.rhs_log;
    return r;
}

// Upper bound (2m+4)^{m/2} / (m 2^{m-1} Gamma(m/2)) on the maximal section
// constant over m-dimensional block factors; equals 2 at m = 2.
inline ExactValue brzezinski_bound(int m) {
    if (m < 2) throw std::invalid_argument("brzezinski_bound: m must be >= 2");
    const double lg = 0.5 * m * std::log(2.0 * m + 4.0) - std::log(static_cast<double>(m)) -
                      (m - 1.0) * std::log(2.0) - std::lgamma(0.5 * m);
    // Direct arithmetic where it cannot overflow; it is exact at small even m
    // (m=2 gives 8/4 = 2 with no rounding), which the log route is not.
    const double value = m <= 60 ? std::pow(2.0 * m + 4.0, 0.5 * m) /
                                       (m * std::pow(2.0, m - 1.0) * std::tgamma(0.5 * m))
                                 : std::exp(lg);
    std::ostringstream ex;
    ex << "(2*" << m << "+4)^(" << m << "/2)/(" << m << "*2^" << (m - 1) << "*Gamma(" << m << "/2))";
    return {value, lg, ex.str()};
}

// Closed-form unit-ball volume of a composed space, when one exists.
inline std::optional<ExactValue> space_ball_volume(const Space& X) {
    switch (X.kind()) {
        case Space::Kind::Euclidean:
            return lp_ball_volume(X.dim(), 2.0);
        case Space::Kind::LqBall:
            return lp_ball_volume(X.dim(), X.exponent());
        case Space::Kind::LpDiscrete:
            return std::nullopt;
        case Space::Kind::DirectSumL1: {
            const auto a = space_ball_volume(X.left());
            const auto b = space_ball_volume(X.right());
            if (!a || !b) return std::nullopt;
            const double lg = std::lgamma(X.left().dim() + 1.0) + std::lgamma(X.right().dim() + 1.0) -
                              std::lgamma(X.dim() + 1.0) + a->log_value + b->log_value;
            std::ostringstream ex;
            ex << X.left().dim() << "!*" << X.right().dim() << "!/" << X.dim() << "! * (" << a->expression
               << ") * (" << b->expression << ")";
            return ExactValue{std::exp(lg), lg, ex.str()};
        }
        case Space::Kind::LpPower: {
            const Space& Z = X.inner();
            const int n = X.copies();
            const double p = X.exponent();
            if (n == 1) return space_ball_volume(Z);
            const auto vz = space_ball_volume(Z);
            if (std::isinf(p)) {
                if (!vz) return std::nullopt;
                const double lg = n * vz->log_value;
                std::ostringstream ex;
                ex << "(" << vz->expression << ")^" << n;
                return ExactValue{std::exp(lg), lg, ex.str()};
            }
            if (p == 1.0) {
                if (!vz) return std::nullopt;
                const double lg = n * std::lgamma(Z.dim() + 1.0) -
                                  std::lgamma(static_cast<double>(n) * Z.dim() + 1.0) + n * vz->log_value;
                std::ostringstream ex;
                ex << "(" << Z.dim() << "!)^" << n << "/(" << n * Z.dim() << ")! * (" << vz->expression
                   << ")^" << n;
                return ExactValue{std::exp(lg), lg, ex.str()};
            }
            // B_p^n(l_p^m) is the plain l_p ball in dimension n m
            if (Z.kind() == Space::Kind::LqBall && Z.exponent() == p) return lp_ball_volume(X.dim(), p);
            if (Z.kind() == Space::Kind::Euclidean && p == 2.0) return lp_ball_volume(X.dim(), 2.0);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace lpsect
