#pragma once

// Text front end for space specs and theta vectors.
//
// Space grammar:
//   lq:q=<r>,m=<int>
//   euclid:m=<int>
//   measure:<path>,p=<r>
//   dsum(<spec>;<spec>)
//   power:p=<r>,n=<int>(<spec>)
// <r> is a positive decimal or the token "inf" where the factory allows it.
// In `measure:`, the final ",p=" separates the path from the exponent, so
// paths containing that exact substring are not representable.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

namespace detail {

inline std::string parse_err(const std::string& spec, const std::string& what) {
    return "space spec '" + spec + "': " + what;
}

inline double parse_finite_positive(const std::string& tok, const std::string& spec, const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(parse_err(spec, "malformed number for " + field + ": '" + tok + "'"));
    }
    if (used != tok.size() || !std::isfinite(v) || v <= 0.0)
        throw std::invalid_argument(parse_err(spec, field + " must be a positive real, got '" + tok + "'"));
    return v;
}

inline double parse_positive_or_inf(const std::string& tok, const std::string& spec, const std::string& field) {
    if (tok == "inf") return kInf;
    return parse_finite_positive(tok, spec, field);
}

inline int parse_positive_int(const std::string& tok, const std::string& spec, const std::string& field) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(parse_err(spec, "malformed integer for " + field + ": '" + tok + "'"));
    }
    if (used != tok.size() || v <= 0 || v > std::numeric_limits<int>::max())
        throw std::invalid_argument(parse_err(spec, field + " must be a positive integer, got '" + tok + "'"));
    return static_cast<int>(v);
}

// Splits `body` at the single top-level ';' (parenthesis depth 0).
inline std::pair<std::string, std::string> split_dsum_body(const std::string& body, const std::string& spec) {
    int depth = 0;
    std::size_t cut = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char ch = body[i];
        if (ch == '(') ++depth;
        else if (ch == ')') {
            if (--depth < 0) throw std::invalid_argument(parse_err(spec, "unbalanced ')'"));
        } else if (ch == ';' && depth == 0) {
            if (cut != std::string::npos)
                throw std::invalid_argument(parse_err(spec, "dsum takes exactly two summands"));
            cut = i;
        }
    }
    if (depth != 0) throw std::invalid_argument(parse_err(spec, "unbalanced '('"));
    if (cut == std::string::npos)
        throw std::invalid_argument(parse_err(spec, "dsum needs ';' between the two summands"));
    return {body.substr(0, cut), body.substr(cut + 1)};
}

}  // namespace detail

inline Space parse_space(const std::string& spec) {
    using detail::parse_err;
    if (spec.empty()) throw std::invalid_argument("space spec is empty");

    if (spec.rfind("lq:", 0) == 0) {
        const std::string body = spec.substr(3);
        const std::size_t comma = body.find(',');
        if (body.rfind("q=", 0) != 0 || comma == std::string::npos || body.compare(comma + 1, 2, "m=") != 0)
            throw std::invalid_argument(parse_err(spec, "expected lq:q=<r>,m=<int>"));
        const double q = detail::parse_positive_or_inf(body.substr(2, comma - 2), spec, "q");
        const int m = detail::parse_positive_int(body.substr(comma + 3), spec, "m");
        return Space::lq_ball(q, m);
    }

    if (spec.rfind("euclid:", 0) == 0) {
        const std::string body = spec.substr(7);
        if (body.rfind("m=", 0) != 0)
            throw std::invalid_argument(parse_err(spec, "expected euclid:m=<int>"));
        return Space::euclidean(detail::parse_positive_int(body.substr(2), spec, "m"));
    }

    if (spec.rfind("measure:", 0) == 0) {
        const std::string body = spec.substr(8);
        const std::size_t cut = body.rfind(",p=");
        if (cut == std::string::npos || cut == 0)
            throw std::invalid_argument(parse_err(spec, "expected measure:<path>,p=<r>"));
        const double p = detail::parse_finite_positive(body.substr(cut + 3), spec, "p");
        return Space::lp_discrete(p, DiscreteMeasure::load(body.substr(0, cut)));
    }

    if (spec.rfind("dsum(", 0) == 0) {
        if (spec.back() != ')') throw std::invalid_argument(parse_err(spec, "expected dsum(<spec>;<spec>)"));
        const auto [left, right] = detail::split_dsum_body(spec.substr(5, spec.size() - 6), spec);
        return Space::direct_sum_l1(parse_space(left), parse_space(right));
    }

    if (spec.rfind("power:", 0) == 0) {
        const std::string body = spec.substr(6);
        const std::size_t comma = body.find(',');
        const std::size_t open = body.find('(');
        if (body.rfind("p=", 0) != 0 || comma == std::string::npos || open == std::string::npos ||
            comma > open || body.compare(comma + 1, 2, "n=") != 0 || body.back() != ')')
            throw std::invalid_argument(parse_err(spec, "expected power:p=<r>,n=<int>(<spec>)"));
        const double p = detail::parse_positive_or_inf(body.substr(2, comma - 2), spec, "p");
        const int n = detail::parse_positive_int(body.substr(comma + 3, open - comma - 3), spec, "n");
        const Space inner = parse_space(body.substr(open + 1, body.size() - open - 2));
        return Space::lp_power(p, n, inner);
    }

    throw std::invalid_argument(parse_err(spec, "unknown head (expected lq:, euclid:, measure:, dsum(, power:)"));
}

// Theta forms: "diag" (uniform), "e1", or a comma-separated list of n
// decimals. Lists must already be unit within 1e-12; nothing is renormalized.
inline Vec parse_theta(const std::string& text, int n) {
    if (n < 1) throw std::invalid_argument("parse_theta: n must be positive");
    if (text == "diag") return Vec(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    if (text == "e1") {
        Vec theta(static_cast<std::size_t>(n), 0.0);
        theta[0] = 1.0;
        return theta;
    }

    Vec theta;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("theta '" + text + "': malformed entry '" + tok + "'");
        }
        if (used != tok.size() || !std::isfinite(v))
            throw std::invalid_argument("theta '" + text + "': malformed entry '" + tok + "'");
        theta.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (theta.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("theta '" + text + "': expected " + std::to_string(n) + " entries, got " +
                                    std::to_string(theta.size()));
    validate_unit_theta(theta);
    return theta;
}

}  // namespace lpsect
