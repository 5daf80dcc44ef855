#pragma once

// Normed space descriptions. A Space is a composition tree built from
//   lq balls, Euclidean space, discrete-measure Lp norms,
//   l1 direct sums, and lp powers X^n = (X + ... + X)_p,
// with norm evaluation, convexity checks, and a sound circumradius bound.

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/linalg.hpp"

namespace lpsect {

struct Atom {
    double weight;
    Vec dir;  // unit vector
};

// Finitely supported measure on the unit sphere of R^m. Atoms must carry
// positive weight, unit directions (within 1e-12), and span R^m.
class DiscreteMeasure {
public:
    DiscreteMeasure(int m, std::vector<Atom> atoms) : m_(m), atoms_(std::move(atoms)) {
        if (m_ < 1) throw std::invalid_argument("DiscreteMeasure: dimension must be positive");
        if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: no atoms");
        for (const Atom& a : atoms_) {
            if (!(a.weight > 0.0)) throw std::invalid_argument("DiscreteMeasure: weights must be positive");
            if (static_cast<int>(a.dir.size()) != m_)
                throw std::invalid_argument("DiscreteMeasure: direction dimension mismatch");
            if (std::fabs(norm2(a.dir) - 1.0) > 1e-12)
                throw std::invalid_argument("DiscreteMeasure: direction is not a unit vector");
        }
        if (!spans()) throw std::invalid_argument("DiscreteMeasure: atoms do not span the space");
    }

    int dim() const { return m_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    double total_mass() const {
        double s = 0.0;
        for (const Atom& a : atoms_) s += a.weight;
        return s;
    }

    // sum_j c_j u_j u_j^T
    Mat second_moment() const {
        Mat M(m_, m_);
        for (const Atom& a : atoms_)
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < m_; ++j)
                    M(i, j) += a.weight * a.dir[static_cast<std::size_t>(i)] * a.dir[static_cast<std::size_t>(j)];
        return M;
    }

    // Text format: one atom per line, "weight u_1 ... u_m", '#' comments.
    static DiscreteMeasure load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("DiscreteMeasure::load: cannot open " + path);
        std::vector<Atom> atoms;
        int m = -1;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream row(line);
            std::vector<double> vals;
            double v;
            while (row >> v) vals.push_back(v);
            if (!row.eof())
                throw std::runtime_error("DiscreteMeasure::load: bad token at " + path + ":" + std::to_string(lineno));
            if (vals.empty()) continue;
            if (vals.size() < 2)
                throw std::runtime_error("DiscreteMeasure::load: atom needs a weight and a direction at " + path +
                                         ":" + std::to_string(lineno));
            if (m < 0) m = static_cast<int>(vals.size()) - 1;
            if (static_cast<int>(vals.size()) - 1 != m)
                throw std::runtime_error("DiscreteMeasure::load: inconsistent dimension at " + path + ":" +
                                         std::to_string(lineno));
            Atom a;
            a.weight = vals[0];
            a.dir.assign(vals.begin() + 1, vals.end());
            atoms.push_back(std::move(a));
        }
        if (atoms.empty()) throw std::runtime_error("DiscreteMeasure::load: no atoms in " + path);
        return DiscreteMeasure(m, std::move(atoms));
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("DiscreteMeasure::save: cannot open " + path);
        out.precision(17);
        for (const Atom& a : atoms_) {
            out << a.weight;
            for (double x : a.dir) out << ' ' << x;
            out << '\n';
        }
        if (!out) throw std::runtime_error("DiscreteMeasure::save: write failed for " + path);
    }

private:
    bool spans() const {
        SymEig e = sym_eigen(second_moment());
        const double lmax = e.values.back();
        return e.values.front() > 1e-10 * std::max(1.0, lmax);
    }

    int m_;
    std::vector<Atom> atoms_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Space {
public:
    enum class Kind { LqBall, Euclidean, LpDiscrete, DirectSumL1, LpPower };

    static Space lq_ball(double q, int m) {
        if (!(q > 0.0)) throw std::invalid_argument("lq_ball: q must be positive (inf allowed)");
        if (m < 1) throw std::invalid_argument("lq_ball: dimension must be positive");
        Space s(Kind::LqBall, m);
        s.exponent_ = q;
        return s;
    }

    static Space euclidean(int m) {
        if (m < 1) throw std::invalid_argument("euclidean: dimension must be positive");
        return Space(Kind::Euclidean, m);
    }

    static Space lp_discrete(double p, DiscreteMeasure mu) {
        if (!(p > 0.0) || std::isinf(p))
            throw std::invalid_argument("lp_discrete: p must be a positive real");
        Space s(Kind::LpDiscrete, mu.dim());
        s.exponent_ = p;
        s.measure_ = std::make_shared<DiscreteMeasure>(std::move(mu));
        return s;
    }

    static Space direct_sum_l1(Space a, Space b) {
        Space s(Kind::DirectSumL1, a.dim() + b.dim());
        s.left_ = std::make_shared<Space>(std::move(a));
        s.right_ = std::make_shared<Space>(std::move(b));
        return s;
    }

    static Space lp_power(double p, int n, Space inner) {
        if (!(p > 0.0)) throw std::invalid_argument("lp_power: p must be positive (inf allowed)");
        if (n < 1) throw std::invalid_argument("lp_power: copy count must be positive");
        Space s(Kind::LpPower, n * inner.dim());
        s.exponent_ = p;
        s.copies_ = n;
        s.left_ = std::make_shared<Space>(std::move(inner));
        return s;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    double exponent() const {
        if (kind_ == Kind::Euclidean || kind_ == Kind::DirectSumL1)
            throw std::logic_error("Space::exponent: variant has none");
        return exponent_;
    }

    int copies() const {
        if (kind_ != Kind::LpPower) throw std::logic_error("Space::copies: not a power");
        return copies_;
    }

    const Space& inner() const {
        if (kind_ != Kind::LpPower) throw std::logic_error("Space::inner: not a power");
        return *left_;
    }

    const Space& left() const {
        if (kind_ != Kind::DirectSumL1) throw std::logic_error("Space::left: not a direct sum");
        return *left_;
    }

    const Space& right() const {
        if (kind_ != Kind::DirectSumL1) throw std::logic_error("Space::right: not a direct sum");
        return *right_;
    }

    const DiscreteMeasure& measure() const {
        if (kind_ != Kind::LpDiscrete) throw std::logic_error("Space::measure: not a discrete-measure norm");
        return *measure_;
    }

    double norm(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Space::norm: dimension mismatch");
        return norm_unchecked(x);
    }

    double norm_unchecked(std::span<const double> x) const {
        switch (kind_) {
            case Kind::Euclidean: {
                double s = 0.0;
                for (double v : x) s += v * v;
                return std::sqrt(s);
            }
            case Kind::LqBall: {
                if (std::isinf(exponent_)) {
                    double m = 0.0;
                    for (double v : x) m = std::max(m, std::fabs(v));
                    return m;
                }
                double s = 0.0;
                for (double v : x) s += std::pow(std::fabs(v), exponent_);
                return std::pow(s, 1.0 / exponent_);
            }
            case Kind::LpDiscrete: {
                double s = 0.0;
                for (const Atom& a : measure_->atoms()) {
                    double t = 0.0;
                    for (std::size_t i = 0; i < x.size(); ++i) t += a.dir[i] * x[i];
                    s += a.weight * std::pow(std::fabs(t), exponent_);
                }
                return std::pow(s, 1.0 / exponent_);
            }
            case Kind::DirectSumL1: {
                const int dl = left_->dim();
                return left_->norm_unchecked(x.first(static_cast<std::size_t>(dl))) +
                       right_->norm_unchecked(x.subspan(static_cast<std::size_t>(dl)));
            }
            case Kind::LpPower: {
                const int dm = left_->dim();
                if (std::isinf(exponent_)) {
                    double m = 0.0;
                    for (int i = 0; i < copies_; ++i)
                        m = std::max(m, left_->norm_unchecked(x.subspan(
                                            static_cast<std::size_t>(i) * static_cast<std::size_t>(dm),
                                            static_cast<std::size_t>(dm))));
                    return m;
                }
                double s = 0.0;
                for (int i = 0; i < copies_; ++i)
                    s += std::pow(left_->norm_unchecked(x.subspan(
                                      static_cast<std::size_t>(i) * static_cast<std::size_t>(dm),
                                      static_cast<std::size_t>(dm))),
                                  exponent_);
                return std::pow(s, 1.0 / exponent_);
            }
        }
        return 0.0;  // unreachable
    }

    // True iff the unit ball is convex (every exponent in the tree >= 1).
    bool convex() const {
        switch (kind_) {
            case Kind::Euclidean: return true;
            case Kind::LqBall: return exponent_ >= 1.0;
            case Kind::LpDiscrete: return exponent_ >= 1.0;
            case Kind::DirectSumL1: return left_->convex() && right_->convex();
            case Kind::LpPower: return exponent_ >= 1.0 && left_->convex();
        }
        return false;
    }

    // Upper bound on max{ ||x||_2 : norm(x) <= 1 }; exact for lq/euclidean.
    double circumradius_bound() const {
        switch (kind_) {
            case Kind::Euclidean: return 1.0;
            case Kind::LqBall: {
                if (std::isinf(exponent_)) return std::sqrt(static_cast<double>(dim_));
                if (exponent_ <= 2.0) return 1.0;
                return std::pow(static_cast<double>(dim_), 0.5 - 1.0 / exponent_);
            }
            case Kind::LpDiscrete: {
                SymEig e = sym_eigen(measure_->second_moment());
                const double lmin = e.values.front();
                const double p = exponent_;
                if (p <= 2.0) return std::pow(lmin, -1.0 / p);
                const double mass = measure_->total_mass();
                return std::pow(mass, 0.5 - 1.0 / p) / std::sqrt(lmin);
            }
            case Kind::DirectSumL1:
                return std::max(left_->circumradius_bound(), right_->circumradius_bound());
            case Kind::LpPower: {
                const double r = left_->circumradius_bound();
                if (exponent_ <= 2.0) return r;
                if (std::isinf(exponent_)) return r * std::sqrt(static_cast<double>(copies_));
                return r * std::pow(static_cast<double>(copies_), 0.5 - 1.0 / exponent_);
            }
        }
        return 0.0;  // unreachable
    }

    std::string describe() const {
        std::ostringstream os;
        os.precision(12);
        switch (kind_) {
            case Kind::Euclidean: os << "euclid:m=" << dim_; break;
            case Kind::LqBall:
                if (std::isinf(exponent_)) os << "lq:q=inf,m=" << dim_;
                else os << "lq:q=" << exponent_ << ",m=" << dim_;
                break;
            case Kind::LpDiscrete:
                os << "measure:M=" << measure_->atoms().size() << ",m=" << dim_ << ",p=" << exponent_;
                break;
            case Kind::DirectSumL1:
                os << "dsum(" << left_->describe() << ";" << right_->describe() << ")";
                break;
            case Kind::LpPower:
                if (std::isinf(exponent_)) os << "power:p=inf,n=" << copies_;
                else os << "power:p=" << exponent_ << ",n=" << copies_;
                os << "(" << left_->describe() << ")";
                break;
        }
        return os.str();
    }

private:
    Space(Kind k, int dim) : kind_(k), dim_(dim) {}

    Kind kind_;
    int dim_;
    double exponent_ = 0.0;
    int copies_ = 0;
    std::shared_ptr<const Space> left_;
    std::shared_ptr<const Space> right_;
    std::shared_ptr<const DiscreteMeasure> measure_;
};

}  // namespace lpsect
