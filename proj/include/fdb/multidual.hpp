#pragma once

// Truncated multi-dual algebra R[e1..en]/(ei^2=0). A function evaluated on
// tagged inputs carries, in the coefficient of e_{i1}...e_{ik}, exactly the
// mixed directional differential in directions i1..ik.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "fdb/errors.hpp"
#include "fdb/partitions.hpp"

namespace fdb {

// Subset of tags {1..n} as a bitmask; tag i is bit i-1.
struct TagSet {
    std::uint32_t bits = 0;

    static TagSet empty() { return {}; }
    static TagSet single(int tag) { return {1u << (tag - 1)}; }
    static TagSet full(int width) { return {(1u << width) - 1u}; }

    bool contains(int tag) const { return bits >> (tag - 1) & 1u; }
    int count() const { return __builtin_popcount(bits); }
    TagSet with(int tag) const { return {bits | 1u << (tag - 1)}; }

    bool operator==(const TagSet&) const = default;

    std::string to_string() const {
        std::string s = "{";
        for (int t = 1; t <= 32; ++t)
            if (contains(t)) {
                if (s.size() > 1) s += ',';
                s += std::to_string(t);
            }
        return s + "}";
    }
};

enum class Primitive { Exp, Ln, Sin, Cos, Sqrt, Neg, Recip, PowInt };

inline const char* primitive_name(Primitive p) {
    switch (p) {
        case Primitive::Exp: return "exp";
        case Primitive::Ln: return "ln";
        case Primitive::Sin: return "sin";
        case Primitive::Cos: return "cos";
        case Primitive::Sqrt: return "sqrt";
        case Primitive::Neg: return "neg";
        case Primitive::Recip: return "recip";
        case Primitive::PowInt: return "pow";
    }
    return "?";
}

namespace detail {

inline double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// k-th derivative of the primitive at c, from closed forms. exponent is only
// used by PowInt.
inline double primitive_derivative(Primitive p, int k, double c, int exponent) {
    switch (p) {
        case Primitive::Exp:
            return std::exp(c);
        case Primitive::Ln:
            if (c <= 0)
                throw domain_error("ln: argument " + short_num(c) + " is not positive");
            if (k == 0) return std::log(c);
            return (k % 2 ? 1.0 : -1.0) * factorial(k - 1) / std::pow(c, k);
        case Primitive::Sin:
            return std::sin(c + k * 1.5707963267948966);
        case Primitive::Cos:
            return std::cos(c + k * 1.5707963267948966);
        case Primitive::Sqrt: {
            if (c <= 0)
                throw domain_error("sqrt: argument " + short_num(c) + " is not positive");
            double coef = 1;
            for (int j = 0; j < k; ++j) coef *= 0.5 - j;
            return coef * std::pow(c, 0.5 - k);
        }
        case Primitive::Neg:
            return k == 0 ? -c : (k == 1 ? -1.0 : 0.0);
        case Primitive::Recip:
            if (c == 0) throw domain_error("recip: argument is zero");
            return (k % 2 ? -1.0 : 1.0) * factorial(k) / std::pow(c, k + 1);
        case Primitive::PowInt: {
            if (k > exponent) return 0.0;
            double coef = 1;
            for (int j = 0; j < k; ++j) coef *= exponent - j;
            return coef * std::pow(c, exponent - k);  // pow(0,0) == 1
        }
    }
    return 0;
}

}  // namespace detail

// Element of the algebra with vector-valued coefficients: one length-d vector
// per subset of {1..n}. Coefficients are stored flat as [mask*d + component].
class MultiDual {
public:
    MultiDual() = default;

    MultiDual(int width, int dim) : width_(width), dim_(dim) {
        check_order_cap(width, "MultiDual");
        if (dim < 1) throw contract_error("MultiDual: dim must be positive");
        coeffs_.assign((std::size_t{1} << width) * static_cast<std::size_t>(dim), 0.0);
    }

    // Scalar constant c, all tag coefficients zero.
    static MultiDual constant(int width, double c) {
        MultiDual m(width, 1);
        m.coeffs_[0] = c;
        return m;
    }

    // Scalar c + sum_i seeds[i] * e_{i+1}; the standard differentiation input.
    static MultiDual seeded(int width, double c, const std::vector<double>& seeds) {
        if (static_cast<int>(seeds.size()) != width)
            throw contract_error("MultiDual::seeded: seed count != width");
        MultiDual m = constant(width, c);
        for (int i = 0; i < width; ++i) m.coeffs_[std::size_t{1} << i] = seeds[static_cast<std::size_t>(i)];
        return m;
    }

    int width() const { return width_; }
    int dim() const { return dim_; }

    double& at(TagSet tags, int component = 0) {
        return coeffs_[static_cast<std::size_t>(tags.bits) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(component)];
    }
    double at(TagSet tags, int component = 0) const {
        return coeffs_[static_cast<std::size_t>(tags.bits) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(component)];
    }

    double constant_part() const { return coeffs_[0]; }

    std::vector<double> extract(TagSet tags) const {
        if (tags.bits >> width_)
            throw contract_error("extract: tags outside width " + std::to_string(width_));
        auto base = coeffs_.begin() + static_cast<std::ptrdiff_t>(
                                          static_cast<std::size_t>(tags.bits) *
                                          static_cast<std::size_t>(dim_));
        return std::vector<double>(base, base + dim_);
    }

    bool operator==(const MultiDual&) const = default;

    friend MultiDual md_add(const MultiDual& a, const MultiDual& b) {
        a.require_same_shape(b, "md_add");
        MultiDual r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }

    friend MultiDual md_sub(const MultiDual& a, const MultiDual& b) {
        a.require_same_shape(b, "md_sub");
        MultiDual r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }

    friend MultiDual md_neg(const MultiDual& a) {
        MultiDual r = a;
        for (double& c : r.coeffs_) c = -c;
        return r;
    }

    // Subset convolution respecting ei^2=0: c_U = sum over s subset of U of
    // a_s * b_{U\s}. Scalar coefficients only.
    friend MultiDual md_mul(const MultiDual& a, const MultiDual& b) {
        a.require_same_shape(b, "md_mul");
        if (a.dim_ != 1) throw contract_error("md_mul: defined for dim 1 only");
        MultiDual r(a.width_, 1);
        const std::uint32_t full = (1u << a.width_) - 1u;
        for (std::uint32_t s = 0;; ++s) {
            double as = a.coeffs_[s];
            if (as != 0.0) {
                std::uint32_t rest = full & ~s;
                // enumerate subsets t of rest, including 0
                std::uint32_t t = rest;
                for (;;) {
                    r.coeffs_[s | t] += as * b.coeffs_[t];
                    if (t == 0) break;
                    t = (t - 1) & rest;
                }
            }
            if (s == full) break;
        }
        return r;
    }

    friend MultiDual operator+(const MultiDual& a, const MultiDual& b) { return md_add(a, b); }
    friend MultiDual operator-(const MultiDual& a, const MultiDual& b) { return md_sub(a, b); }
    friend MultiDual operator-(const MultiDual& a) { return md_neg(a); }
    friend MultiDual operator*(const MultiDual& a, const MultiDual& b) { return md_mul(a, b); }

    bool is_zero() const {
        for (double c : coeffs_)
            if (c != 0.0) return false;
        return true;
    }

private:
    void require_same_shape(const MultiDual& b, const char* op) const {
        if (width_ != b.width_ || dim_ != b.dim_)
            throw contract_error(std::string(op) + ": shape mismatch (" + std::to_string(width_) +
                                 "," + std::to_string(dim_) + ") vs (" + std::to_string(b.width_) +
                                 "," + std::to_string(b.dim_) + ")");
    }

    int width_ = 0;
    int dim_ = 1;
    std::vector<double> coeffs_ = {0.0};
};

// prim(a) for a = c + N with N nilpotent: sum_{k=0}^{n} prim^{(k)}(c)/k! N^k.
inline MultiDual md_apply_univariate(Primitive prim, const MultiDual& a, int exponent = 0) {
    if (a.dim() != 1) throw contract_error("md_apply_univariate: dim 1 only");
    const double c = a.constant_part();
    MultiDual nil = a;
    nil.at(TagSet::empty()) = 0.0;

    MultiDual result = MultiDual::constant(a.width(), detail::primitive_derivative(prim, 0, c, exponent));
    MultiDual nil_pow = MultiDual::constant(a.width(), 1.0);
    for (int k = 1; k <= a.width(); ++k) {
        nil_pow = md_mul(nil_pow, nil);
        if (nil_pow.is_zero()) break;
        double dk = detail::primitive_derivative(prim, k, c, exponent);
        if (dk == 0.0) continue;
        double scale = dk / detail::factorial(k);
        MultiDual term = nil_pow;
        for (std::uint32_t mask = 0; mask < (1u << a.width()); ++mask) {
            TagSet t{mask};
            term.at(t) *= scale;
        }
        result = md_add(result, term);
    }
    return result;
}

// Non-negative integer power by repeated multiplication; exact for c = 0.
inline MultiDual md_pow(const MultiDual& a, int exponent) {
    if (exponent < 0) throw contract_error("md_pow: negative exponent");
    MultiDual r = MultiDual::constant(a.width(), 1.0);
    for (int i = 0; i < exponent; ++i) r = md_mul(r, a);
    return r;
}

inline MultiDual md_div(const MultiDual& a, const MultiDual& b) {
    if (b.constant_part() == 0.0)
        throw domain_error("division: divisor constant part is zero");
    return md_mul(a, md_apply_univariate(Primitive::Recip, b));
}

inline std::vector<double> extract_coefficient(const MultiDual& a, TagSet tags) {
    return a.extract(tags);
}

}  // namespace fdb
