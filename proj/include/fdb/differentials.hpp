#pragma once

// Directional differentials of parsed functions: n-th order mixed directional
// differentials via the multi-dual algebra and via nested central differences,
// partial differentials, and the total-differential decomposition.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fdb/errors.hpp"
#include "fdb/expr.hpp"
#include "fdb/multidual.hpp"

namespace fdb {

// Ordered directions eta_1..eta_n, tagged 1..n by position. Repeated identical
// vectors are legal; the classical equal-directions case is the common one.
struct DirectionSet {
    std::vector<std::vector<double>> dirs;

    int order() const { return static_cast<int>(dirs.size()); }
    int dim() const { return dirs.empty() ? 0 : static_cast<int>(dirs.front().size()); }

    void validate(int expected_dim) const {
        if (dirs.empty()) throw contract_error("DirectionSet: at least one direction required");
        for (const auto& d : dirs)
            if (static_cast<int>(d.size()) != expected_dim)
                throw contract_error("DirectionSet: direction dimension " +
                                     std::to_string(d.size()) + " != domain dimension " +
                                     std::to_string(expected_dim));
    }
};

struct EvalPoint {
    std::vector<double> x;

    int dim() const { return static_cast<int>(x.size()); }
};

// Evaluate fun on inputs x_j + sum_i e_i * (eta_i)_j over a width-n algebra.
// Returns one scalar MultiDual per output component; every subset coefficient
// is the mixed differential in the directions that subset tags.
inline std::vector<MultiDual> evaluate_multidual(const ExprFunction& fun, const EvalPoint& x,
                                                 const DirectionSet& dirs) {
    if (x.dim() != fun.input_dim)
        throw contract_error("evaluate_multidual: point dimension " + std::to_string(x.dim()) +
                             " != input_dim " + std::to_string(fun.input_dim));
    dirs.validate(fun.input_dim);
    const int n = dirs.order();
    check_order_cap(n, "evaluate_multidual");
    std::vector<MultiDual> inputs;
    inputs.reserve(static_cast<std::size_t>(fun.input_dim));
    for (int j = 0; j < fun.input_dim; ++j) {
        std::vector<double> seeds(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            seeds[static_cast<std::size_t>(i)] =
                dirs.dirs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        inputs.push_back(MultiDual::seeded(n, x.x[static_cast<std::size_t>(j)], seeds));
    }
    return eval_function(fun, inputs);
}

// delta^n fun(x; eta_1..eta_n): the coefficient of e_1...e_n.
inline std::vector<double> gateaux_md(const ExprFunction& fun, const EvalPoint& x,
                                      const DirectionSet& dirs) {
    auto outputs = evaluate_multidual(fun, x, dirs);
    std::vector<double> result;
    result.reserve(outputs.size());
    TagSet full = TagSet::full(dirs.order());
    for (const auto& out : outputs) result.push_back(out.at(full));
    return result;
}

namespace detail {

// Nested central differences over an arbitrary real-vector map.
inline std::vector<double> nested_central_difference(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    const std::vector<double>& x, const std::vector<std::vector<double>>& dirs, std::size_t level,
    double h) {
    if (level == 0) return map(x);
    const auto& eta = dirs[level - 1];
    std::vector<double> xp = x, xm = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        xp[j] += h * eta[j];
        xm[j] -= h * eta[j];
    }
    auto fp = nested_central_difference(map, xp, dirs, level - 1, h);
    auto fm = nested_central_difference(map, xm, dirs, level - 1, h);
    for (std::size_t j = 0; j < fp.size(); ++j) fp[j] = (fp[j] - fm[j]) / (2 * h);
    return fp;
}

// Step size balancing truncation against roundoff amplified by the n nested
// divisions: h ~ eps^(1/(n+2)) scaled by the point magnitude.
inline double fd_step(const std::vector<double>& x, int order) {
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    return std::pow(2.220446049250313e-16, 1.0 / (order + 2)) * scale;
}

}  // namespace detail

inline constexpr int kMaxFdOrder = 4;

// Finite-difference oracle for delta^n fun; limited to low orders where the
// difference quotients stay above roundoff noise.
inline std::vector<double> gateaux_fd_map(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    const EvalPoint& x, const DirectionSet& dirs) {
    const int n = dirs.order();
    if (n > kMaxFdOrder)
        throw size_error("gateaux_fd: order " + std::to_string(n) + " exceeds FD cap " +
                         std::to_string(kMaxFdOrder));
    double h = detail::fd_step(x.x, n);
    return detail::nested_central_difference(map, x.x, dirs.dirs, static_cast<std::size_t>(n), h);
}

inline std::vector<double> gateaux_fd(const ExprFunction& fun, const EvalPoint& x,
                                      const DirectionSet& dirs) {
    if (x.dim() != fun.input_dim)
        throw contract_error("gateaux_fd: point dimension != input_dim");
    dirs.validate(fun.input_dim);
    return gateaux_fd_map(
        [&fun](const std::vector<double>& pt) { return eval_function(fun, pt); }, x, dirs);
}

// Differential with respect to slot i only: the direction is eta in that
// slot's coordinates and zero elsewhere.
inline std::vector<double> partial_differential(const ExprFunction& fun, const EvalPoint& x,
                                                const std::vector<int>& slot_dims, int slot,
                                                const std::vector<double>& eta) {
    int total = 0;
    for (int d : slot_dims) {
        if (d < 1) throw contract_error("partial_differential: slot dims must be positive");
        total += d;
    }
    if (total != fun.input_dim)
        throw contract_error("partial_differential: slot dims sum to " + std::to_string(total) +
                             ", input_dim is " + std::to_string(fun.input_dim));
    if (slot < 1 || slot > static_cast<int>(slot_dims.size()))
        throw contract_error("partial_differential: slot index " + std::to_string(slot) +
                             " out of range 1.." + std::to_string(slot_dims.size()));
    if (static_cast<int>(eta.size()) != slot_dims[static_cast<std::size_t>(slot - 1)])
        throw contract_error("partial_differential: direction dimension " +
                             std::to_string(eta.size()) + " != slot dimension " +
                             std::to_string(slot_dims[static_cast<std::size_t>(slot - 1)]));
    std::vector<double> full(static_cast<std::size_t>(fun.input_dim), 0.0);
    int offset = 0;
    for (int s = 1; s < slot; ++s) offset += slot_dims[static_cast<std::size_t>(s - 1)];
    std::copy(eta.begin(), eta.end(), full.begin() + offset);
    return gateaux_md(fun, x, DirectionSet{{full}});
}

struct TotalDifferentialReport {
    std::vector<double> lhs;  // differential along the concatenated direction
    std::vector<double> rhs;  // sum of the per-slot partial differentials
    double max_discrepancy = 0;
};

// Total differential versus the sum of partials across slots.
inline TotalDifferentialReport total_differential_check(const ExprFunction& fun, const EvalPoint& x,
                                                        const std::vector<int>& slot_dims,
                                                        const std::vector<std::vector<double>>& etas) {
    if (etas.size() != slot_dims.size())
        throw contract_error("total_differential_check: need one direction per slot");
    std::vector<double> concat;
    for (const auto& eta : etas) concat.insert(concat.end(), eta.begin(), eta.end());
    TotalDifferentialReport report;
    report.lhs = gateaux_md(fun, x, DirectionSet{{concat}});
    report.rhs.assign(report.lhs.size(), 0.0);
    for (std::size_t s = 0; s < slot_dims.size(); ++s) {
        auto part = partial_differential(fun, x, slot_dims, static_cast<int>(s) + 1, etas[s]);
        for (std::size_t j = 0; j < part.size(); ++j) report.rhs[j] += part[j];
    }
    for (std::size_t j = 0; j < report.lhs.size(); ++j)
        report.max_discrepancy = std::max(report.max_discrepancy,
                                          std::abs(report.lhs[j] - report.rhs[j]));
    return report;
}

}  // namespace fdb
