#pragma once

// The n-th order differential of a composition f(g(x)) as a sum over set
// partitions of the directions: each partition contributes an outer
// differential of f whose direction arguments are inner differentials of g
// over the partition's blocks. Includes the nested-definition evaluation of
// the same quantity, the symbolic term list, and the induction regrouping
// check that ties order n+1 to order n.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdb/differentials.hpp"
#include "fdb/errors.hpp"
#include "fdb/expr.hpp"
#include "fdb/multidual.hpp"
#include "fdb/partitions.hpp"

namespace fdb {

struct CompositeProblem {
    ExprFunction f;  // input_dim p
    ExprFunction g;  // input_dim m, p components
    EvalPoint x;     // dimension m
    DirectionSet dirs;

    int order() const { return dirs.order(); }

    void validate() const {
        if (g.output_dim() != f.input_dim)
            throw contract_error("composite: g has " + std::to_string(g.output_dim()) +
                                 " components but f has input arity " +
                                 std::to_string(f.input_dim));
        if (x.dim() != g.input_dim)
            throw contract_error("composite: point dimension " + std::to_string(x.dim()) +
                                 " != g input_dim " + std::to_string(g.input_dim));
        dirs.validate(g.input_dim);
        check_order_cap(dirs.order(), "composite");
    }
};

// All inner differentials of g at once: one width-n evaluation of g, then one
// p-vector per non-empty subset of {1..n}. Index 0 holds g(x) itself.
struct InnerDifferentials {
    int order = 0;
    int p = 0;
    std::vector<std::vector<double>> by_subset;  // indexed by TagSet bits

    const std::vector<double>& operator[](TagSet tags) const {
        return by_subset[tags.bits];
    }
};

inline InnerDifferentials inner_differentials(const ExprFunction& g, const EvalPoint& x,
                                              const DirectionSet& dirs) {
    auto outputs = evaluate_multidual(g, x, dirs);
    InnerDifferentials inner;
    inner.order = dirs.order();
    inner.p = static_cast<int>(outputs.size());
    inner.by_subset.resize(std::size_t{1} << dirs.order());
    for (std::uint32_t mask = 0; mask < inner.by_subset.size(); ++mask) {
        std::vector<double> v(static_cast<std::size_t>(inner.p));
        for (int c = 0; c < inner.p; ++c)
            v[static_cast<std::size_t>(c)] = outputs[static_cast<std::size_t>(c)].at(TagSet{mask});
        inner.by_subset[mask] = std::move(v);
    }
    return inner;
}

inline InnerDifferentials inner_differentials(const CompositeProblem& problem) {
    problem.validate();
    return inner_differentials(problem.g, problem.x, problem.dirs);
}

// delta^k f(y0; xis) over a fresh width-k tag algebra, so outer and inner tag
// spaces never alias.
inline std::vector<double> outer_differential(const ExprFunction& f, const std::vector<double>& y0,
                                              const std::vector<std::vector<double>>& xis) {
    return gateaux_md(f, EvalPoint{y0}, DirectionSet{xis});
}

struct SymbolicTerm {
    Partition partition;
    int outer_order = 0;
    std::string text;
};

namespace detail {

inline std::string render_term(const Partition& p) {
    std::string out = "d" + std::to_string(p.block_count()) + "f(g(x); ";
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (b) out += ", ";
        out += "d" + std::to_string(p.blocks[b].size()) + "g(x;";
        for (std::size_t i = 0; i < p.blocks[b].size(); ++i) {
            if (i) out += ',';
            out += "e" + std::to_string(p.blocks[b][i]);
        }
        out += ')';
    }
    return out + ")";
}

inline TagSet block_tags(const std::vector<int>& block) {
    TagSet t;
    for (int e : block) t = t.with(e);
    return t;
}

}  // namespace detail

// One term per partition of {1..n}, canonical order; bell_number(n) terms.
inline std::vector<SymbolicTerm> symbolic_expansion(int n) {
    if (n < 1) throw contract_error("symbolic_expansion: order must be positive");
    check_order_cap(n, "symbolic_expansion");
    std::vector<SymbolicTerm> terms;
    for (auto& p : enumerate_partitions(n)) {
        SymbolicTerm t;
        t.outer_order = p.block_count();
        t.text = detail::render_term(p);
        t.partition = std::move(p);
        terms.push_back(std::move(t));
    }
    return terms;
}

struct TermValue {
    Partition partition;
    std::vector<double> value;  // q-vector
};

struct DifferentialReport {
    int order = 0;
    std::vector<double> value_faa;
    std::vector<double> value_nested;
    std::optional<std::vector<double>> value_fd;
    std::vector<TermValue> terms;
    double discrepancy_faa_nested = 0;
    std::optional<double> discrepancy_faa_fd;
};

namespace detail {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace detail

// The partition-sum value of delta^n (f o g)(x; dirs) plus per-partition terms.
inline std::vector<TermValue> partition_sum_terms(const CompositeProblem& problem,
                                                  const InnerDifferentials& inner) {
    std::vector<TermValue> terms;
    const auto& y0 = inner.by_subset[0];
    for (auto& p : enumerate_partitions(problem.order())) {
        std::vector<std::vector<double>> xis;
        xis.reserve(p.blocks.size());
        for (const auto& block : p.blocks) xis.push_back(inner[detail::block_tags(block)]);
        TermValue tv;
        tv.value = outer_differential(problem.f, y0, xis);
        tv.partition = std::move(p);
        terms.push_back(std::move(tv));
    }
    return terms;
}

// The nested-definition value: evaluate g over the shared width-n algebra and
// feed its multi-dual outputs straight into f, then read the full-tag
// coefficient. This is the recursive differential of the literal composition.
inline std::vector<double> nested_value(const CompositeProblem& problem) {
    auto g_outputs = evaluate_multidual(problem.g, problem.x, problem.dirs);
    std::vector<double> result;
    TagSet full = TagSet::full(problem.order());
    for (const auto& out : eval_function(problem.f, g_outputs)) result.push_back(out.at(full));
    return result;
}

inline std::vector<double> fd_value(const CompositeProblem& problem) {
    return gateaux_fd_map(
        [&problem](const std::vector<double>& pt) {
            return eval_function(problem.f, eval_function(problem.g, pt));
        },
        problem.x, problem.dirs);
}

inline DifferentialReport faa_di_bruno_eval(const CompositeProblem& problem,
                                            bool include_fd = true) {
    problem.validate();
    DifferentialReport report;
    report.order = problem.order();

    auto inner = inner_differentials(problem);
    report.terms = partition_sum_terms(problem, inner);
    report.value_faa.assign(static_cast<std::size_t>(problem.f.output_dim()), 0.0);
    for (const auto& term : report.terms)
        for (std::size_t j = 0; j < term.value.size(); ++j) report.value_faa[j] += term.value[j];

    report.value_nested = nested_value(problem);
    report.discrepancy_faa_nested = detail::max_abs_diff(report.value_faa, report.value_nested);

    if (include_fd && problem.order() <= 3) {
        report.value_fd = fd_value(problem);
        report.discrepancy_faa_fd = detail::max_abs_diff(report.value_faa, *report.value_fd);
    }
    return report;
}

struct InductionCheckReport {
    int from_order = 0;  // n; the check relates orders n and n+1
    std::vector<double> value_direct;     // partition sum at order n+1
    std::vector<double> value_regrouped;  // new-singleton + block-append regrouping
    double max_discrepancy = 0;
};

// Regroup the order-(n+1) partition sum the way the induction generates it
// from order n: every order-n partition contributes one new-singleton term and
// one block-append term per block. Both sides must agree.
inline InductionCheckReport induction_step_check(const CompositeProblem& problem) {
    problem.validate();
    const int n1 = problem.order();
    if (n1 < 2)
        throw contract_error("induction_step_check: needs order >= 2 (got " + std::to_string(n1) +
                             ")");
    InductionCheckReport report;
    report.from_order = n1 - 1;

    auto inner = inner_differentials(problem);
    const auto& y0 = inner.by_subset[0];

    auto direct_terms = partition_sum_terms(problem, inner);
    report.value_direct.assign(static_cast<std::size_t>(problem.f.output_dim()), 0.0);
    for (const auto& term : direct_terms)
        for (std::size_t j = 0; j < term.value.size(); ++j)
            report.value_direct[j] += term.value[j];

    report.value_regrouped.assign(report.value_direct.size(), 0.0);
    auto accumulate = [&report](const std::vector<double>& v) {
        for (std::size_t j = 0; j < v.size(); ++j) report.value_regrouped[j] += v[j];
    };
    for (const auto& p : enumerate_partitions(n1 - 1)) {
        std::vector<std::vector<double>> xis;
        xis.reserve(p.blocks.size() + 1);
        for (const auto& block : p.blocks) xis.push_back(inner[detail::block_tags(block)]);
        // new subset containing only the last direction
        xis.push_back(inner[TagSet::single(n1)]);
        accumulate(outer_differential(problem.f, y0, xis));
        xis.pop_back();
        // last direction appended to each existing block in turn
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
            auto saved = xis[b];
            xis[b] = inner[detail::block_tags(p.blocks[b]).with(n1)];
            accumulate(outer_differential(problem.f, y0, xis));
            xis[b] = saved;
        }
    }
    report.max_discrepancy = detail::max_abs_diff(report.value_direct, report.value_regrouped);
    return report;
}

}  // namespace fdb
