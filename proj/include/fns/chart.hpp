#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fns/errors.hpp"

namespace fns {

enum class ChartKind { Base, Cotangent };

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// A single coordinate chart: an ordered list of variable names.
/// A cotangent chart over an m-dimensional base has 2m variables,
/// ordered q1..qm, p1..pm, and remembers its base chart.
class Chart {
public:
    static ChartPtr base(std::vector<std::string> vars) {
        return ChartPtr(new Chart(std::move(vars), nullptr));
    }

    /// Base chart with variables x1..xm.
    static ChartPtr base_of_dim(int m) {
        std::vector<std::string> vars;
        for (int i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
        return base(std::move(vars));
    }

    static ChartPtr cotangent(ChartPtr base_chart) {
        if (!base_chart || base_chart->kind() != ChartKind::Base)
            throw Error("cotangent chart requires a base chart");
        int m = base_chart->dimension();
        std::vector<std::string> vars;
        for (int i = 1; i <= m; ++i) vars.push_back("q" + std::to_string(i));
        for (int i = 1; i <= m; ++i) vars.push_back("p" + std::to_string(i));
        return ChartPtr(new Chart(std::move(vars), std::move(base_chart)));
    }

    int dimension() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& variable(int i) const { return vars_.at(static_cast<std::size_t>(i)); }
    ChartKind kind() const { return base_ ? ChartKind::Cotangent : ChartKind::Base; }
    const ChartPtr& base_chart() const { return base_; }
    int base_dimension() const { return base_ ? base_->dimension() : dimension(); }

    /// Index of a variable name, or -1.
    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        return -1;
    }

    std::string id() const {
        std::string s = base_ ? "T*(" : "(";
        const auto& vs = base_ ? base_->vars_ : vars_;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) s += ",";
            s += vs[i];
        }
        return s + ")";
    }

private:
    Chart(std::vector<std::string> vars, ChartPtr base) : vars_(std::move(vars)), base_(std::move(base)) {}

    std::vector<std::string> vars_;
    ChartPtr base_;
};

/// Structural chart equality: independently constructed identical charts
/// count as the same chart.
inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    if (a->variables() != b->variables()) return false;
    if (a->kind() == ChartKind::Cotangent) return same_chart(a->base_chart(), b->base_chart());
    return true;
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
    if (!same_chart(a, b))
        throw ChartMismatch(std::string(where) + ": charts " + a->id() + " and " + b->id() + " differ");
}

} // namespace fns
