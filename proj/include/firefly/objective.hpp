#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firefly {

using Position = std::vector<double>;

struct KnownOptimum {
    Position position;
    double value = 0.0;
};

/// Time-varying behaviour attached to an objective. Implementations own
/// mutable state keyed to the evaluation count, so an Objective carrying
/// dynamics must not be shared between concurrent runs.
class Dynamics {
public:
    virtual ~Dynamics() = default;
    virtual std::uint64_t change_count() const = 0;
    virtual std::uint64_t evaluations() const = 0;
    /// Minimum value of the objective in its current state.
    virtual double current_optimum_value() const = 0;
};

/// Black-box minimization target over a box.
class Objective {
public:
    using Function = std::function<double(std::span<const double>)>;

    Objective(std::string name, Position lower, Position upper, Function eval,
              std::optional<KnownOptimum> known_optimum = std::nullopt,
              std::shared_ptr<Dynamics> dynamics = nullptr);

    double operator()(std::span<const double> x) const { return eval_(x); }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return lower_.size(); }
    const Position& lower() const { return lower_; }
    const Position& upper() const { return upper_; }
    /// upper - lower per dimension.
    const Position& width() const { return width_; }
    const std::optional<KnownOptimum>& known_optimum() const { return known_optimum_; }
    const std::shared_ptr<Dynamics>& dynamics() const { return dynamics_; }

    bool contains(std::span<const double> x) const;

private:
    std::string name_;
    Position lower_;
    Position upper_;
    Position width_;
    Function eval_;
    std::optional<KnownOptimum> known_optimum_;
    std::shared_ptr<Dynamics> dynamics_;
};

}  // namespace firefly
