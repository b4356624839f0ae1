#include "firefly/objective.hpp"

#include <stdexcept>

namespace firefly {

Objective::Objective(std::string name, Position lower, Position upper, Function eval,
                     std::optional<KnownOptimum> known_optimum, std::shared_ptr<Dynamics> dynamics)
    : name_(std::move(name)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      eval_(std::move(eval)),
      known_optimum_(std::move(known_optimum)),
      dynamics_(std::move(dynamics)) {
    if (lower_.empty()) throw std::invalid_argument(name_ + ": dimension must be positive");
    if (lower_.size() != upper_.size()) throw std::invalid_argument(name_ + ": bound vectors differ in length");
    if (!eval_) throw std::invalid_argument(name_ + ": missing evaluation function");
    width_.resize(lower_.size());
    for (std::size_t k = 0; k < lower_.size(); ++k) {
        if (!(lower_[k] < upper_[k]))
            throw std::invalid_argument(name_ + ": lower bound must be below upper bound in dimension " +
                                        std::to_string(k));
        width_[k] = upper_[k] - lower_[k];
    }
    if (known_optimum_ && known_optimum_->position.size() != lower_.size())
        throw std::invalid_argument(name_ + ": known optimum has wrong dimension");
}

bool Objective::contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] < lower_[k] || x[k] > upper_[k]) return false;
    return true;
}

}  // namespace firefly
