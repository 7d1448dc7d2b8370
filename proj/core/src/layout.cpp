#include "cqed/layout.hpp"

#include <set>
#include <stdexcept>

namespace cqed::hilbert {

SpaceLayout::SpaceLayout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
    if (subs_.empty()) throw std::invalid_argument("SpaceLayout: at least one subsystem required");
    std::set<std::string> seen;
    total_ = 1;
    for (const auto& s : subs_) {
        if (s.dim == 0) throw std::invalid_argument("SpaceLayout: subsystem '" + s.label + "' has dim 0");
        if (!seen.insert(s.label).second)
            throw std::invalid_argument("SpaceLayout: duplicate label '" + s.label + "'");
        total_ *= s.dim;
    }
}

bool SpaceLayout::has(const std::string& label) const noexcept {
    for (const auto& s : subs_)
        if (s.label == label) return true;
    return false;
}

std::size_t SpaceLayout::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].label == label) return i;
    throw std::invalid_argument("SpaceLayout: unknown subsystem '" + label + "'");
}

std::size_t SpaceLayout::dim_of(const std::string& label) const {
    return subs_[index_of(label)].dim;
}

std::size_t SpaceLayout::dim_before(std::size_t k) const {
    std::size_t d = 1;
    for (std::size_t i = 0; i < k; ++i) d *= subs_.at(i).dim;
    return d;
}

std::size_t SpaceLayout::dim_after(std::size_t k) const {
    std::size_t d = 1;
    for (std::size_t i = k + 1; i < subs_.size(); ++i) d *= subs_.at(i).dim;
    return d;
}

bool operator==(const SpaceLayout& a, const SpaceLayout& b) {
    if (a.subs_.size() != b.subs_.size()) return false;
    for (std::size_t i = 0; i < a.subs_.size(); ++i)
        if (a.subs_[i].label != b.subs_[i].label || a.subs_[i].dim != b.subs_[i].dim) return false;
    return true;
}

SpaceLayout single_space(const std::string& label, std::size_t dim) {
    return SpaceLayout({{label, dim}});
}

}  // namespace cqed::hilbert
