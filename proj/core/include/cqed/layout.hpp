// layout.hpp — Composite Hilbert-space layouts (ordered tensor factors).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cqed::hilbert {

struct Subsystem {
    std::string label;
    std::size_t dim{0};
};

// Ordered tensor-product structure. The first subsystem is the slowest index:
// for factors (A, B, C) the composite basis index is
//   i = i_A * (dim_B * dim_C) + i_B * dim_C + i_C.
class SpaceLayout {
public:
    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<Subsystem> subsystems);

    const std::vector<Subsystem>& subsystems() const noexcept { return subs_; }
    std::size_t total_dim() const noexcept { return total_; }
    std::size_t size() const noexcept { return subs_.size(); }

    bool has(const std::string& label) const noexcept;
    std::size_t index_of(const std::string& label) const;   // throws on unknown label
    const Subsystem& at(std::size_t i) const { return subs_.at(i); }
    std::size_t dim_of(const std::string& label) const;

    // Product of dims of all subsystems before / after position k.
    std::size_t dim_before(std::size_t k) const;
    std::size_t dim_after(std::size_t k) const;

    friend bool operator==(const SpaceLayout& a, const SpaceLayout& b);
    friend bool operator!=(const SpaceLayout& a, const SpaceLayout& b) { return !(a == b); }

private:
    std::vector<Subsystem> subs_;
    std::size_t total_{0};
};

// Convenience builders.
SpaceLayout single_space(const std::string& label, std::size_t dim);

}  // namespace cqed::hilbert
