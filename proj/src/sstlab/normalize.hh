// Flow normalization.

#ifndef SSTLAB_NORMALIZE_HH
#define SSTLAB_NORMALIZE_HH

#include <compare>
#include <string>
#include <vector>

#include "sstlab/sst.hh"

namespace sstlab {

/// Partial injection from registers onto x_1..x_k.
struct Renaming {
    /// order[i] is the register sent to x_{i+1}.
    std::vector<std::size_t> order;
    std::size_t num_registers{0};

    std::size_t dlen() const { return order.size(); }
    /// Image index of `reg`, or -1 when undefined.
    long image(std::size_t reg) const;

    auto operator<=>(const Renaming&) const = default;
};

bool is_non_erasing(const Update& u);
bool is_non_permuting(const Update& u);
inline bool is_flow_normalized(const Update& u) { return is_non_erasing(u) && is_non_permuting(u); }

/// The renaming π forced by π' and f: the registers of f(π'^{-1}(x_1))…f(π'^{-1}(x_k)) numbered
/// in order of occurrence.
Renaming induced_renaming(const Update& f, const Renaming& after);

/// f[π→π']. Throws Error(Precondition) unless `before` is the renaming induced by f and `after`.
Update rename_update(const Update& f, const Renaming& before, const Renaming& after);

/// Equivalent machine whose updates are non-erasing and non-permuting. States are named
/// "q[xi.xj...]" after the source state and the renaming; the output register becomes x1.
Sst flow_normalize(const Sst& sst);

std::string renaming_text(const Renaming& r, const std::vector<std::string>& register_names);

} // namespace sstlab

#endif
