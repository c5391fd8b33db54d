// Register updates and their flows.

#ifndef SSTLAB_UPDATE_HH
#define SSTLAB_UPDATE_HH

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "sstlab/symbol.hh"

namespace sstlab {

/// Register valuation, indexed by register.
using Valuation = std::vector<std::string>;

/// Map from each register to a word over registers and letters.
/// `images[i]` is the image of register x_{i+1}.
struct Update {
    std::vector<SymWord> images;

    static Update identity(std::size_t num_registers);

    std::size_t num_registers() const { return images.size(); }
    const SymWord& operator[](std::size_t reg) const { return images[reg]; }

    auto operator<=>(const Update&) const = default;
};

/// Concatenation of all images, u(x_1)…u(x_m), written u(χ).
SymWord image_of_chi(const Update& u);

/// Each register occurs at most once in u(χ).
bool is_copyless(const Update& u);

/// Number of letters that `u` adds over all registers.
std::size_t letter_capacity(const Update& u);

/// Replaces every register in `w` by its `f`-image.
SymWord substitute(const Update& f, const SymWord& w);

/// compose_updates(f, g)(x) = f applied as a morphism to g(x): f happens first.
/// Throws Error(InvalidArgument) when the register counts differ.
Update compose_updates(const Update& f, const Update& g);

/// Value of `w` under `nu`, with letters kept. Non-register, non-letter symbols are rejected.
std::string evaluate(const Valuation& nu, const SymWord& w);

/// The valuation nu ∘ f.
Valuation apply_update(const Valuation& nu, const Update& f);

/// Flow of an update: for each target register, the source registers of its image in order.
struct Flow {
    std::vector<std::vector<std::size_t>> sources;

    static Flow identity(std::size_t num_registers);
    std::size_t num_registers() const { return sources.size(); }

    auto operator<=>(const Flow&) const = default;
};

Flow flow_of(const Update& u);

/// Flow of compose_updates(f1, f2) given the flows of f1 and f2.
Flow compose_flows(const Flow& f1, const Flow& f2);

bool is_idempotent_flow(const Flow& f);

/// "x1:[x1,x2] x2:[]" style dump, for diagnostics.
std::string flow_to_string(const Flow& f, const std::vector<std::string>& register_names);

} // namespace sstlab

#endif
