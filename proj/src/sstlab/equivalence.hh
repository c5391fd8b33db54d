// Transition equivalence and edge pruning.

#ifndef SSTLAB_EQUIVALENCE_HH
#define SSTLAB_EQUIVALENCE_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/approximants.hh"

namespace sstlab {

/// y_0 f(x_1) y_1 … f(x_m) y_m. Throws Error(Precondition) unless f is flow-normalized.
SymWord eff(const Update& f);

/// Decides whether lhs = rhs under every valuation with registers in `regs` and gaps in `gaps`.
/// Both sides must list the same variables in the same order.
bool eff_words_equal_under(const SymWord& lhs, const SymWord& rhs, const std::vector<ApproxLang>& regs,
                           const std::vector<ApproxLang>& gaps);

/// eff(f1) = eff(f2) on all valuations in regs ⊎ gaps, where regs annotates the source and
/// gaps the target. Throws Error(Precondition) on label or flow mismatch.
bool transitions_equiv(const Transition& t1, const Transition& t2, const std::vector<ApproxLang>& regs,
                       const std::vector<ApproxLang>& gaps);

struct Context {
    Run prefix;  ///< initial run into the source state
    Run suffix;  ///< final run out of the target state
    std::string input;
    std::string output1;
    std::string output2;
};

struct OracleVerdict {
    bool equivalent{true};
    std::size_t contexts{0};
    std::size_t witnesses{0};
    std::optional<Context> witness;  ///< first differing context
};

/// Compares out(ρ τ1 σ) and out(ρ τ2 σ) over all contexts with |ρ| + |σ| ≤ max_len.
OracleVerdict transitions_equiv_oracle(const Sst& sst, std::size_t t1, std::size_t t2, std::size_t max_len);

/// Largest number of transitions sharing source, label and target.
std::size_t edge_ambiguity(const Sst& sst);

/// Keeps the least transition of every equivalence class within each
/// (source, label, target, flow) group.
AnnotatedSst prune_edges(const AnnotatedSst& a);

/// k · 2^m.
std::size_t edge_ambiguity_bound(std::size_t k, std::size_t num_registers);

} // namespace sstlab

#endif
