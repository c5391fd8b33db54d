// Gaps, α-approximants and the covering construction.

#ifndef SSTLAB_APPROXIMANTS_HH
#define SSTLAB_APPROXIMANTS_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/lattice.hh"
#include "sstlab/run.hh"
#include "sstlab/sst.hh"

namespace sstlab {

/// Approximant languages for registers x_1..x_m and gaps y_0..y_m.
struct Approximant {
    std::vector<ApproxLang> regs;
    std::vector<ApproxLang> gaps;

    /// All registers and gaps mapped to {ε}.
    static Approximant epsilon(std::size_t num_registers);

    auto operator<=>(const Approximant&) const = default;
};

/// A machine whose states carry approximants. `origin[q]` names the state of the machine it
/// was built from.
struct AnnotatedSst {
    Sst machine;
    std::size_t alpha{0};
    std::vector<std::string> origin;
    std::vector<Approximant> annotation;
};

/// Per gap y_j, a word over gaps and letters.
using GapUpdate = std::vector<SymWord>;

/// y_0 f(x_1) y_1 … f(x_m) y_m.
SymWord gapped_image(const Update& f);

/// w⟨x_i, x_{i+1}⟩ for the gap y_i. Throws Error(InvalidArgument) unless the registers of w are
/// x_1..x_k in order.
SymWord gap_extract(const SymWord& w, std::size_t i);

/// The dual update of gaps. Throws Error(Precondition) if f is not flow-normalized.
GapUpdate gap_update(const Update& f);

/// Valuation of the gaps y_0..y_m at position i of a run.
Valuation gap_valuation(const Sst& sst, const Run& run, std::size_t i);

/// Approximant annotation of a flow-normalized machine, trimmed. States are named "q@k".
/// Throws Error(Precondition) if some update is not flow-normalized.
AnnotatedSst annotate_approximants(const Sst& sst, std::size_t alpha);

/// Canonical order for annotated machines, keeping the annotation aligned.
void canonicalize(AnnotatedSst& a);

/// Trims the machine and its annotation together.
AnnotatedSst trim(const AnnotatedSst& a);

struct AdmitsVerdict {
    bool holds{true};
    std::string input;
    std::size_t run_index{0};
    std::size_t position{0};
    std::string variable;  ///< "x1", "y0", ...
    std::string expected;  ///< the annotation
    std::string actual;    ///< closure of the actual value
};

/// Checks that every successful run on inputs of length ≤ max_len sees the annotation as the
/// closure of its register and gap valuations at every position.
AdmitsVerdict check_admits(const AnnotatedSst& a, std::size_t alpha, std::size_t max_len);

struct TightnessReport {
    std::size_t states_seen{0};
    std::size_t states_tight{0};
    std::vector<StateId> unresolved;
};

/// For each annotated state on a run of length ≤ max_len, searches the runs obtained by pumping
/// loops around it (n ≤ max_pump) for one whose β-closures equal the annotation.
TightnessReport probe_tightness(const AnnotatedSst& a, std::size_t beta, std::size_t max_len, std::size_t max_pump);

} // namespace sstlab

#endif
