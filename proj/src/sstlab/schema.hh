// Schemas (machines with abstract update constants), the systems S_N they induce, and the
// bounded test-set driver.

#ifndef SSTLAB_SCHEMA_HH
#define SSTLAB_SCHEMA_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/budget.hh"
#include "sstlab/sst.hh"
#include "sstlab/wordeq.hh"

namespace sstlab {

/// `skeleton` is the source machine with every maximal constant factor of every image replaced by
/// Sym::unknown(i); phi[i] is the factor and unknown_names[i] its name.
struct Schema {
    Sst skeleton;
    std::vector<std::string> unknown_names;
    std::vector<std::string> phi;

    bool operator==(const Schema&) const = default;
};

/// Unknowns are named prefix1, prefix2, ... in transition order, then image order.
/// `prefix` must match [A-Z][A-Z0-9_]*.
Schema schema_of(const Sst& sst, const std::string& prefix = "U");

/// The machine φ(skeleton).
Sst concretize(const Schema& schema);

/// Skeleton in .sst-like text plus one `phi` line per unknown.
std::string schema_text(const Schema& schema);

/// Output words over unknowns of the successful skeleton runs on `input`, one per run.
std::vector<SymWord> symbolic_outputs(const Schema& schema, const std::string& input);

/// ∨_π S_π for one input word. Unknowns are interned into `sys` by name, so schemas sharing
/// names share unknowns. A partition groups the distinct symbolic outputs into at most k blocks,
/// each holding outputs of both machines.
Clause build_clause(const Schema& s1, const Schema& s2, std::size_t k, const std::string& input, EqSystem& sys);

/// Clauses for every well-formed input over `alphabet` with lengths in [min_len, max_len].
void add_clauses(const Schema& s1, const Schema& s2, std::size_t k, const std::string& alphabet, std::size_t min_len,
                 std::size_t max_len, EqSystem& sys);

/// S_N over the union of the input alphabets.
EqSystem build_system(const Schema& s1, const Schema& s2, std::size_t k, std::size_t max_len);

/// φ1 ⊎ φ2 on the unknowns of `sys`. Throws Error(InvalidArgument) when a shared name has two
/// different constants, or an unknown of `sys` belongs to neither schema.
Assignment phi_assignment(const EqSystem& sys, const Schema& s1, const Schema& s2);

struct EquivVerdict {
    bool equivalent{true};
    std::optional<std::string> witness;
    std::vector<std::string> outputs1;
    std::vector<std::string> outputs2;
};

/// eval(T1, u) = eval(T2, u) for every well-formed u of length ≤ max_len over the union of the
/// input alphabets; the shortlex-least counterexample otherwise.
EquivVerdict equiv_bounded(const Sst& t1, const Sst& t2, std::size_t max_len);

enum class FixpointStatus { Fixpoint, NotFixpoint, Unknown };

struct FixpointResult {
    FixpointStatus status{FixpointStatus::Unknown};
    std::optional<Assignment> witness;  ///< satisfies S_N but not S_{N+1}
    std::optional<std::string> input;   ///< provenance of the violated clause
    EqSystem system;                    ///< S_{N+1}
    std::size_t assignments{0};         ///< assignments checked
};

/// Checks S_N ⇒ S_{N+1} for every assignment with values of length ≤ B over the union of the
/// output alphabets. Unknown when the budget runs out.
FixpointResult testset_fixpoint(const Schema& s1, const Schema& s2, std::size_t k, std::size_t n, std::size_t bound,
                                Budget& budget);

} // namespace sstlab

#endif
