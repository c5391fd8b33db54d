// Word equations, systems of them, and two bounded solvers.

#ifndef SSTLAB_WORDEQ_HH
#define SSTLAB_WORDEQ_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/budget.hh"
#include "sstlab/symbol.hh"

namespace sstlab {

/// Sides are words over unknowns (Sym::unknown) and letters.
struct Equation {
    SymWord lhs;
    SymWord rhs;

    auto operator<=>(const Equation&) const = default;
};

using Conjunction = std::vector<Equation>;

/// A disjunction of conjunctions. No disjunct means false; an empty disjunct means true.
struct Clause {
    std::vector<Conjunction> disjuncts;
    std::string provenance;  ///< input word the clause was built from, if any

    bool operator==(const Clause&) const = default;
};

/// Conjunction of clauses over the unknowns listed in `unknowns`.
struct EqSystem {
    std::vector<std::string> unknowns;
    std::vector<Clause> clauses;

    /// Index of the unknown called `name`, added if missing.
    std::size_t intern(const std::string& name);
    bool operator==(const EqSystem&) const = default;
};

/// Values of the unknowns, by index.
using Assignment = std::vector<std::string>;

/// σ(w) with letters kept. Throws Error(InvalidArgument) if σ misses an unknown of w.
std::string apply_assignment(const Assignment& sigma, const SymWord& w);

bool satisfies(const Assignment& sigma, const Equation& eq);
bool satisfies(const Assignment& sigma, const Conjunction& conj);
bool satisfies(const Assignment& sigma, const Clause& clause);
/// Throws Error(InvalidArgument) if σ is shorter than the unknown list.
bool satisfies(const Assignment& sigma, const EqSystem& sys);

/// Sorted letters occurring in the system.
std::string letters_of(const EqSystem& sys);

/// Least satisfying assignment with every value of length ≤ max_len, ordered by total length,
/// then lexicographically. Unknowns absent from the clauses get ε. `alphabet` defaults to the
/// letters of the system. Throws Error(Budget) when the budget runs out.
std::optional<Assignment> solve_bounded(const EqSystem& sys, std::size_t max_len, Budget& budget,
                                        const std::optional<std::string>& alphabet = std::nullopt);

enum class SolveStatus { Sat, Unsat, Unknown };

struct NielsenResult {
    SolveStatus status{SolveStatus::Unknown};
    std::optional<Assignment> witness;  ///< set when Sat
    std::size_t states{0};              ///< explored search states
};

/// Nielsen transformations on a conjunction over `num_unknowns` unknowns, breadth-first with
/// memoization. Unknown when some state lies at `depth` branchings or the budget runs out.
NielsenResult solve_nielsen(const Conjunction& eqs, std::size_t num_unknowns, std::size_t depth, Budget& budget);

/// Parses the .weq format. Throws Error(Parse) with line information.
EqSystem parse_system(const std::string& text);
std::string serialize_system(const EqSystem& sys);
std::string side_text(const EqSystem& sys, const SymWord& w);

} // namespace sstlab

#endif
