// Copyless streaming string transducers.

#ifndef SSTLAB_SST_HH
#define SSTLAB_SST_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/update.hh"

namespace sstlab {

using StateId = std::size_t;

struct Transition {
    StateId source{0};
    char label{kMarker};
    Update update;
    StateId target{0};

    auto operator<=>(const Transition&) const = default;
};

/// A copyless SST with an end marker. Plain value type; every operation returns a new machine.
///
/// States are identified by index and carry unique names. Construction code should finish with
/// canonicalize(), which fixes the state and transition order used for serialization and run
/// enumeration.
struct Sst {
    std::string input_alphabet;   ///< sorted, distinct; contains kMarker
    std::string output_alphabet;  ///< sorted, distinct
    std::vector<std::string> registers;
    std::size_t output_register{0};
    std::vector<std::string> states;
    std::vector<char> initial;  ///< per state flag
    std::vector<char> final;    ///< per state flag
    std::vector<Transition> transitions;

    std::size_t num_states() const { return states.size(); }
    std::size_t num_registers() const { return registers.size(); }

    StateId add_state(std::string name, bool is_initial = false, bool is_final = false);
    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<std::size_t> find_register(const std::string& name) const;

    /// Space-separated tokens of a word over registers and letters.
    std::string word_text(const SymWord& w) const;
    /// "x1 := x1 a; x2 := ;" with every register listed.
    std::string update_text(const Update& u) const;
    /// "q0 -a-> q1 { ... }".
    std::string transition_text(const Transition& t) const;

    bool operator==(const Sst&) const = default;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity{Severity::Error};
    std::string location;
    std::string message;
};

/// All violations of the machine conventions; never throws.
std::vector<Diagnostic> validate(const Sst& sst);

/// No error-severity diagnostic.
bool is_valid(const Sst& sst);

/// Largest number of letters added by one transition.
std::size_t capacity(const Sst& sst);

/// Sorts states by name and transitions by (source, label, target, update text), dropping
/// duplicate transitions. Returns the old-to-new state index map.
std::vector<StateId> canonicalize(Sst& sst);

/// States lying on some path from an initial to a final state.
std::vector<char> useful_states(const Sst& sst);

/// Keeps the states flagged in `keep` (in their current order) and the transitions between them.
/// `kept`, if given, receives the old index of every new state.
Sst restrict_states(const Sst& sst, const std::vector<char>& keep, std::vector<StateId>* kept = nullptr);

/// Removes states that are not both reachable and co-reachable.
Sst trim(const Sst& sst);

/// Transition indices grouped by source state, in transition order.
std::vector<std::vector<std::size_t>> outgoing(const Sst& sst);

} // namespace sstlab

#endif
