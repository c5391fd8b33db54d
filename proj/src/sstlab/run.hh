// Runs, evaluation, loops and pumping.

#ifndef SSTLAB_RUN_HH
#define SSTLAB_RUN_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/sst.hh"

namespace sstlab {

/// A path in a machine: a start state and transition indices into `Sst::transitions`.
struct Run {
    StateId start{0};
    std::vector<std::size_t> steps;

    std::size_t size() const { return steps.size(); }
    bool operator==(const Run&) const = default;
};

/// Half-open interval [begin, end) of run positions.
struct Interval {
    std::size_t begin{0};
    std::size_t end{0};

    auto operator<=>(const Interval&) const = default;
};

/// Throws Error(InvalidArgument) unless `input` is nonempty, ends with the marker and has no
/// other marker.
void check_input(const std::string& input);

/// Chain condition of `run` in `sst`.
bool is_run(const Sst& sst, const Run& run);

/// State reached after position `i` (0 ≤ i ≤ |run|).
StateId state_at(const Sst& sst, const Run& run, std::size_t i);

std::string run_input(const Sst& sst, const Run& run);

/// Composite update of the steps in [begin, end).
Update run_update(const Sst& sst, const Run& run, std::size_t begin, std::size_t end);
Update run_update(const Sst& sst, const Run& run);

/// Successful runs on `input`, in lexicographic order of transition indices.
std::vector<Run> runs(const Sst& sst, const std::string& input);

/// out(run): the output register after the run, started from the all-ε valuation.
std::string output_of(const Sst& sst, const Run& run);

/// Sorted, distinct outputs of all successful runs on `input`.
std::vector<std::string> eval(const Sst& sst, const std::string& input);

/// Number of successful runs on `input`, without enumerating them.
std::size_t count_runs(const Sst& sst, const std::string& input);

/// Register valuation after the first `i` steps.
Valuation register_valuation(const Sst& sst, const Run& run, std::size_t i);

/// Well-formed inputs of length ≤ max_len (marker included) over `alphabet`, in shortlex order.
std::vector<std::string> well_formed_inputs(const std::string& alphabet, std::size_t max_len);

struct KValuedVerdict {
    bool holds{true};
    std::optional<std::string> witness;
    std::vector<std::string> outputs;  ///< outputs on the witness
};

/// Checks |eval(u)| ≤ k on every well-formed input of length ≤ max_len.
KValuedVerdict is_k_valued_bounded(const Sst& sst, std::size_t k, std::size_t max_len);

/// Every [i, j) whose factor returns to its start state with an idempotent flow, sorted.
std::vector<Interval> find_loops(const Sst& sst, const Run& run);

/// Repeats each loop factor `n` times. Throws Error(InvalidArgument) for overlapping intervals,
/// intervals that are not loops, or n = 0.
Run pump(const Sst& sst, const Run& run, const std::vector<Interval>& loops, std::size_t n);

} // namespace sstlab

#endif
