// Shared helpers for the unit and acceptance tests: corpus access, random machines and
// brute-force oracles that avoid the library's own algorithms.

#ifndef SSTLAB_TESTS_SUPPORT_HH
#define SSTLAB_TESTS_SUPPORT_HH

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sstlab/lattice.hh"
#include "sstlab/sst.hh"

namespace testing {

using sstlab::Sst;

/// Update from one image per register, written "x1 a x2" with registers x1..xm.
sstlab::Update upd(std::vector<std::string> images);

/// Word over registers and letters in the same notation.
sstlab::SymWord sw(const std::string& text);

/// Bundled corpus file names, sorted.
std::vector<std::string> corpus_names();
Sst load_corpus(const std::string& name);

struct RandomSpec {
    std::size_t max_work_states{2};  ///< plus one final sink
    std::size_t max_registers{3};
    std::size_t max_letters{2};      ///< letters added per update
    std::string alphabet{"ab"};
    std::string output_alphabet{"ab"};
};

/// Valid copyless machine: working states with letter transitions, $-transitions into a sink.
Sst random_machine(std::mt19937_64& rng, const RandomSpec& spec = {});

/// Random copyless update over m registers with at most max_letters letters.
sstlab::Update random_update(std::mt19937_64& rng, std::size_t m, std::size_t max_letters, const std::string& letters);

/// Outputs by direct recursion over transition choices; no library run or update code.
std::set<std::string> brute_eval(const Sst& sst, const std::string& input);

/// Successful run count by direct recursion.
std::size_t brute_count_runs(const Sst& sst, const std::string& input);

/// A member of L_α described independently of sstlab::ApproxLang.
struct BruteLang {
    enum Kind { Empty, Single, Periodic, Universal } kind{Empty};
    std::string u, v;
};

bool brute_member(const BruteLang& l, const std::string& w);

/// Every member of L_α over `alphabet`.
std::vector<BruteLang> brute_lattice(std::size_t alpha, const std::string& alphabet);

/// L_α members containing every word of `sample`.
std::vector<BruteLang> brute_supersets(const std::vector<BruteLang>& lattice, const std::vector<std::string>& sample);

/// l1 ⊆ l2 on all words up to max_len over alphabet.
bool brute_subset(const BruteLang& l1, const BruteLang& l2, std::size_t max_len, const std::string& alphabet);

bool same(const BruteLang& b, const sstlab::ApproxLang& l);

/// All words over `alphabet` of length ≤ max_len.
std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len);

/// Whether w[n-1] = u_0 v_1^{n-1} u_1 … v_t^{n-1} u_t for n = 1..4 with t ≤ max_blocks, for
/// some words u_i, v_i. Dynamic programming over positions in w_1 and w_2.
bool fits_pumping_pattern(const std::vector<std::string>& w, std::size_t max_blocks);

} // namespace testing

#endif
