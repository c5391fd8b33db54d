// Left quotients by shortcutting initial transitions.

#ifndef SSTLAB_QUOTIENT_HH
#define SSTLAB_QUOTIENT_HH

#include <string>

#include "sstlab/approximants.hh"

namespace sstlab {

/// Copies every initial state that has incoming transitions to a fresh initial state named
/// "q'", demoting the original. Fresh copies inherit the original's annotation.
Sst make_initials_transient(const Sst& sst);
AnnotatedSst make_initials_transient(const AnnotatedSst& a);

/// Machine for { (v, w) : (a v, w) ∈ R }. States, registers and annotation are unchanged.
/// Throws Error(InvalidArgument) for the marker and Error(Precondition) when some transition
/// enters an initial state.
Sst quotient_letter(const Sst& sst, char a);
AnnotatedSst quotient_letter(const AnnotatedSst& a, char letter);

/// Iterated letter quotients, after making initial states transient. With `trim_result`, states
/// that became useless are removed.
Sst quotient_word(const Sst& sst, const std::string& u, bool trim_result = false);
AnnotatedSst quotient_word(const AnnotatedSst& a, const std::string& u, bool trim_result = false);

/// quotient_word followed by prune_edges.
AnnotatedSst quotient_prune(const AnnotatedSst& a, const std::string& u, bool trim_result = false);

} // namespace sstlab

#endif
