#include "sstlab/quotient.hh"

#include "sstlab/equivalence.hh"
#include "sstlab/error.hh"

namespace sstlab {

namespace {

/// Shared by both overloads: `copied_from[q]` receives the state a new state copies.
Sst transient(const Sst& sst, std::vector<StateId>& copied_from) {
    std::vector<char> entered(sst.num_states(), 0);
    for (const Transition& t : sst.transitions) { entered[t.target] = 1; }
    Sst out = sst;
    copied_from.resize(sst.num_states());
    for (StateId q = 0; q < sst.num_states(); ++q) { copied_from[q] = q; }
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (!sst.initial[q] || !entered[q]) { continue; }
        std::string name = sst.states[q] + "'";
        while (out.find_state(name)) { name += "'"; }
        const StateId fresh = out.add_state(name, true, sst.final[q] != 0);
        copied_from.push_back(q);
        out.initial[q] = 0;
        for (const Transition& t : sst.transitions) {
            if (t.source == q) { out.transitions.push_back({fresh, t.label, t.update, t.target}); }
        }
    }
    return out;
}

void check_quotient_pre(const Sst& sst, char a) {
    if (a == kMarker) { fail(ErrorKind::InvalidArgument, "quotient: the end marker cannot be quotiented"); }
    for (const Transition& t : sst.transitions) {
        if (sst.initial[t.target]) { fail(ErrorKind::Precondition, "quotient: initial states are not transient"); }
    }
}

} // namespace

Sst make_initials_transient(const Sst& sst) {
    std::vector<StateId> copied_from;
    Sst out = transient(sst, copied_from);
    canonicalize(out);
    return out;
}

AnnotatedSst make_initials_transient(const AnnotatedSst& a) {
    std::vector<StateId> copied_from;
    AnnotatedSst out;
    out.alpha = a.alpha;
    out.machine = transient(a.machine, copied_from);
    for (StateId src : copied_from) {
        out.origin.push_back(a.origin.at(src));
        out.annotation.push_back(a.annotation.at(src));
    }
    canonicalize(out);
    return out;
}

Sst quotient_letter(const Sst& sst, char a) {
    check_quotient_pre(sst, a);
    const auto out_edges = outgoing(sst);
    Sst out = sst;
    out.transitions.clear();
    for (const Transition& t : sst.transitions) {
        if (!sst.initial[t.source]) {
            out.transitions.push_back(t);
            continue;
        }
        if (t.label != a) { continue; }
        for (std::size_t ti : out_edges[t.target]) {
            const Transition& next = sst.transitions[ti];
            out.transitions.push_back({t.source, next.label, compose_updates(t.update, next.update), next.target});
        }
    }
    canonicalize(out);
    return out;
}

AnnotatedSst quotient_letter(const AnnotatedSst& a, char letter) {
    AnnotatedSst out = a;
    out.machine = quotient_letter(a.machine, letter);
    return out;
}

Sst quotient_word(const Sst& sst, const std::string& u, bool trim_result) {
    if (u.find(kMarker) != std::string::npos) { fail(ErrorKind::InvalidArgument, "quotient: word contains the end marker"); }
    Sst out = u.empty() ? sst : make_initials_transient(sst);
    for (char a : u) { out = quotient_letter(out, a); }
    return trim_result ? trim(out) : out;
}

AnnotatedSst quotient_word(const AnnotatedSst& a, const std::string& u, bool trim_result) {
    if (u.find(kMarker) != std::string::npos) { fail(ErrorKind::InvalidArgument, "quotient: word contains the end marker"); }
    AnnotatedSst out = u.empty() ? a : make_initials_transient(a);
    for (char c : u) { out = quotient_letter(out, c); }
    return trim_result ? trim(out) : out;
}

AnnotatedSst quotient_prune(const AnnotatedSst& a, const std::string& u, bool trim_result) {
    return prune_edges(quotient_word(a, u, trim_result));
}

} // namespace sstlab
