#include "sstlab/sst.hh"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace sstlab {

StateId Sst::add_state(std::string name, bool is_initial, bool is_final) {
    states.push_back(std::move(name));
    initial.push_back(is_initial ? 1 : 0);
    final.push_back(is_final ? 1 : 0);
    return states.size() - 1;
}

std::optional<StateId> Sst::find_state(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) { return std::nullopt; }
    return static_cast<StateId>(it - states.begin());
}

std::optional<std::size_t> Sst::find_register(const std::string& name) const {
    auto it = std::find(registers.begin(), registers.end(), name);
    if (it == registers.end()) { return std::nullopt; }
    return static_cast<std::size_t>(it - registers.begin());
}

std::string Sst::word_text(const SymWord& w) const {
    std::string out;
    for (const Sym& s : w) {
        if (!out.empty()) { out += ' '; }
        switch (s.kind) {
        case Sym::Kind::Letter: out += s.as_letter(); break;
        case Sym::Kind::Reg:
            out += s.index() < registers.size() ? registers[s.index()] : "x?" + std::to_string(s.index() + 1);
            break;
        case Sym::Kind::Gap: out += "y" + std::to_string(s.index()); break;
        case Sym::Kind::Unknown: out += "?" + std::to_string(s.index()); break;
        }
    }
    return out;
}

std::string Sst::update_text(const Update& u) const {
    std::string out;
    for (std::size_t x = 0; x < u.num_registers(); ++x) {
        if (x > 0) { out += ' '; }
        out += (x < registers.size() ? registers[x] : "x?") + " :=";
        const std::string rhs = word_text(u.images[x]);
        if (!rhs.empty()) { out += ' ' + rhs; }
        out += ';';
    }
    return out;
}

std::string Sst::transition_text(const Transition& t) const {
    auto name = [&](StateId q) { return q < states.size() ? states[q] : "?" + std::to_string(q); };
    return name(t.source) + " -" + std::string(1, t.label) + "-> " + name(t.target) + " { " +
           update_text(t.update) + " }";
}

namespace {

Diagnostic error_at(std::string where, std::string what) {
    return {Diagnostic::Severity::Error, std::move(where), std::move(what)};
}

std::vector<char> forward_closure(const Sst& sst, std::vector<char> seed) {
    const auto out = outgoing(sst);
    std::vector<StateId> stack;
    for (StateId q = 0; q < seed.size(); ++q) {
        if (seed[q]) { stack.push_back(q); }
    }
    while (!stack.empty()) {
        const StateId q = stack.back();
        stack.pop_back();
        for (std::size_t ti : out[q]) {
            const StateId t = sst.transitions[ti].target;
            if (!seed[t]) {
                seed[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return seed;
}

std::vector<char> backward_closure(const Sst& sst, std::vector<char> seed) {
    std::vector<std::vector<StateId>> preds(sst.num_states());
    for (const Transition& t : sst.transitions) { preds[t.target].push_back(t.source); }
    std::vector<StateId> stack;
    for (StateId q = 0; q < seed.size(); ++q) {
        if (seed[q]) { stack.push_back(q); }
    }
    while (!stack.empty()) {
        const StateId q = stack.back();
        stack.pop_back();
        for (StateId p : preds[q]) {
            if (!seed[p]) {
                seed[p] = 1;
                stack.push_back(p);
            }
        }
    }
    return seed;
}

} // namespace

std::vector<Diagnostic> validate(const Sst& sst) {
    std::vector<Diagnostic> diags;
    const std::size_t n = sst.num_states();
    const std::size_t m = sst.num_registers();

    if (sst.input_alphabet.find(kMarker) == std::string::npos) {
        diags.push_back(error_at("alphabet input", "end marker '$' is not declared"));
    }
    if (sst.output_alphabet.find(kMarker) != std::string::npos) {
        diags.push_back(error_at("alphabet output", "end marker '$' cannot be an output letter"));
    }
    if (m == 0) {
        diags.push_back(error_at("registers", "no registers declared"));
    } else if (sst.output_register >= m) {
        diags.push_back(error_at("output", "output register is not declared"));
    }
    if (sst.initial.size() != n || sst.final.size() != n) {
        diags.push_back(error_at("states", "initial/final flags do not match the state list"));
        return diags;
    }
    if (std::none_of(sst.initial.begin(), sst.initial.end(), [](char c) { return c != 0; })) {
        diags.push_back({Diagnostic::Severity::Warning, "states", "no initial state"});
    }
    if (std::none_of(sst.final.begin(), sst.final.end(), [](char c) { return c != 0; })) {
        diags.push_back({Diagnostic::Severity::Warning, "states", "no final state"});
    }

    bool structurally_sound = true;
    for (std::size_t i = 0; i < sst.transitions.size(); ++i) {
        const Transition& t = sst.transitions[i];
        const std::string where = "transition #" + std::to_string(i);
        if (t.source >= n || t.target >= n) {
            diags.push_back(error_at(where, "undeclared state"));
            structurally_sound = false;
            continue;
        }
        const std::string loc = where + " (" + sst.transition_text(t) + ")";
        if (sst.input_alphabet.find(t.label) == std::string::npos) {
            diags.push_back(error_at(loc, std::string("unknown input symbol '") + t.label + "'"));
        }
        if (t.update.num_registers() != m) {
            diags.push_back(error_at(loc, "update does not assign every register exactly once"));
            structurally_sound = false;
            continue;
        }
        bool symbols_ok = true;
        for (const SymWord& img : t.update.images) {
            for (const Sym& s : img) {
                if (s.is_reg() && s.index() >= m) {
                    diags.push_back(error_at(loc, "undeclared register"));
                    symbols_ok = false;
                } else if (s.is_letter() && sst.output_alphabet.find(s.as_letter()) == std::string::npos) {
                    diags.push_back(error_at(loc, std::string("unknown output letter '") + s.as_letter() + "'"));
                } else if (s.is_gap() || s.is_unknown()) {
                    diags.push_back(error_at(loc, "update image contains a non-register variable"));
                }
            }
        }
        if (symbols_ok && !is_copyless(t.update)) {
            diags.push_back(error_at(loc, "update is not copyless"));
        }
    }
    if (!structurally_sound) { return diags; }

    // The marker must be the last letter of every successful run.
    const auto reach = forward_closure(sst, sst.initial);
    const auto coreach = backward_closure(sst, sst.final);
    const auto out = outgoing(sst);
    for (std::size_t i = 0; i < sst.transitions.size(); ++i) {
        const Transition& t = sst.transitions[i];
        if (t.label != kMarker || !reach[t.source]) { continue; }
        const bool continues = std::any_of(out[t.target].begin(), out[t.target].end(),
                                           [&](std::size_t ti) { return coreach[sst.transitions[ti].target] != 0; });
        if (continues) {
            diags.push_back(error_at("transition #" + std::to_string(i) + " (" + sst.transition_text(t) + ")",
                                     "end marker can be followed by further input on a successful run"));
        }
    }
    return diags;
}

bool is_valid(const Sst& sst) {
    const auto diags = validate(sst);
    return std::none_of(diags.begin(), diags.end(),
                        [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::size_t capacity(const Sst& sst) {
    std::size_t c = 0;
    for (const Transition& t : sst.transitions) { c = std::max(c, letter_capacity(t.update)); }
    return c;
}

std::vector<StateId> canonicalize(Sst& sst) {
    const std::size_t n = sst.num_states();
    std::vector<StateId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](StateId a, StateId b) { return sst.states[a] < sst.states[b]; });
    std::vector<StateId> old_to_new(n);
    for (StateId i = 0; i < n; ++i) { old_to_new[order[i]] = i; }

    Sst out;
    out.input_alphabet = sst.input_alphabet;
    out.output_alphabet = sst.output_alphabet;
    std::sort(out.input_alphabet.begin(), out.input_alphabet.end());
    out.input_alphabet.erase(std::unique(out.input_alphabet.begin(), out.input_alphabet.end()), out.input_alphabet.end());
    std::sort(out.output_alphabet.begin(), out.output_alphabet.end());
    out.output_alphabet.erase(std::unique(out.output_alphabet.begin(), out.output_alphabet.end()),
                              out.output_alphabet.end());
    out.registers = sst.registers;
    out.output_register = sst.output_register;
    for (StateId old : order) { out.add_state(sst.states[old], sst.initial[old] != 0, sst.final[old] != 0); }

    struct Keyed {
        Transition t;
        std::string text;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(sst.transitions.size());
    for (const Transition& t : sst.transitions) {
        Transition moved = t;
        moved.source = old_to_new.at(t.source);
        moved.target = old_to_new.at(t.target);
        keyed.push_back({moved, out.update_text(t.update)});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.t.source, a.t.label, a.t.target, a.text, a.t.update) <
               std::tie(b.t.source, b.t.label, b.t.target, b.text, b.t.update);
    });
    for (const Keyed& k : keyed) {
        if (out.transitions.empty() || !(out.transitions.back() == k.t)) { out.transitions.push_back(k.t); }
    }
    sst = std::move(out);
    return old_to_new;
}

std::vector<char> useful_states(const Sst& sst) {
    const auto reach = forward_closure(sst, sst.initial);
    const auto coreach = backward_closure(sst, sst.final);
    std::vector<char> keep(sst.num_states());
    for (StateId q = 0; q < keep.size(); ++q) { keep[q] = (reach[q] && coreach[q]) ? 1 : 0; }
    return keep;
}

Sst restrict_states(const Sst& sst, const std::vector<char>& keep, std::vector<StateId>* kept) {
    Sst out;
    out.input_alphabet = sst.input_alphabet;
    out.output_alphabet = sst.output_alphabet;
    out.registers = sst.registers;
    out.output_register = sst.output_register;
    std::vector<StateId> old_to_new(sst.num_states(), SIZE_MAX);
    if (kept != nullptr) { kept->clear(); }
    for (StateId q = 0; q < sst.num_states(); ++q) {
        if (!keep[q]) { continue; }
        old_to_new[q] = out.add_state(sst.states[q], sst.initial[q] != 0, sst.final[q] != 0);
        if (kept != nullptr) { kept->push_back(q); }
    }
    for (const Transition& t : sst.transitions) {
        if (old_to_new[t.source] == SIZE_MAX || old_to_new[t.target] == SIZE_MAX) { continue; }
        Transition moved = t;
        moved.source = old_to_new[t.source];
        moved.target = old_to_new[t.target];
        out.transitions.push_back(std::move(moved));
    }
    return out;
}

Sst trim(const Sst& sst) { return restrict_states(sst, useful_states(sst)); }

std::vector<std::vector<std::size_t>> outgoing(const Sst& sst) {
    std::vector<std::vector<std::size_t>> out(sst.num_states());
    for (std::size_t i = 0; i < sst.transitions.size(); ++i) { out.at(sst.transitions[i].source).push_back(i); }
    return out;
}

} // namespace sstlab
